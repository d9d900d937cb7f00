#include "bouncer/classical.hpp"

#include <algorithm>
#include <future>
#include <numbers>
#include <string>

#include "bouncer/error.hpp"

namespace bouncer {
namespace {

constexpr double kPi = std::numbers::pi;

struct ReducedRate {
  double action;
  double phase;
};

ReducedRate reduced_rhs(const DriveProgram& program, double t, double action, double phase,
                        bool drop_correction) {
  if (!(action > 0.0) || !std::isfinite(action)) {
    throw ClassicalAbort("single-resonance model: action left (0, inf) at t=" + std::to_string(t));
  }
  const double w = omega_at(program, t);
  const double omega = frequency_of_action(action);
  const double ratio = w * w / (omega * omega);
  ReducedRate r{};
  r.action = -0.5 * program.epsilon * ratio * std::sin(phase);
  r.phase = omega - w;
  if (!drop_correction) {
    r.phase += program.epsilon * frequency_slope(action) / (omega * omega * omega) * w * w *
               std::cos(phase);
  }
  return r;
}

struct Kinematic {
  double x;
  double p;
};

// One RK4 step for x' = p, p' = -1/2 + f(t).
Kinematic rk4_bouncer(const DriveProgram& program, double t, Kinematic s, double h) {
  const double a0 = -0.5 + drive_force(program, t);
  const double am = -0.5 + drive_force(program, t + 0.5 * h);
  const double a1 = -0.5 + drive_force(program, t + h);
  // k1 = (p, a0), k2 = (p + h/2 a0, am), k3 = (p + h/2 am, am), k4 = (p + h am, a1)
  const double x = s.x + h / 6.0 * (s.p + 2.0 * (s.p + 0.5 * h * a0) + 2.0 * (s.p + 0.5 * h * am) +
                                    (s.p + h * am));
  const double p = s.p + h / 6.0 * (a0 + 4.0 * am + a1);
  return {x, p};
}

}  // namespace

PhasePoint orbit_point(double action, double theta) {
  const double omega = frequency_of_action(action);
  return {(kPi * kPi - theta * theta) / (4.0 * omega * omega), -theta / (2.0 * omega)};
}

ActionAnglePoint resonant_start(const DriveProgram& program) {
  const double w0 = omega_at(program, 0.0);
  const auto lag = pendulum_equilibrium(program.epsilon, w0, chirp_rate_at(program, 0.0));
  return {0.0, action_of_frequency(w0), kPi + lag.value_or(0.0)};
}

SingleResonanceResult simulate_single_resonance(const DriveProgram& program,
                                                const ActionAnglePoint& initial,
                                                const SingleResonanceOptions& options) {
  program.validate();
  if (!(options.dt > 0.0) || options.sample_every < 1) {
    throw InvalidInput("simulate_single_resonance: dt must be > 0 and sample_every >= 1");
  }
  if (!(initial.action > 0.0)) throw InvalidInput("simulate_single_resonance: action must be > 0");

  const double span = program.t_final - initial.t;
  const long n_steps = std::max(0L, static_cast<long>(std::ceil(span / options.dt - 1e-9)));
  auto time_of = [&](long i) { return i == n_steps ? program.t_final : initial.t + i * options.dt; };

  SingleResonanceResult result;
  ActionAnglePoint s = initial;
  auto track = [&](const ActionAnglePoint& p) {
    result.max_phase_deviation = std::max(result.max_phase_deviation, std::fabs(p.phase - kPi));
    const double w = omega_at(program, p.t);
    result.max_relative_detuning =
        std::max(result.max_relative_detuning, std::fabs(frequency_of_action(p.action) - w) / w);
  };
  result.trajectory.push_back(s);
  track(s);
  const bool drop = options.drop_phase_correction;
  for (long i = 0; i < n_steps; ++i) {
    const double t = time_of(i);
    const double h = time_of(i + 1) - t;
    const ReducedRate k1 = reduced_rhs(program, t, s.action, s.phase, drop);
    const ReducedRate k2 = reduced_rhs(program, t + 0.5 * h, s.action + 0.5 * h * k1.action,
                                       s.phase + 0.5 * h * k1.phase, drop);
    const ReducedRate k3 = reduced_rhs(program, t + 0.5 * h, s.action + 0.5 * h * k2.action,
                                       s.phase + 0.5 * h * k2.phase, drop);
    const ReducedRate k4 =
        reduced_rhs(program, t + h, s.action + h * k3.action, s.phase + h * k3.phase, drop);
    s.action += h / 6.0 * (k1.action + 2.0 * k2.action + 2.0 * k3.action + k4.action);
    s.phase += h / 6.0 * (k1.phase + 2.0 * k2.phase + 2.0 * k3.phase + k4.phase);
    s.t = time_of(i + 1);
    if (!(s.action > 0.0) || !std::isfinite(s.action) || !std::isfinite(s.phase)) {
      throw ClassicalAbort("single-resonance model: action left (0, inf) at t=" +
                           std::to_string(s.t));
    }
    track(s);
    if ((i + 1) % options.sample_every == 0 || i + 1 == n_steps) result.trajectory.push_back(s);
  }
  result.trapped = result.max_phase_deviation < kPi;
  return result;
}

double pendulum_rhs(double epsilon, double omega_d, double omega_dot, double phase) {
  const double action = action_of_frequency(omega_d);
  const double omega = frequency_of_action(action);
  return 0.5 * epsilon * frequency_slope(action) * omega_d * omega_d / (omega * omega) *
             std::sin(phase) -
         omega_dot;
}

std::optional<double> pendulum_equilibrium(double epsilon, double omega_d, double omega_dot) {
  // 0 = -K sin(Phi) - omega_dot with K = trapping_bound(eps, omega_d) > 0.
  const double s = -omega_dot / trapping_bound(epsilon, omega_d);
  if (std::fabs(s) > 1.0) return std::nullopt;
  return std::asin(s);
}

ResonanceWidth resonance_width(double epsilon, double omega_d) {
  if (!(epsilon >= 0.0) || !(omega_d > 0.0)) {
    throw InvalidInput("resonance_width: need epsilon >= 0 and omega_d > 0");
  }
  ResonanceWidth r;
  r.action_bar = action_of_frequency(omega_d);
  const double i23 = std::cbrt(r.action_bar) * std::cbrt(r.action_bar);
  r.width = 5.0 * std::sqrt(epsilon) * i23;
  const double omega = frequency_of_action(r.action_bar);
  r.width_exact = std::sqrt(8.0 * epsilon * (omega_d * omega_d / (omega * omega)) /
                            std::fabs(frequency_slope(r.action_bar)));
  r.delta_n = r.width;
  return r;
}

BouncerResult simulate_bouncer(const DriveProgram& program, const BouncerPoint& initial,
                               const BouncerOptions& options) {
  program.validate();
  if (!(options.dt > 0.0) || options.sample_every < 1) {
    throw InvalidInput("simulate_bouncer: dt must be > 0 and sample_every >= 1");
  }
  if (!(initial.x >= 0.0)) throw InvalidInput("simulate_bouncer: x(0) must be >= 0");

  const double span = program.t_final - initial.t;
  const long n_steps = std::max(0L, static_cast<long>(std::ceil(span / options.dt - 1e-9)));
  auto time_of = [&](long i) { return i == n_steps ? program.t_final : initial.t + i * options.dt; };

  BouncerResult result;
  Kinematic s{initial.x, initial.p};
  result.trajectory.push_back(initial);
  for (long i = 0; i < n_steps; ++i) {
    double t = time_of(i);
    const double t_next = time_of(i + 1);
    int guard = 0;
    while (t < t_next) {
      const double h = t_next - t;
      const Kinematic trial = rk4_bouncer(program, t, s, h);
      if (trial.x >= 0.0) {
        s = trial;
        t = t_next;
        break;
      }
      if (++guard > 8) throw ClassicalAbort("simulate_bouncer: repeated bounces within one step");
      // Bracket the bounce: x(0) >= 0 > x(h). Illinois-modified regula falsi.
      double lo = 0.0, hi = h;
      double flo = s.x, fhi = trial.x;
      int side = 0;
      double root = hi;
      for (int it = 0; it < 200; ++it) {
        root = (lo * fhi - hi * flo) / (fhi - flo);
        if (!(root > lo && root < hi)) root = 0.5 * (lo + hi);
        const double fr = rk4_bouncer(program, t, s, root).x;
        if (fr < 0.0) {
          hi = root;
          fhi = fr;
          if (side == -1) flo *= 0.5;
          side = -1;
        } else {
          lo = root;
          flo = fr;
          if (side == 1) fhi *= 0.5;
          side = 1;
        }
        if (hi - lo < options.bounce_time_tolerance || fr == 0.0) break;
      }
      if (hi - lo >= options.bounce_time_tolerance && std::fabs(flo) > 1e-14) {
        throw ClassicalAbort("simulate_bouncer: bounce time not resolved near t=" +
                             std::to_string(t));
      }
      const double h_bounce = std::max(lo, 0.0);
      const Kinematic at_wall = rk4_bouncer(program, t, s, h_bounce);
      s = {0.0, std::fabs(at_wall.p)};
      t += h_bounce;
      result.bounce_times.push_back(t);
      if (t_next - t <= 1e-15 * std::max(1.0, t)) {
        t = t_next;
        break;
      }
    }
    if ((i + 1) % options.sample_every == 0 || i + 1 == n_steps) {
      result.trajectory.push_back({t_next, s.x, s.p});
    }
  }
  result.final_state = {time_of(n_steps), s.x, s.p};
  return result;
}

std::vector<EnsembleSample> simulate_ensemble(const DriveProgram& program, double action,
                                              int n_particles, const BouncerOptions& options,
                                              int threads) {
  if (n_particles < 1) throw InvalidInput("simulate_ensemble: need at least one particle");
  if (!(action > 0.0)) throw InvalidInput("simulate_ensemble: action must be > 0");
  std::vector<std::vector<double>> energies(n_particles);
  std::vector<double> sample_times;
  auto run_range = [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      const double theta = -kPi + 2.0 * kPi * (k + 0.5) / n_particles;
      const PhasePoint start = orbit_point(action, theta);
      const BouncerResult r = simulate_bouncer(program, {0.0, start.x, start.p}, options);
      energies[k].reserve(r.trajectory.size());
      for (const auto& pt : r.trajectory) energies[k].push_back(bouncer_energy(pt));
      if (k == 0) {
        for (const auto& pt : r.trajectory) sample_times.push_back(pt.t);
      }
    }
  };
  threads = std::clamp(threads, 1, n_particles);
  if (threads == 1) {
    run_range(0, n_particles);
  } else {
    std::vector<std::future<void>> jobs;
    const int chunk = (n_particles + threads - 1) / threads;
    for (int b = 0; b < n_particles; b += chunk) {
      jobs.push_back(std::async(std::launch::async, run_range, b, std::min(n_particles, b + chunk)));
    }
    for (auto& j : jobs) j.get();
  }

  // All particles share the sampling grid.
  std::vector<EnsembleSample> out;
  for (std::size_t i = 0; i < energies[0].size(); ++i) {
    double mean = 0.0;
    for (int k = 0; k < n_particles; ++k) mean += energies[k][i];
    mean /= n_particles;
    double var = 0.0;
    for (int k = 0; k < n_particles; ++k) var += (energies[k][i] - mean) * (energies[k][i] - mean);
    const double t = sample_times[i];
    const double w = omega_at(program, t);
    const double cut = 0.5 * classical_energy(w);
    int captured = 0;
    double captured_sum = 0.0;
    for (int k = 0; k < n_particles; ++k) {
      if (energies[k][i] > cut) {
        ++captured;
        captured_sum += energies[k][i];
      }
    }
    out.push_back({t, w, mean, std::sqrt(var / n_particles),
                   static_cast<double>(captured) / n_particles,
                   captured > 0 ? captured_sum / captured : 0.0});
  }
  return out;
}

}  // namespace bouncer
