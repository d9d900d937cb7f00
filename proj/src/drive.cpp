#include "bouncer/drive.hpp"

#include <cmath>
#include <string>

#include "bouncer/error.hpp"

namespace bouncer {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_time(const DriveProgram& p, double t) {
  if (!(t >= 0.0) || t > p.t_final * (1.0 + 1e-12) + 1e-12) {
    throw DomainError("drive: time " + std::to_string(t) + " outside [0, " +
                      std::to_string(p.t_final) + "]");
  }
}

// Rate constant k of omega^{-3} = omega0^{-3} + k t.
double chirp_constant(const DriveProgram& p, const OptimalChirpSchedule& s) {
  return s.q * p.epsilon / (2.0 * kB3);
}

}  // namespace

void DriveProgram::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidInput("drive: epsilon must be finite and >= 0");
  }
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw InvalidInput("drive: t_final must be finite and > 0");
  }
  std::visit(overloaded{
                 [](const ConstantSchedule& s) {
                   if (!(s.omega0 > 0.0)) throw InvalidInput("drive: omega0 must be > 0");
                 },
                 [this](const LinearSchedule& s) {
                   if (!(s.omega0 > 0.0)) throw InvalidInput("drive: omega0 must be > 0");
                   if (!(s.omega0 + s.rate * t_final > 0.0)) {
                     throw InvalidInput("drive: linear schedule reaches omega <= 0 before t_final");
                   }
                 },
                 [](const OptimalChirpSchedule& s) {
                   if (!(s.omega0 > 0.0)) throw InvalidInput("drive: omega0 must be > 0");
                   if (!(s.q > 0.0)) throw InvalidInput("drive: safety factor q must be > 0");
                 },
             },
             schedule);
}

double omega_at(const DriveProgram& p, double t) {
  check_time(p, t);
  return std::visit(overloaded{
                        [](const ConstantSchedule& s) { return s.omega0; },
                        [t](const LinearSchedule& s) { return s.omega0 + s.rate * t; },
                        [&p, t](const OptimalChirpSchedule& s) {
                          const double w3 = s.omega0 * s.omega0 * s.omega0;
                          return s.omega0 / std::cbrt(1.0 + chirp_constant(p, s) * t * w3);
                        },
                    },
                    p.schedule);
}

double phase_at(const DriveProgram& p, double t) {
  check_time(p, t);
  return std::visit(
      overloaded{
          [t](const ConstantSchedule& s) { return s.omega0 * t; },
          [t](const LinearSchedule& s) { return s.omega0 * t + 0.5 * s.rate * t * t; },
          [&p, t](const OptimalChirpSchedule& s) {
            const double k = chirp_constant(p, s);
            if (k == 0.0) return s.omega0 * t;
            // phi = (3 / 2k) (S^{2/3} - S0^{2/3}),  S = S0 + k t; written with
            // expm1/log1p so that the k -> 0 limit omega0 t is reached smoothly.
            const double s0 = 1.0 / (s.omega0 * s.omega0 * s.omega0);
            const double u = k * t / s0;
            const double s0_23 = 1.0 / (s.omega0 * s.omega0);
            return 1.5 / k * s0_23 * std::expm1(2.0 / 3.0 * std::log1p(u));
          },
      },
      p.schedule);
}

double chirp_rate_at(const DriveProgram& p, double t) {
  const double w = omega_at(p, t);
  return std::visit(overloaded{
                        [](const ConstantSchedule&) { return 0.0; },
                        [](const LinearSchedule& s) { return s.rate; },
                        [&p, w](const OptimalChirpSchedule& s) {
                          return -chirp_constant(p, s) / 3.0 * w * w * w * w;
                        },
                    },
                    p.schedule);
}

double drive_force(const DriveProgram& p, double t) {
  const double w = omega_at(p, t);
  return p.epsilon * w * w * std::cos(phase_at(p, t));
}

double trapping_bound(double epsilon, double omega) {
  if (!(epsilon > 0.0) || !(omega > 0.0)) {
    throw InvalidInput("trapping_bound: epsilon and omega must be > 0");
  }
  return epsilon * omega * omega * omega * omega / (6.0 * kB3);
}

double time_at_omega(const DriveProgram& p, double omega) {
  if (!(omega > 0.0)) throw InvalidInput("time_at_omega: omega must be > 0");
  return std::visit(overloaded{
                        [omega](const ConstantSchedule& s) { return s.omega0 == omega ? 0.0 : -1.0; },
                        [omega](const LinearSchedule& s) {
                          if (s.rate == 0.0) return s.omega0 == omega ? 0.0 : -1.0;
                          const double t = (omega - s.omega0) / s.rate;
                          return t >= 0.0 ? t : -1.0;
                        },
                        [&p, omega](const OptimalChirpSchedule& s) {
                          const double k = chirp_constant(p, s);
                          const double d = 1.0 / (omega * omega * omega) -
                                           1.0 / (s.omega0 * s.omega0 * s.omega0);
                          if (d == 0.0) return 0.0;
                          if (k == 0.0 || d < 0.0) return -1.0;
                          return d / k;
                        },
                    },
                    p.schedule);
}

}  // namespace bouncer
