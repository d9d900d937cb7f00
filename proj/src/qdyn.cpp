#include "bouncer/qdyn.hpp"

#include <cmath>
#include <sstream>

#include "bouncer/error.hpp"

namespace bouncer {
namespace {

using Complex = std::complex<double>;
constexpr Complex kMinusI{0.0, -1.0};

// Right-hand side -i (E c - f X c). X is real symmetric, so X c is formed as the
// real 2 x N view of c times X.
class CoefficientOde {
 public:
  CoefficientOde(const EigenBasis& basis) : energies_(basis.energies), dipole_(basis.dipole) {}

  void operator()(double force, const Eigen::VectorXcd& c, Eigen::VectorXcd& out) const {
    const Eigen::Index n = c.size();
    Eigen::Map<const Eigen::Matrix<double, 2, Eigen::Dynamic>> ri(
        reinterpret_cast<const double*>(c.data()), 2, n);
    out.resize(n);
    Eigen::Map<Eigen::Matrix<double, 2, Eigen::Dynamic>> xc(reinterpret_cast<double*>(out.data()),
                                                            2, n);
    xc.noalias() = ri * dipole_;
    out = kMinusI * (energies_.cast<Complex>().cwiseProduct(c) - force * out);
  }

 private:
  const Eigen::VectorXd& energies_;
  const Eigen::MatrixXd& dipole_;
};

std::string step_diagnostic(double drift, double dt, double t) {
  std::ostringstream s;
  s << "norm drift " << drift << " at t=" << t << " exceeds the abort threshold; reduce dt (now "
    << dt << ")";
  return s.str();
}

}  // namespace

QuantumState eigenstate(const EigenBasis& basis, int level) {
  if (level < 1 || level > basis.n_levels) {
    throw InvalidInput("eigenstate: level " + std::to_string(level) + " outside basis");
  }
  QuantumState s;
  s.coeffs = Eigen::VectorXcd::Zero(basis.n_levels);
  s.coeffs(level - 1) = 1.0;
  return s;
}

ObservableRecord observables(const EigenBasis& basis, const QuantumState& state, double omega_d) {
  ObservableRecord r = level_statistics(state.coeffs.cwiseAbs2(), basis.energies);
  r.t = state.t;
  r.omega_d = omega_d;
  return r;
}

Eigen::VectorXcd wavefunction_on_grid(const EigenBasis& basis, const QuantumState& state,
                                      const Eigen::Ref<const Eigen::VectorXd>& xs) {
  const Eigen::MatrixXd psi = eigenfunctions_on(basis, xs);
  return psi.cast<Complex>() * state.coeffs;
}

PropagationResult propagate(const EigenBasis& basis, const DriveProgram& program,
                            const QuantumState& initial, const PropagationOptions& options) {
  program.validate();
  if (!(options.dt > 0.0)) throw InvalidInput("propagate: dt must be > 0");
  if (options.sample_every < 1) throw InvalidInput("propagate: sample_every must be >= 1");
  if (initial.coeffs.size() != basis.n_levels) {
    throw InvalidInput("propagate: initial state size does not match the basis");
  }
  const double norm0 = initial.coeffs.squaredNorm();
  if (std::fabs(norm0 - 1.0) > 1e-8) {
    throw InvalidInput("propagate: initial state is not normalized");
  }
  const double t0 = initial.t;
  const double span = program.t_final - t0;
  if (!(span >= 0.0)) throw InvalidInput("propagate: initial time beyond t_final");

  const long n_steps = std::max(0L, static_cast<long>(std::ceil(span / options.dt - 1e-9)));
  const CoefficientOde ode(basis);

  PropagationResult result;
  result.steps = n_steps;
  Eigen::VectorXcd c = initial.coeffs;
  Eigen::VectorXcd k1, k2, k3, k4, tmp;

  std::vector<double> pending = options.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_snapshot = 0;

  auto time_of = [&](long i) { return i == n_steps ? program.t_final : t0 + i * options.dt; };

  auto record = [&](long i) {
    QuantumState s{time_of(i), c};
    result.records.push_back(observables(basis, s, omega_at(program, s.t)));
  };
  auto capture = [&](long i) {
    const double t = time_of(i);
    while (next_snapshot < pending.size() && pending[next_snapshot] <= t + 0.5 * options.dt) {
      if (pending[next_snapshot] >= t - 0.5 * options.dt || i == 0) {
        result.snapshots.push_back({t, c});
      }
      ++next_snapshot;
    }
  };
  auto fail = [&](const std::string& why, long i) {
    result.final_state = {time_of(i), c};
    throw SolverAbort(why, std::move(result));
  };

  record(0);
  capture(0);
  for (long i = 0; i < n_steps; ++i) {
    const double t = time_of(i);
    const double h = time_of(i + 1) - t;
    const double f0 = drive_force(program, t);
    const double fm = drive_force(program, t + 0.5 * h);
    const double f1 = drive_force(program, t + h);
    ode(f0, c, k1);
    tmp = c + (0.5 * h) * k1;
    ode(fm, tmp, k2);
    tmp = c + (0.5 * h) * k2;
    ode(fm, tmp, k3);
    tmp = c + h * k3;
    ode(f1, tmp, k4);
    c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double norm = c.squaredNorm();
    if (!std::isfinite(norm)) fail("non-finite coefficients at t=" + std::to_string(t + h), i + 1);
    const double drift = std::fabs(norm - norm0);
    result.max_norm_drift = std::max(result.max_norm_drift, drift);
    if (drift > options.abort_norm_drift) fail(step_diagnostic(drift, options.dt, t + h), i + 1);
    const double top = std::norm(c(basis.n_levels - 1));
    if (basis.n_levels > 1 && top > options.truncation_guard) {
      fail("population " + std::to_string(top) + " reached the top level " +
               std::to_string(basis.n_levels) + " at t=" + std::to_string(t + h) +
               "; increase the basis size",
           i + 1);
    }
    if ((i + 1) % options.sample_every == 0 || i + 1 == n_steps) record(i + 1);
    capture(i + 1);
  }
  result.final_state = {time_of(n_steps), c};
  return result;
}

}  // namespace bouncer
