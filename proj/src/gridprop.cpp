#include "bouncer/gridprop.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "bouncer/error.hpp"

namespace bouncer {
namespace {

using Complex = std::complex<double>;

double tail_fraction(const GridState& s) {
  const Eigen::Index n = s.psi.size();
  const Eigen::Index start = n - n / 10;
  const double total = s.psi.squaredNorm();
  return total > 0.0 ? s.psi.tail(n - start).squaredNorm() / total : 0.0;
}

}  // namespace

Eigen::VectorXd GridSpec::positions() const {
  return Eigen::VectorXd::LinSpaced(n_points, dx(), n_points * dx());
}

void GridSpec::validate() const {
  if (!(x_max > 0.0)) throw InvalidInput("grid: x_max must be > 0");
  if (n_points < 3) throw InvalidInput("grid: n_points must be >= 3");
  if (!(dt > 0.0)) throw InvalidInput("grid: dt must be > 0");
}

GridState init_from_level(const EigenBasis& basis, int level, const GridSpec& spec) {
  spec.validate();
  if (level < 1 || level > basis.n_levels) {
    throw InvalidInput("init_from_level: level " + std::to_string(level) + " outside basis");
  }
  if (!(std::fabs(basis.zeros(level - 1)) < 0.5 * spec.x_max)) {
    throw InvalidInput("init_from_level: turning point of level " + std::to_string(level) +
                       " is not below x_max / 2; enlarge the grid");
  }
  const Eigen::VectorXd xs = spec.positions();
  GridState s;
  s.psi.resize(xs.size());
  for (Eigen::Index j = 0; j < xs.size(); ++j) s.psi(j) = eigenfunction(basis, level, xs(j));
  s.psi /= std::sqrt(s.norm(spec.dx()));
  return s;
}

Eigen::VectorXd grid_projections(const Eigen::MatrixXd& eigenfunctions, const GridState& state,
                                 double dx) {
  const Eigen::VectorXcd amp = dx * (eigenfunctions.transpose().cast<Complex>() * state.psi);
  return amp.cwiseAbs2();
}

GridResult propagate_grid(const GridState& state, const DriveProgram& program,
                          const GridSpec& spec, double t_end, const EigenBasis& basis,
                          int sample_every) {
  spec.validate();
  program.validate();
  if (sample_every < 1) throw InvalidInput("propagate_grid: sample_every must be >= 1");
  if (!(t_end >= state.t) || t_end > program.t_final * (1.0 + 1e-12)) {
    throw InvalidInput("propagate_grid: t_end must lie in [state.t, t_final]");
  }
  const Eigen::Index n = spec.n_points;
  if (state.psi.size() != n) throw InvalidInput("propagate_grid: state does not match grid");

  const double dx = spec.dx();
  const Eigen::VectorXd xs = spec.positions();
  const Eigen::MatrixXd eigen_on_grid = eigenfunctions_on(basis, xs);
  const double norm0 = state.norm(dx);

  const long n_steps = std::max(0L, static_cast<long>(std::ceil((t_end - state.t) / spec.dt - 1e-9)));
  auto time_of = [&](long i) { return i == n_steps ? t_end : state.t + i * spec.dt; };

  GridResult result;
  GridState cur = state;
  auto record = [&]() {
    ObservableRecord r = level_statistics(grid_projections(eigen_on_grid, cur, dx), basis.energies);
    r.t = cur.t;
    r.omega_d = omega_at(program, cur.t);
    result.records.push_back(std::move(r));
    result.max_tail_fraction = std::max(result.max_tail_fraction, tail_fraction(cur));
  };

  const double kinetic_diag = 1.0 / (dx * dx);
  const double kinetic_off = -0.5 / (dx * dx);
  Eigen::VectorXcd rhs(n), cprime(n);
  record();
  for (long i = 0; i < n_steps; ++i) {
    const double t = time_of(i);
    const double h = time_of(i + 1) - t;
    const double f = drive_force(program, t + 0.5 * h);
    const Complex half_i(0.0, 0.5 * h);
    const Complex off = half_i * kinetic_off;  // same on both sides, sign flipped on the rhs

    // rhs = (1 - i h/2 H) psi
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = kinetic_diag + (0.5 - f) * xs(j);
      Complex acc = (1.0 - half_i * v) * cur.psi(j);
      if (j > 0) acc -= off * cur.psi(j - 1);
      if (j + 1 < n) acc -= off * cur.psi(j + 1);
      rhs(j) = acc;
    }
    // Thomas solve of (1 + i h/2 H) psi' = rhs.
    Complex denom = 1.0 + half_i * (kinetic_diag + (0.5 - f) * xs(0));
    if (std::abs(denom) == 0.0) throw InternalError("propagate_grid: zero pivot at row 0");
    cprime(0) = off / denom;
    rhs(0) /= denom;
    for (Eigen::Index j = 1; j < n; ++j) {
      const Complex diag = 1.0 + half_i * (kinetic_diag + (0.5 - f) * xs(j));
      denom = diag - off * cprime(j - 1);
      if (std::abs(denom) < 1e-300) {
        throw InternalError("propagate_grid: zero pivot at row " + std::to_string(j));
      }
      cprime(j) = off / denom;
      rhs(j) = (rhs(j) - off * rhs(j - 1)) / denom;
    }
    for (Eigen::Index j = n - 2; j >= 0; --j) rhs(j) -= cprime(j) * rhs(j + 1);
    cur.psi.swap(rhs);
    cur.t = time_of(i + 1);

    result.max_norm_drift = std::max(result.max_norm_drift, std::fabs(cur.norm(dx) - norm0));
    if ((i + 1) % sample_every == 0 || i + 1 == n_steps) record();
  }
  result.final_state = cur;
  return result;
}

}  // namespace bouncer
