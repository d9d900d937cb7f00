#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "bouncer/classical.hpp"
#include "bouncer/error.hpp"
#include "bouncer/units.hpp"
#include "bouncer/wigner.hpp"

using namespace bouncer;

namespace {

constexpr double kPi = std::numbers::pi;

struct Checked {
  WignerGrid w;
  WignerDiagnostics d;
};

Checked check_state(const EigenBasis& b, const QuantumState& s, double dx, double x_max) {
  const WignerGrid w = wigner_of_state(b, s, dx, x_max);
  const Eigen::VectorXcd psi = wavefunction_on_grid(b, s, w.xs);
  const Eigen::VectorXd mref = momentum_density(b, s, w.ps, x_max);
  return {w, diagnose(w, psi, &mref)};
}

void check_identities(const WignerDiagnostics& d) {
  CHECK(std::fabs(d.total - 1.0) < 1e-4);
  CHECK(std::fabs(d.purity - 1.0) < 1e-3);
  CHECK(d.position_marginal_error < 1e-4);
  CHECK(d.momentum_marginal_error < 1e-4);
  CHECK(d.max_abs <= 1.0 / kPi + 1e-12);
}

}  // namespace

TEST_CASE("ground state") {
  const EigenBasis b = build_basis(10);
  const auto [w, d] = check_state(b, eigenstate(b, 1), 0.025, 20.0);
  check_identities(d);
  CHECK(w.xs(0) == 0.0);
  CHECK(w.dp() == doctest::Approx(kPi / (w.ps.size() * w.dx())).epsilon(1e-12));
  // Symmetric in p for a real wavefunction.
  const Eigen::Index k = w.ps.size();
  for (Eigen::Index i = 0; i < w.xs.size(); i += 37) {
    for (Eigen::Index l = 1; l < k / 2; l += 11) {
      CHECK(std::fabs(w.values(i, k / 2 + l) - w.values(i, k / 2 - l)) < 1e-12);
    }
  }
}

TEST_CASE("superposition of levels 1 and 2 has negative regions") {
  const EigenBasis b = build_basis(10);
  QuantumState s;
  s.coeffs = Eigen::VectorXcd::Zero(10);
  s.coeffs(0) = 1.0 / std::sqrt(2.0);
  s.coeffs(1) = std::polar(1.0 / std::sqrt(2.0), 0.7);
  const auto [w, d] = check_state(b, s, 0.025, 24.0);
  check_identities(d);
  CHECK(d.min_value < 0.0);
}

TEST_CASE("excited state stays within the bound") {
  const EigenBasis b = build_basis(10);
  const auto [w, d] = check_state(b, eigenstate(b, 6), 0.025, 30.0);
  check_identities(d);
  CHECK(d.min_value < -0.1);
}

TEST_CASE("input validation") {
  const EigenBasis b = build_basis(5);
  const Eigen::VectorXd xs = Eigen::VectorXd::LinSpaced(801, 0.0, 20.0);
  Eigen::VectorXcd psi = wavefunction_on_grid(b, eigenstate(b, 1), xs);
  CHECK_NOTHROW(wigner_transform(psi, xs));
  CHECK_THROWS_AS(wigner_transform(1.2 * psi, xs), InvalidInput);
  Eigen::VectorXd uneven = xs;
  uneven(400) += 1e-3;
  CHECK_THROWS_AS(wigner_transform(psi, uneven), InvalidInput);
  CHECK_THROWS_AS(wigner_of_state(b, eigenstate(b, 5), 0.025, 9.0), InvalidInput);
  CHECK_THROWS_AS(wigner_of_state(b, eigenstate(b, 1), 0.0, 20.0), InvalidInput);
}

TEST_CASE("classical overlay") {
  const ClassicalOrbit o = classical_overlay(2.0, 101);
  CHECK(o.xs(0) == 0.0);
  CHECK(o.xs(100) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(o.p_upper(0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(o.p_upper(100) == 0.0);
  for (Eigen::Index i = 0; i < o.xs.size(); ++i) {
    CHECK(0.5 * o.p_upper(i) * o.p_upper(i) + 0.5 * o.xs(i) == doctest::Approx(2.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(classical_overlay(-1.0), InvalidInput);
}

TEST_CASE("ladder state at omega_3 spreads over the classical shell") {
  const EigenBasis b = build_basis(40);
  const double w3 =
      convert(136.0, Quantity::FrequencyHertz, Direction::ToScaled, derive_scales(PhysicalConstants{}));
  DriveProgram p{0.228, OptimalChirpSchedule{1.205, 0.5}, 175.0};
  p.t_final = time_at_omega(p, w3);
  PropagationOptions opt;
  opt.sample_every = 1000000;
  const PropagationResult r = propagate(b, p, eigenstate(b, 1), opt);
  const auto [w, d] = check_state(b, r.final_state, 0.025, 40.0);
  check_identities(d);
  CHECK(d.min_value < 0.0);
  CHECK(shell_concentration(w, classical_energy(w3), 0.2) >= 0.45);
}
