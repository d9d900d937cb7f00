#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "bouncer/error.hpp"
#include "bouncer/qdyn.hpp"

using namespace bouncer;

namespace {

const DriveProgram kLadder{0.228, OptimalChirpSchedule{1.205, 0.5}, 175.0};

}  // namespace

TEST_CASE("observables of simple states") {
  const EigenBasis b = build_basis(5);
  const ObservableRecord g = observables(b, eigenstate(b, 1), 1.0);
  CHECK(g.mean_n == 1.0);
  CHECK(g.width_n == 0.0);
  CHECK(g.norm == 1.0);
  CHECK(g.mean_energy == b.energies(0));

  QuantumState s;
  s.coeffs = Eigen::VectorXcd::Zero(5);
  s.coeffs(0) = 1.0 / std::sqrt(2.0);
  s.coeffs(1) = std::complex<double>(0.0, 1.0 / std::sqrt(2.0));
  const ObservableRecord h = observables(b, s, 1.0);
  CHECK(h.mean_n == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(h.width_n == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(h.mean_energy == doctest::Approx(0.5 * (b.energies(0) + b.energies(1))).epsilon(1e-15));
  CHECK_THROWS_AS(eigenstate(b, 6), InvalidInput);
}

TEST_CASE("free evolution keeps populations and energy") {
  const EigenBasis b = build_basis(10);
  QuantumState s;
  s.coeffs = Eigen::VectorXcd::Zero(10);
  s.coeffs(0) = 0.6;
  s.coeffs(2) = std::complex<double>(0.0, 0.64);
  s.coeffs(6) = std::complex<double>(std::sqrt(1.0 - 0.36 - 0.64 * 0.64), 0.0);
  const DriveProgram free{0.0, ConstantSchedule{1.0}, 10.0};
  const PropagationResult r = propagate(b, free, s, {});
  const ObservableRecord start = observables(b, s, 1.0);
  for (const auto& rec : r.records) {
    CHECK((rec.occupations - start.occupations).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::fabs(rec.mean_energy - start.mean_energy) < 1e-8);
  }
  // Phases rotate as exp(-i E_n t).
  for (int n : {0, 2, 6}) {
    const std::complex<double> expected = s.coeffs(n) * std::exp(std::complex<double>(0.0, -b.energies(n) * 10.0));
    CHECK(std::abs(r.final_state.coeffs(n) - expected) < 1e-8);
  }
  CHECK(r.final_state.t == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("two-level Rabi flop against the rotating-wave oracle") {
  const EigenBasis b = build_basis(2);
  const double w = b.energies(1) - b.energies(0);
  const double eps = 0.01;
  const double rabi = eps * w * w * std::fabs(b.dipole(0, 1));
  const double t_pi = std::numbers::pi / rabi;
  const DriveProgram p{eps, ConstantSchedule{w}, t_pi};
  PropagationOptions opt;
  opt.sample_every = 20000;
  opt.truncation_guard = 2.0;
  const PropagationResult r = propagate(b, p, eigenstate(b, 1), opt);
  for (const auto& rec : r.records) {
    const double oracle = std::pow(std::sin(rabi * rec.t / 2.0), 2);
    CAPTURE(rec.t);
    CHECK(std::fabs(rec.occupations(1) - oracle) < 0.01);
  }
  CHECK(r.final_state.coeffs.squaredNorm() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::norm(r.final_state.coeffs(1)) > 0.99);
}

TEST_CASE("ladder start: transfer 1 -> 2 while sweeping through the first resonance") {
  const EigenBasis b = build_basis(40);
  DriveProgram p = kLadder;
  p.t_final = 30.0;
  PropagationOptions opt;
  opt.sample_every = 10;
  const PropagationResult r = propagate(b, p, eigenstate(b, 1), opt);
  double p2_peak = 0.0, t_peak = 0.0;
  for (const auto& rec : r.records) {
    if (rec.occupations(1) > p2_peak) {
      p2_peak = rec.occupations(1);
      t_peak = rec.t;
    }
  }
  CHECK(p2_peak > 0.5);
  CHECK(t_peak > 5.0);
  CHECK(r.records.back().occupations(0) < 0.1);
  CHECK(r.records.back().mean_n > 2.0);
  CHECK(r.max_norm_drift < 1e-9);
  CHECK(r.steps == 30000);
}

TEST_CASE("norm drift of RK4 shrinks at fifth order per unit time") {
  const EigenBasis b = build_basis(40);
  DriveProgram p = kLadder;
  p.t_final = 20.0;
  const auto drift = [&](double dt) {
    PropagationOptions opt;
    opt.dt = dt;
    opt.sample_every = 1000000;
    return propagate(b, p, eigenstate(b, 1), opt).max_norm_drift;
  };
  const double coarse = drift(8e-3), fine = drift(4e-3);
  CHECK(coarse / fine > 11.3);
  CHECK(drift(1e-3) < 1e-9);
}

TEST_CASE("wavefunction on a grid") {
  const EigenBasis b = build_basis(40);
  const Eigen::VectorXd xs = Eigen::VectorXd::LinSpaced(61, 0.0, 12.0);
  const Eigen::VectorXcd psi = wavefunction_on_grid(b, eigenstate(b, 1), xs);
  CHECK(std::abs(psi(0)) < 1e-10);
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    CHECK(std::abs(psi(i) - eigenfunction(b, 1, xs(i))) < 1e-14);
  }
  Eigen::VectorXd bad(1);
  bad << -1.0;
  CHECK_THROWS_AS(wavefunction_on_grid(b, eigenstate(b, 1), bad), DomainError);
}

TEST_CASE("final ladder density integrates to one") {
  const EigenBasis b = build_basis(40);
  PropagationOptions opt;
  opt.sample_every = 100000;
  const PropagationResult r = propagate(b, kLadder, eigenstate(b, 1), opt);
  const int n = 6001;
  const Eigen::VectorXd xs = Eigen::VectorXd::LinSpaced(n, 0.0, 60.0);
  const Eigen::VectorXd rho = wavefunction_on_grid(b, r.final_state, xs).cwiseAbs2();
  const double h = xs(1) - xs(0);
  const double integral = h * (rho.sum() - 0.5 * (rho(0) + rho(n - 1)));
  CHECK(std::fabs(integral - 1.0) < 1e-4);
}

TEST_CASE("aborts keep partial results") {
  SUBCASE("unstable step") {
    const EigenBasis b = build_basis(40);
    PropagationOptions opt;
    opt.dt = 0.5;
    opt.sample_every = 1;
    try {
      propagate(b, kLadder, eigenstate(b, 1), opt);
      FAIL("expected SolverAbort");
    } catch (const SolverAbort& e) {
      CHECK(std::string(e.what()).find("norm") != std::string::npos);
      CHECK(!e.partial().records.empty());
      CHECK(e.partial().final_state.t < kLadder.t_final);
    }
  }
  SUBCASE("truncation guard") {
    const EigenBasis b = build_basis(3);
    try {
      propagate(b, kLadder, eigenstate(b, 1), {});
      FAIL("expected SolverAbort");
    } catch (const SolverAbort& e) {
      CHECK(std::string(e.what()).find("top level 3") != std::string::npos);
      CHECK(!e.partial().records.empty());
    }
  }
}

TEST_CASE("input validation") {
  const EigenBasis b = build_basis(5);
  QuantumState s = eigenstate(b, 1);
  s.coeffs *= 1.1;
  CHECK_THROWS_AS(propagate(b, kLadder, s, {}), InvalidInput);
  PropagationOptions opt;
  opt.dt = 0.0;
  CHECK_THROWS_AS(propagate(b, kLadder, eigenstate(b, 1), opt), InvalidInput);
  opt.dt = 1e-3;
  opt.sample_every = 0;
  CHECK_THROWS_AS(propagate(b, kLadder, eigenstate(b, 1), opt), InvalidInput);
  QuantumState wrong;
  wrong.coeffs = Eigen::VectorXcd::Zero(4);
  wrong.coeffs(0) = 1.0;
  CHECK_THROWS_AS(propagate(b, kLadder, wrong, {}), InvalidInput);
}
