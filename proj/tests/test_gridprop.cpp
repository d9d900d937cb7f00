#include <doctest.h>

#include <cmath>

#include "bouncer/error.hpp"
#include "bouncer/gridprop.hpp"

using namespace bouncer;

namespace {

const DriveProgram kLadder{0.228, OptimalChirpSchedule{1.205, 0.5}, 175.0};

double mean_position(const GridState& s, const GridSpec& spec) {
  return (spec.positions().array() * s.psi.cwiseAbs2().array()).sum() * spec.dx();
}

}  // namespace

TEST_CASE("initial eigenstate on the grid") {
  const EigenBasis b = build_basis(10);
  const GridSpec spec{40.0, 4095, 1e-3};
  const GridState s = init_from_level(b, 1, spec);
  CHECK(std::fabs(s.norm(spec.dx()) - 1.0) < 1e-10);
  // <x> = (2/3)|lambda_1|
  CHECK(std::fabs(mean_position(s, spec) - 2.0 / 3.0 * -b.zeros(0)) < 1e-4);
  CHECK_THROWS_AS(init_from_level(b, 10, GridSpec{20.0, 1023, 1e-3}), InvalidInput);
  CHECK_THROWS_AS(init_from_level(b, 11, spec), InvalidInput);
}

TEST_CASE("grid spec validation") {
  CHECK_THROWS_AS((GridSpec{0.0, 100, 1e-3}.validate()), InvalidInput);
  CHECK_THROWS_AS((GridSpec{40.0, 2, 1e-3}.validate()), InvalidInput);
  CHECK_THROWS_AS((GridSpec{40.0, 100, -1.0}.validate()), InvalidInput);
  CHECK(GridSpec{40.0, 399, 1e-3}.dx() == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("undriven eigenstates stay put") {
  const EigenBasis b = build_basis(10);
  const GridSpec spec{40.0, 2047, 1e-3};
  const DriveProgram free{0.0, ConstantSchedule{1.0}, 20.0};
  for (int level : {1, 2}) {
    CAPTURE(level);
    const double t_end = level == 1 ? 10.0 : 20.0;
    const GridResult r = propagate_grid(init_from_level(b, level, spec), free, spec, t_end, b, 1000);
    for (const auto& rec : r.records) {
      CHECK(rec.occupations(level - 1) > 1.0 - 1e-6);
      CHECK(rec.norm - rec.occupations(level - 1) < 1e-6);
    }
    CHECK(r.max_norm_drift < 1e-12);
    CHECK(r.final_state.t == doctest::Approx(t_end).epsilon(1e-12));
  }
}

TEST_CASE("driven run preserves the norm and keeps the tail empty") {
  const EigenBasis b = build_basis(40);
  const GridSpec spec{80.0, 2047, 2e-3};
  const GridResult r = propagate_grid(init_from_level(b, 1, spec), kLadder, spec, 60.0, b, 500);
  CHECK(r.max_norm_drift < 1e-11);
  CHECK(r.max_tail_fraction < 1e-8);
  for (const auto& rec : r.records) {
    CHECK(rec.norm <= 1.0 + 1e-9);
    CHECK(rec.norm > 0.999);
  }
}

TEST_CASE("grid agrees with the spectral propagator") {
  const EigenBasis b = build_basis(40);
  const GridSpec spec{80.0, 4095, 1e-3};
  DriveProgram p = kLadder;
  p.t_final = 20.0;
  PropagationOptions opt;
  opt.sample_every = 500;
  const PropagationResult spectral = propagate(b, p, eigenstate(b, 1), opt);
  const GridResult grid = propagate_grid(init_from_level(b, 1, spec), p, spec, 20.0, b, 500);
  REQUIRE(grid.records.size() == spectral.records.size());
  for (std::size_t i = 0; i < grid.records.size(); ++i) {
    CAPTURE(grid.records[i].t);
    CHECK(grid.records[i].t == doctest::Approx(spectral.records[i].t).epsilon(1e-12));
    CHECK((grid.records[i].occupations - spectral.records[i].occupations).head(5).cwiseAbs().maxCoeff() < 1e-3);
  }
}

TEST_CASE("refinement changes the final P_2 by less than 1e-4") {
  const EigenBasis b = build_basis(40);
  DriveProgram p = kLadder;
  p.t_final = 20.0;
  const GridSpec coarse{80.0, 4096, 1e-3};
  const GridSpec fine{80.0, 8193, 5e-4};
  const GridResult a = propagate_grid(init_from_level(b, 1, coarse), p, coarse, 20.0, b, 100000);
  const GridResult c = propagate_grid(init_from_level(b, 1, fine), p, fine, 20.0, b, 100000);
  CHECK(std::fabs(a.records.back().occupations(1) - c.records.back().occupations(1)) < 1e-4);
}

TEST_CASE("projections of an eigenfunction") {
  const EigenBasis b = build_basis(6);
  const GridSpec spec{40.0, 4095, 1e-3};
  const Eigen::MatrixXd phi = eigenfunctions_on(b, spec.positions());
  const Eigen::VectorXd proj = grid_projections(phi, init_from_level(b, 3, spec), spec.dx());
  CHECK(proj(2) > 1.0 - 1e-10);
  CHECK(proj.sum() <= 1.0 + 1e-10);
}
