#include <doctest.h>

#include <cmath>

#include "bouncer/drive.hpp"
#include "bouncer/error.hpp"
#include "bouncer/quadrature.hpp"
#include "bouncer/units.hpp"

using namespace bouncer;

namespace {

const DriveProgram kLadder{0.228, OptimalChirpSchedule{1.205, 0.5}, 175.0};

double quadrature_phase(const DriveProgram& p, double t) {
  return integrate_adaptive([&](double s) { return omega_at(p, s); }, 0.0, t, 1e-15, 1e-14).value;
}

}  // namespace

TEST_CASE("optimal chirp starts at omega0") {
  for (double w0 : {0.5, 1.205, 3.0}) {
    for (double q : {0.1, 0.5, 2.0}) {
      const DriveProgram p{0.3, OptimalChirpSchedule{w0, q}, 10.0};
      CHECK(omega_at(p, 0.0) == w0);
      CHECK(phase_at(p, 0.0) == 0.0);
    }
  }
}

TEST_CASE("time to reach 2 pi x 136 Hz") {
  const ScaledUnits s = derive_scales(PhysicalConstants{});
  const double w3 = convert(136.0, Quantity::FrequencyHertz, Direction::ToScaled, s);
  CHECK(w3 == doctest::Approx(0.4674).epsilon(1e-3));
  const double t = time_at_omega(kLadder, w3);
  CHECK(t == doctest::Approx(133.0).epsilon(0.005));
  CHECK(omega_at(kLadder, t) == doctest::Approx(w3).epsilon(1e-13));
  CHECK(1e3 * convert(t, Quantity::Time, Direction::ToSI, s) == doctest::Approx(73.0).epsilon(0.01));
}

TEST_CASE("initial chirp rate equals q times the trapping bound") {
  CHECK(chirp_rate_at(kLadder, 0.0) == doctest::Approx(-0.0487).epsilon(1e-3));
  for (double t = 0.0; t <= 175.0; t += 12.5) {
    CHECK(-chirp_rate_at(kLadder, t) == doctest::Approx(0.5 * trapping_bound(0.228, omega_at(kLadder, t))).epsilon(1e-12));
  }
}

TEST_CASE("trapping bound values") {
  CHECK(std::fabs(trapping_bound(0.228, 1.205) - 0.0974) < 5e-5);
  CHECK(std::fabs(trapping_bound(0.228, 0.8729) - 0.0268) < 5e-5);
  CHECK_THROWS_AS(trapping_bound(0.0, 1.0), InvalidInput);
}

TEST_CASE("closed-form phase against quadrature") {
  CHECK(std::fabs(phase_at(kLadder, 10.0) - quadrature_phase(kLadder, 10.0)) < 1e-10);
  for (double t : {0.5, 33.0, 100.0, 175.0}) {
    CHECK(phase_at(kLadder, t) == doctest::Approx(quadrature_phase(kLadder, t)).epsilon(1e-12));
  }
  const DriveProgram lin{0.1, LinearSchedule{1.2, -0.004}, 200.0};
  for (double t : {1.0, 50.0, 200.0}) {
    CHECK(phase_at(lin, t) == doctest::Approx(quadrature_phase(lin, t)).epsilon(1e-12));
  }
}

TEST_CASE("constant and vanishing-chirp limits") {
  const DriveProgram c{0.1, ConstantSchedule{0.9}, 50.0};
  CHECK(phase_at(c, 37.0) == doctest::Approx(0.9 * 37.0).epsilon(1e-15));
  const DriveProgram tiny{0.228, OptimalChirpSchedule{1.205, 1e-12}, 50.0};
  CHECK(phase_at(tiny, 50.0) == doctest::Approx(1.205 * 50.0).epsilon(1e-10));
  const DriveProgram zero_eps{0.0, OptimalChirpSchedule{1.205, 0.5}, 50.0};
  CHECK(omega_at(zero_eps, 50.0) == 1.205);
}

TEST_CASE("omega^-3 grows linearly at q eps / (2 b^3)") {
  const double k = 0.5 * 0.228 / (2.0 * kB3);
  const double w0 = std::pow(1.205, -3.0);
  for (double t = 1.0; t <= 175.0; t += 7.0) {
    CHECK((std::pow(omega_at(kLadder, t), -3.0) - w0) / t == doctest::Approx(k).epsilon(1e-10));
  }
}

TEST_CASE("finite-difference phase derivative converges at second order") {
  for (double t : {5.0, 60.0, 150.0}) {
    const auto err = [&](double h) {
      return std::fabs((phase_at(kLadder, t + h) - phase_at(kLadder, t - h)) / (2.0 * h) - omega_at(kLadder, t));
    };
    const double ratio = err(1e-1) / err(5e-2);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.02));
  }
}

TEST_CASE("frequency is non-increasing") {
  double prev = omega_at(kLadder, 0.0);
  for (double t = 0.1; t <= 175.0; t += 0.1) {
    const double w = omega_at(kLadder, t);
    CHECK(w <= prev);
    prev = w;
  }
}

TEST_CASE("drive force") {
  const DriveProgram c{0.2, ConstantSchedule{0.8}, 10.0};
  CHECK(drive_force(c, 3.0) == doctest::Approx(0.2 * 0.64 * std::cos(2.4)).epsilon(1e-14));
}

TEST_CASE("time inversion") {
  const DriveProgram lin{0.1, LinearSchedule{1.2, -0.004}, 200.0};
  CHECK(time_at_omega(lin, 1.0) == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(time_at_omega(lin, 1.3) < 0.0);
  CHECK(time_at_omega(DriveProgram{0.1, ConstantSchedule{1.0}, 1.0}, 0.5) < 0.0);
}

TEST_CASE("domain and validation errors") {
  CHECK_THROWS_AS(omega_at(kLadder, -0.5), DomainError);
  CHECK_THROWS_AS(omega_at(kLadder, 176.0), DomainError);
  CHECK_THROWS_AS(phase_at(kLadder, 200.0), DomainError);
  CHECK_THROWS_AS((DriveProgram{-0.1, ConstantSchedule{1.0}, 1.0}.validate()), InvalidInput);
  CHECK_THROWS_AS((DriveProgram{0.1, ConstantSchedule{0.0}, 1.0}.validate()), InvalidInput);
  CHECK_THROWS_AS((DriveProgram{0.1, OptimalChirpSchedule{1.0, 0.0}, 1.0}.validate()), InvalidInput);
  CHECK_THROWS_AS((DriveProgram{0.1, LinearSchedule{1.0, -0.1}, 20.0}.validate()), InvalidInput);
  CHECK_THROWS_AS((DriveProgram{0.1, ConstantSchedule{1.0}, 0.0}.validate()), InvalidInput);
}
