#pragma once

#include <numbers>
#include <variant>

namespace bouncer {

/// b^3 = pi^2 / 12, the constant of the action-angle form H0 = (3/2) b I^{2/3}.
inline constexpr double kB3 = std::numbers::pi * std::numbers::pi / 12.0;

struct ConstantSchedule {
  double omega0 = 1.0;
};

struct LinearSchedule {
  double omega0 = 1.0;
  double rate = 0.0;  // d(omega)/dt, scaled
};

/// Chirp saturating a fraction q of the trapping bound at every instant:
///   omega^{-3}(t) = omega0^{-3} + q eps t / (2 b^3).
struct OptimalChirpSchedule {
  double omega0 = 1.0;
  double q = 0.5;
};

using Schedule = std::variant<ConstantSchedule, LinearSchedule, OptimalChirpSchedule>;

/// Drive of the co-moving frame: force term -eps omega_d^2(t) x cos(phi_d(t)).
/// All quantities scaled.
struct DriveProgram {
  double epsilon = 0.0;
  Schedule schedule = ConstantSchedule{};
  double t_final = 0.0;

  /// Throws InvalidInput if eps < 0, omega0 <= 0, q <= 0, t_final <= 0, or a
  /// linear schedule reaches omega <= 0 before t_final.
  void validate() const;
};

/// Instantaneous drive frequency. Throws DomainError outside [0, t_final]
/// (a relative slack of 1e-12 t_final absorbs accumulated step roundoff).
double omega_at(const DriveProgram& program, double t);

/// phi_d(t) = integral of omega_at from 0 to t, in closed form.
double phase_at(const DriveProgram& program, double t);

/// d(omega_d)/dt.
double chirp_rate_at(const DriveProgram& program, double t);

/// Amplitude eps omega_d^2(t) cos(phi_d(t)) multiplying x in the Hamiltonian.
double drive_force(const DriveProgram& program, double t);

/// Largest |d(omega)/dt| that keeps a stable phase-locked equilibrium:
/// eps omega^4 / (6 b^3). Requires eps > 0 and omega > 0.
double trapping_bound(double epsilon, double omega);

/// Earliest time at which the schedule reaches the given frequency, or a
/// negative value if it never does (constant schedules, wrong chirp sign).
/// The result is not clipped to t_final.
double time_at_omega(const DriveProgram& program, double omega);

}  // namespace bouncer
