#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bouncer/drive.hpp"

namespace bouncer {

// ---------------------------------------------------------------------------
// Action-angle description of the unperturbed bouncer H0 = p^2/2 + x/2.
// ---------------------------------------------------------------------------

inline const double kB = std::cbrt(kB3);  // (pi^2 / 12)^{1/3}

inline double frequency_of_action(double action) { return kB / std::cbrt(action); }
inline double energy_of_action(double action) {
  const double c = std::cbrt(action);
  return 1.5 * kB * c * c;
}
/// d(Omega)/dI = -(b/3) I^{-4/3}.
inline double frequency_slope(double action) {
  return -kB / (3.0 * action * std::cbrt(action));
}
inline double action_of_frequency(double omega) {
  const double r = kB / omega;
  return r * r * r;
}
inline double action_of_energy(double energy) { return std::pow(2.0 * energy / (3.0 * kB), 1.5); }
/// Energy on the classical shell resonant with omega: pi^2 / (8 omega^2).
inline double classical_energy(double omega) {
  return std::numbers::pi * std::numbers::pi / (8.0 * omega * omega);
}

/// Position and momentum on the unperturbed orbit of the given action at angle
/// theta in [-pi, pi): x = (pi^2 - theta^2) / (4 Omega^2), p = -theta / (2 Omega).
struct PhasePoint {
  double x;
  double p;
};
PhasePoint orbit_point(double action, double theta);

/// Class raised when a classical integration cannot continue.
class ClassicalAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Single-resonance (phase-mismatch) model
// ---------------------------------------------------------------------------

struct ActionAnglePoint {
  double t = 0.0;
  double action = 0.0;  // I
  double phase = 0.0;   // Phi = theta - phi_d, unwrapped
};

struct SingleResonanceOptions {
  double dt = 1e-3;
  int sample_every = 100;
  /// Drops eps (Omega'/Omega^3) omega_d^2 cos(Phi) from dPhi/dt, which reduces
  /// the model to the pendulum equation.
  bool drop_phase_correction = false;
};

struct SingleResonanceResult {
  std::vector<ActionAnglePoint> trajectory;
  bool trapped = false;              // max |Phi - pi| < pi over the run
  double max_phase_deviation = 0.0;  // from the stable lock at Phi = pi
  double max_relative_detuning = 0.0;  // max |Omega(I) - omega_d| / omega_d
};

/// Fourth-order Runge-Kutta integration of
///   dI/dt   = -(eps/2) (omega_d^2 / Omega^2) sin(Phi)
///   dPhi/dt = Omega - omega_d + eps (Omega' / Omega^3) omega_d^2 cos(Phi)
/// from initial.t to program.t_final. Throws ClassicalAbort if I leaves (0, inf).
SingleResonanceResult simulate_single_resonance(const DriveProgram& program,
                                                const ActionAnglePoint& initial,
                                                const SingleResonanceOptions& options);

/// Starting point locked to the initial drive frequency: I0 = (b / omega_d(0))^3 and
/// Phi = pi + Phi*, the stable lock shifted by the pendulum equilibrium for the
/// initial chirp rate. Omega' < 0, so the stable point of these equations sits at
/// Phi = pi; the pendulum equation is written for the deviation Phi - pi.
ActionAnglePoint resonant_start(const DriveProgram& program);

// ---------------------------------------------------------------------------
// Pendulum analysis and resonance width
// ---------------------------------------------------------------------------

/// d^2 Phi / dt^2 = (eps/2) Omega'(I_bar) (omega_d^2 / Omega^2(I_bar)) sin(Phi) - omega_dot,
/// with I_bar the action resonant with omega_d.
double pendulum_rhs(double epsilon, double omega_d, double omega_dot, double phase);

/// Stable equilibrium Phi* of the pendulum equation, in (-pi/2, pi/2), if one exists
/// (|omega_dot| <= trapping_bound).
std::optional<double> pendulum_equilibrium(double epsilon, double omega_d, double omega_dot);

struct ResonanceWidth {
  double action_bar = 0.0;      // I_bar = (b / omega_d)^3
  double width = 0.0;           // 5 sqrt(eps) I_bar^{2/3}
  double width_exact = 0.0;     // sqrt(8 eps (omega_d^2/Omega^2) / |Omega'|) at Omega = omega_d
  double delta_n = 0.0;         // levels spanned, I ~ n in scaled units
};

ResonanceWidth resonance_width(double epsilon, double omega_d);

// ---------------------------------------------------------------------------
// Full classical bouncer in the co-moving frame
// ---------------------------------------------------------------------------

struct BouncerPoint {
  double t = 0.0;
  double x = 0.0;
  double p = 0.0;
};

inline double bouncer_energy(const BouncerPoint& s) { return 0.5 * s.p * s.p + 0.5 * s.x; }

struct BouncerOptions {
  double dt = 1e-3;
  int sample_every = 100;
  double bounce_time_tolerance = 1e-12;
};

struct BouncerResult {
  std::vector<BouncerPoint> trajectory;  // samples every sample_every steps
  std::vector<double> bounce_times;
  BouncerPoint final_state;
};

/// Integrates x'' = -1/2 + eps omega_d^2 cos(phi_d) with RK4. A step that ends
/// below the mirror is repeated with the step length found by root-finding on
/// the RK4 map, so the bounce lands on x = 0 within bounce_time_tolerance;
/// there p -> -p and the rest of the step is completed.
BouncerResult simulate_bouncer(const DriveProgram& program, const BouncerPoint& initial,
                               const BouncerOptions& options);

struct EnsembleSample {
  double t = 0.0;
  double omega_d = 0.0;
  double mean_energy = 0.0;
  double std_energy = 0.0;
  // Particles above half the classical shell energy pi^2/(8 omega_d^2).
  double captured_fraction = 0.0;
  double captured_mean_energy = 0.0;
};

/// Bouncers started on the orbit of one action with angles evenly spread over
/// [-pi, pi). Particles are integrated independently (in parallel when
/// threads > 1) and reduced in index order, so results do not depend on the
/// thread count.
std::vector<EnsembleSample> simulate_ensemble(const DriveProgram& program, double action,
                                              int n_particles, const BouncerOptions& options,
                                              int threads = 1);

}  // namespace bouncer
