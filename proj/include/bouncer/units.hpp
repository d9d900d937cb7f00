#pragma once

#include <string_view>

namespace bouncer {

/// Physical constants of the gravitational quantum bouncer, SI units.
struct PhysicalConstants {
  double neutron_mass = 1.6749e-27;  // kg
  double gravity_g = 9.81;           // m/s^2
  double hbar = 1.0546e-34;          // J s

  /// Throws InvalidInput unless every constant is finite and positive.
  void validate() const;
};

/// The four conversion scales of the dimensionless system in which the
/// Hamiltonian reads p^2/2 + x/2.
struct ScaledUnits {
  double length_a = 0.0;      // m,  (hbar^2 / (2 m^2 g))^(1/3)
  double time_T = 0.0;        // s,  m a^2 / hbar
  double energy_E0 = 0.0;     // J,  hbar / T
  double frequency_f0 = 0.0;  // Hz, 1 / T
};

ScaledUnits derive_scales(const PhysicalConstants& constants);

enum class Quantity {
  Length,
  Time,
  Energy,
  AngularFrequency,  // scaled omega  <->  rad/s
  FrequencyHertz,    // scaled omega  <->  Hz, i.e. omega / (2 pi T)
  Acceleration,      // a / T^2
};

enum class Direction { ToScaled, ToSI };

/// Parses "length", "time", "energy", "frequency-angular", "frequency-hertz",
/// "acceleration". Throws InvalidInput for anything else.
Quantity parse_quantity(std::string_view tag);

double convert(double value, Quantity quantity, Direction direction,
               const ScaledUnits& scales);

/// convert() with a textual unit tag.
double convert(double value, std::string_view tag, Direction direction,
               const ScaledUnits& scales);

inline constexpr double kElectronVolt = 1.602176634e-19;  // J
inline constexpr double kPicoElectronVolt = 1e-12 * kElectronVolt;

}  // namespace bouncer
