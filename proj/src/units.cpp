#include "bouncer/units.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bouncer/error.hpp"

namespace bouncer {

void PhysicalConstants::validate() const {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw InvalidInput(std::string("physical constant '") + name +
                         "' must be finite and positive, got " + std::to_string(v));
    }
  };
  check(neutron_mass, "neutron_mass");
  check(gravity_g, "gravity_g");
  check(hbar, "hbar");
}

ScaledUnits derive_scales(const PhysicalConstants& c) {
  c.validate();
  ScaledUnits s;
  const double m = c.neutron_mass;
  s.length_a = std::cbrt(c.hbar * c.hbar / (2.0 * m * m * c.gravity_g));
  s.time_T = m * s.length_a * s.length_a / c.hbar;
  s.energy_E0 = c.hbar / s.time_T;
  s.frequency_f0 = 1.0 / s.time_T;
  return s;
}

Quantity parse_quantity(std::string_view tag) {
  if (tag == "length") return Quantity::Length;
  if (tag == "time") return Quantity::Time;
  if (tag == "energy") return Quantity::Energy;
  if (tag == "frequency-angular") return Quantity::AngularFrequency;
  if (tag == "frequency-hertz") return Quantity::FrequencyHertz;
  if (tag == "acceleration") return Quantity::Acceleration;
  throw InvalidInput("unknown unit tag '" + std::string(tag) + "'");
}

double convert(double value, Quantity quantity, Direction direction,
               const ScaledUnits& s) {
  // SI value = value_scaled * factor
  double factor = 1.0;
  switch (quantity) {
    case Quantity::Length:
      factor = s.length_a;
      break;
    case Quantity::Time:
      factor = s.time_T;
      break;
    case Quantity::Energy:
      factor = s.energy_E0;
      break;
    case Quantity::AngularFrequency:
      factor = 1.0 / s.time_T;
      break;
    case Quantity::FrequencyHertz:
      factor = 1.0 / (2.0 * std::numbers::pi * s.time_T);
      break;
    case Quantity::Acceleration:
      factor = s.length_a / (s.time_T * s.time_T);
      break;
  }
  return direction == Direction::ToSI ? value * factor : value / factor;
}

double convert(double value, std::string_view tag, Direction direction,
               const ScaledUnits& scales) {
  return convert(value, parse_quantity(tag), direction, scales);
}

}  // namespace bouncer
