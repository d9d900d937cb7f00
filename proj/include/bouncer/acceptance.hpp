#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bouncer/config.hpp"

namespace bouncer {

/// One measured quantity and whether it met its bound.
struct Check {
  std::string what;
  double value = 0.0;
  std::string bound;  // human-readable tolerance, e.g. "in [7, 13] ms"
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  bool pass() const;
};

/// "criterion <id> PASS|FAIL <title>" followed by one indented line per check.
void print_result(std::ostream& out, const CriterionResult& r, bool verbose = true);

// Acceptance criteria, full scale. Each is self-contained; the ones built on the
// reference ladder run share it through run_acceptance().
CriterionResult criterion_eigenstructure();
CriterionResult criterion_resonance_width();
CriterionResult criterion_oracle_equivalence();
CriterionResult criterion_threshold();
CriterionResult criterion_unit_arithmetic();

/// Runs criteria 1..9 in order, printing each line as soon as it is known when
/// out is given.
std::vector<CriterionResult> run_acceptance(std::ostream* out = nullptr);

/// Checks applicable to an arbitrary config, on its spectral run truncated to
/// t_max (<= 0: the full run): unitarity always; constancy of populations and
/// energy for eps = 0; first-jump timing and P_2 peak when the drive is the
/// reference ladder parameter set.
CriterionResult verify_config(const ExperimentConfig& config, double t_max);

/// Zero, energy and dipole reference checks of the eigenbasis.
CriterionResult verify_eigenbasis(int n_levels = 40);

}  // namespace bouncer
