#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "bouncer/drive.hpp"
#include "bouncer/error.hpp"
#include "bouncer/gridprop.hpp"
#include "bouncer/units.hpp"

namespace bouncer {

inline constexpr int kConfigSchemaVersion = 1;

/// Configuration error tied to one field, addressed by its dotted JSON path.
class ConfigError : public InvalidInput {
 public:
  ConfigError(std::string field, const std::string& message)
      : InvalidInput("config field '" + field + "': " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class SolverKind { Spectral, Grid, Both };
enum class ClassicalMode { Off, SingleResonance, BouncerEnsemble };

struct ClassicalConfig {
  ClassicalMode mode = ClassicalMode::Off;
  int ensemble_size = 100;
  double dt = 1e-3;
  int sample_every = 100;
  bool drop_phase_correction = false;
  int threads = 1;
};

/// Grid oracle settings. t_end <= 0 means "up to t_final".
struct GridConfig {
  GridSpec spec;
  double t_end = 0.0;
};

/// Snapshot targets are drive frequencies in Hz (mapped to the time the
/// schedule reaches them) or scaled times. W is computed on x in [0, x_max]
/// with spacing dx; the JSON output keeps |p| <= p_window and every x_stride-th
/// row, while diagnostics use the full grid.
struct WignerConfig {
  std::vector<double> frequencies_hz;
  std::vector<double> times;
  double dx = 0.025;
  double x_max = 40.0;
  double p_window = 8.0;
  int x_stride = 4;
  bool empty() const { return frequencies_hz.empty() && times.empty(); }
};

struct ExperimentConfig {
  std::string name = "custom";
  PhysicalConstants constants;
  DriveProgram program;
  int n_basis = 40;
  double dt = 1e-3;
  int sample_every = 100;
  int initial_level = 1;
  double abort_norm_drift = 1e-4;
  double truncation_guard = 1e-3;
  SolverKind solver = SolverKind::Spectral;
  GridConfig grid;
  ClassicalConfig classical;
  WignerConfig wigner;
  std::string output_dir;  // empty: decided by the caller

  /// Cross-field checks; throws ConfigError.
  void validate() const;
};

/// Strict parse: unknown keys and wrong types are errors. Missing keys take the
/// defaults above except epsilon, schedule and t_final, which are required.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Fully resolved configuration, defaults included.
nlohmann::ordered_json to_json(const ExperimentConfig& config);

std::string to_string(SolverKind kind);
SolverKind parse_solver(const std::string& text);

}  // namespace bouncer
