#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bouncer/config.hpp"

namespace bouncer {

inline constexpr int kManifestSchemaVersion = 1;

/// Version string baked in at build time.
std::string code_version();

/// Directory holding the checked-in preset configs: $BOUNCER_PRESET_DIR if set,
/// else the source tree's presets/ directory.
std::filesystem::path preset_directory();
std::filesystem::path preset_path(const std::string& name);
std::vector<std::string> preset_names();

/// $BOUNCER_OUT_DIR if set, else "bouncer-out".
std::filesystem::path default_output_dir();

struct RunOptions {
  std::filesystem::path out_dir;
  std::ostream* log = nullptr;  // progress messages; nullptr for silence
};

struct RunReport {
  int exit_code = 0;  // 0 ok, 3 solver abort (partial outputs)
  bool partial = false;
  std::string message;
  std::vector<std::string> files;
};

/// Runs every solver the config asks for and writes manifest.json,
/// observables.csv, basis.csv and, as configured, classical.csv,
/// snapshots.csv and wigner_<k>.json into options.out_dir. Throws ConfigError
/// for problems only detectable once scales are known (an unreachable
/// snapshot frequency, say). Solver aborts are reported through RunReport,
/// with whatever was computed written out and flagged in the manifest.
RunReport run_experiment(const ExperimentConfig& config, const RunOptions& options);

}  // namespace bouncer
