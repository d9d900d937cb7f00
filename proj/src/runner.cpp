#include "bouncer/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>

#include "bouncer/classical.hpp"
#include "bouncer/eigenbasis.hpp"
#include "bouncer/format.hpp"
#include "bouncer/gridprop.hpp"
#include "bouncer/qdyn.hpp"
#include "bouncer/wigner.hpp"

#ifndef BOUNCER_VERSION
#define BOUNCER_VERSION "unknown"
#endif
#ifndef BOUNCER_PRESET_DIR
#define BOUNCER_PRESET_DIR "presets"
#endif

namespace bouncer {
namespace {

using ordered_json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw InvalidInput("cannot write " + path.string());
  }
  void header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
    out_ << '\n';
  }
  CsvWriter& cell(double v) {
    sep();
    out_ << fmt_double(v);
    return *this;
  }
  CsvWriter& cell(long v) {
    sep();
    out_ << v;
    return *this;
  }
  CsvWriter& cell(const std::string& v) {
    sep();
    out_ << v;
    return *this;
  }
  void end() {
    out_ << '\n';
    first_ = true;
  }

 private:
  void sep() {
    if (!first_) out_ << ',';
    first_ = false;
  }
  std::ofstream out_;
  bool first_ = true;
};

void log_line(const RunOptions& o, const std::string& text) {
  if (o.log != nullptr) *o.log << text << '\n';
}

double hz_of(double omega, const ScaledUnits& s) {
  return convert(omega, Quantity::FrequencyHertz, Direction::ToSI, s);
}

double ms_of(double t, const ScaledUnits& s) { return 1e3 * convert(t, Quantity::Time, Direction::ToSI, s); }

void write_observables(CsvWriter& csv, const std::string& solver,
                       const std::vector<ObservableRecord>& records, const ScaledUnits& s) {
  for (const auto& r : records) {
    csv.cell(solver).cell(r.t).cell(ms_of(r.t, s)).cell(r.omega_d).cell(hz_of(r.omega_d, s));
    for (Eigen::Index n = 0; n < r.occupations.size(); ++n) csv.cell(r.occupations(n));
    csv.cell(r.mean_n).cell(r.width_n).cell(r.mean_energy);
    csv.cell(convert(r.mean_energy, Quantity::Energy, Direction::ToSI, s) / kPicoElectronVolt);
    csv.cell(classical_energy(r.omega_d)).cell(r.norm);
    csv.end();
  }
}

struct SnapshotTarget {
  std::string label;  // "frequency_hz" or "time"
  double requested = 0.0;
  double t = 0.0;
};

std::vector<SnapshotTarget> snapshot_targets(const ExperimentConfig& c, const ScaledUnits& s) {
  std::vector<SnapshotTarget> out;
  for (std::size_t i = 0; i < c.wigner.frequencies_hz.size(); ++i) {
    const double hz = c.wigner.frequencies_hz[i];
    const double omega = convert(hz, Quantity::FrequencyHertz, Direction::ToScaled, s);
    const double t = time_at_omega(c.program, omega);
    if (t < 0.0 || t > c.program.t_final) {
      throw ConfigError("wigner_snapshots.frequencies_hz[" + std::to_string(i) + "]",
                        "drive does not reach " + fmt_double(hz) + " Hz within t_final");
    }
    out.push_back({"frequency_hz", hz, t});
  }
  for (double t : c.wigner.times) out.push_back({"time", t, t});
  return out;
}

ordered_json wigner_json(const WignerGrid& w, const WignerDiagnostics& d, const SnapshotTarget& target,
                         const ExperimentConfig& c, const ScaledUnits& s, double mean_energy) {
  ordered_json j;
  j["schema_version"] = kManifestSchemaVersion;
  j["target"] = {{"kind", target.label}, {"value", target.requested}};
  j["t"] = w.t;
  j["t_ms"] = ms_of(w.t, s);
  j["omega_d"] = w.omega_d;
  j["omega_d_hz"] = hz_of(w.omega_d, s);
  j["hbar_cell_area"] = 1.0;
  j["mean_energy"] = mean_energy;
  j["grid"] = {{"dx", w.dx()},
               {"dp", w.dp()},
               {"n_x", w.xs.size()},
               {"n_p", w.ps.size()},
               {"x_stride", c.wigner.x_stride},
               {"p_window", c.wigner.p_window}};
  j["diagnostics"] = {{"total", d.total},
                      {"purity", d.purity},
                      {"min", d.min_value},
                      {"max_abs", d.max_abs},
                      {"position_marginal_error", d.position_marginal_error},
                      {"momentum_marginal_error", d.momentum_marginal_error},
                      {"shell_concentration", shell_concentration(w, classical_energy(w.omega_d), 0.2)}};
  std::vector<Eigen::Index> cols;
  for (Eigen::Index l = 0; l < w.ps.size(); ++l) {
    if (std::fabs(w.ps(l)) <= c.wigner.p_window) cols.push_back(l);
  }
  ordered_json xs = ordered_json::array(), ps = ordered_json::array(), rows = ordered_json::array();
  for (Eigen::Index l : cols) ps.push_back(w.ps(l));
  for (Eigen::Index r = 0; r < w.xs.size(); r += c.wigner.x_stride) {
    xs.push_back(w.xs(r));
    ordered_json row = ordered_json::array();
    for (Eigen::Index l : cols) row.push_back(w.values(r, l));
    rows.push_back(std::move(row));
  }
  j["x"] = std::move(xs);
  j["p"] = std::move(ps);
  j["W"] = std::move(rows);
  const ClassicalOrbit orbit = classical_overlay(classical_energy(w.omega_d));
  j["classical_overlay"] = {{"energy", orbit.energy},
                            {"x", std::vector<double>(orbit.xs.data(), orbit.xs.data() + orbit.xs.size())},
                            {"p_upper", std::vector<double>(orbit.p_upper.data(),
                                                            orbit.p_upper.data() + orbit.p_upper.size())}};
  return j;
}

void write_json(const std::filesystem::path& path, const ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

std::optional<double> first_jump_time(const std::vector<ObservableRecord>& records) {
  for (const auto& r : records) {
    if (r.occupations.size() >= 2 && r.occupations(1) > r.occupations(0)) return r.t;
  }
  return std::nullopt;
}

}  // namespace

std::string code_version() { return BOUNCER_VERSION; }

std::filesystem::path preset_directory() {
  if (const char* env = std::getenv("BOUNCER_PRESET_DIR"); env != nullptr && *env != '\0') return env;
  return BOUNCER_PRESET_DIR;
}

std::filesystem::path preset_path(const std::string& name) {
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw InvalidInput("unknown preset '" + name + "'");
  }
  return preset_directory() / (name + ".json");
}

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "threshold-demo"}; }

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("BOUNCER_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "bouncer-out";
}

RunReport run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const ScaledUnits scales = derive_scales(config.constants);
  const std::vector<SnapshotTarget> targets = snapshot_targets(config, scales);
  const std::filesystem::path dir = options.out_dir;
  std::filesystem::create_directories(dir);

  RunReport report;
  ordered_json results;

  log_line(options, "building basis with " + std::to_string(config.n_basis) + " levels");
  const EigenBasis basis = build_basis(config.n_basis);
  {
    std::ofstream out(dir / "basis.csv", std::ios::binary);
    write_basis_csv(out, basis);
    report.files.push_back("basis.csv");
  }

  CsvWriter obs(dir / "observables.csv");
  {
    std::vector<std::string> h = {"solver", "t", "t_ms", "omega_d", "omega_d_hz"};
    for (int n = 1; n <= config.n_basis; ++n) h.push_back("P_" + std::to_string(n));
    for (const char* c : {"mean_n", "width_n", "mean_energy", "mean_energy_peV", "classical_energy", "norm"}) {
      h.push_back(c);
    }
    obs.header(h);
    report.files.push_back("observables.csv");
  }

  auto abort_with = [&](const std::string& stage, const std::string& what) {
    report.partial = true;
    report.exit_code = 3;
    report.message = stage + ": " + what;
    log_line(options, "aborted: " + report.message);
  };

  const QuantumState initial = eigenstate(basis, config.initial_level);

  if (config.solver != SolverKind::Grid) {
    log_line(options, "spectral propagation to t = " + fmt_double(config.program.t_final));
    PropagationOptions po;
    po.dt = config.dt;
    po.sample_every = config.sample_every;
    po.abort_norm_drift = config.abort_norm_drift;
    po.truncation_guard = config.truncation_guard;
    for (const auto& t : targets) po.snapshot_times.push_back(t.t);
    PropagationResult pr;
    try {
      pr = propagate(basis, config.program, initial, po);
    } catch (const SolverAbort& e) {
      pr = e.partial();
      abort_with("spectral", e.what());
    }
    write_observables(obs, "spectral", pr.records, scales);
    ordered_json spec;
    spec["steps"] = pr.steps;
    spec["max_norm_drift"] = pr.max_norm_drift;
    if (const auto tj = first_jump_time(pr.records)) {
      spec["first_jump_t"] = *tj;
      spec["first_jump_ms"] = ms_of(*tj, scales);
    }
    if (!pr.records.empty()) {
      const auto& last = pr.records.back();
      spec["final"] = {{"t", last.t}, {"mean_n", last.mean_n}, {"width_n", last.width_n},
                       {"mean_energy", last.mean_energy}};
    }
    results["spectral"] = spec;

    if (!pr.snapshots.empty()) {
      CsvWriter snap(dir / "snapshots.csv");
      snap.header({"t", "omega_d", "n", "re", "im"});
      for (const auto& s : pr.snapshots) {
        const double w = omega_at(config.program, s.t);
        for (Eigen::Index n = 0; n < s.coeffs.size(); ++n) {
          snap.cell(s.t).cell(w).cell(static_cast<long>(n + 1));
          snap.cell(s.coeffs(n).real()).cell(s.coeffs(n).imag()).end();
        }
      }
      report.files.push_back("snapshots.csv");
    }

    ordered_json wig = ordered_json::array();
    for (std::size_t k = 0; k < pr.snapshots.size() && k < targets.size(); ++k) {
      const QuantumState& s = pr.snapshots[k];
      log_line(options, "wigner snapshot " + std::to_string(k + 1) + " at t = " + fmt_double(s.t));
      WignerGrid w = wigner_of_state(basis, s, config.wigner.dx, config.wigner.x_max);
      w.omega_d = omega_at(config.program, s.t);
      const Eigen::VectorXcd psi = wavefunction_on_grid(basis, s, w.xs);
      const Eigen::VectorXd mref = momentum_density(basis, s, w.ps, config.wigner.x_max);
      const WignerDiagnostics d = diagnose(w, psi, &mref);
      const double energy = observables(basis, s, w.omega_d).mean_energy;
      const std::string name = "wigner_" + std::to_string(k + 1) + ".json";
      write_json(dir / name, wigner_json(w, d, targets[k], config, scales, energy));
      report.files.push_back(name);
      wig.push_back({{"file", name}, {"t", s.t}, {"omega_d", w.omega_d}, {"min", d.min_value},
                     {"total", d.total}, {"purity", d.purity}});
    }
    if (!wig.empty()) results["wigner"] = wig;
  }

  if (config.solver != SolverKind::Spectral && !report.partial) {
    const double t_end = config.grid.t_end > 0.0 ? config.grid.t_end : config.program.t_final;
    log_line(options, "grid propagation to t = " + fmt_double(t_end));
    const int every = std::max(1, static_cast<int>(std::lround(config.sample_every * config.dt /
                                                                config.grid.spec.dt)));
    try {
      const GridState g0 = init_from_level(basis, config.initial_level, config.grid.spec);
      const GridResult gr = propagate_grid(g0, config.program, config.grid.spec, t_end, basis, every);
      write_observables(obs, "grid", gr.records, scales);
      results["grid"] = {{"t_end", t_end}, {"sample_every", every},
                         {"max_norm_drift", gr.max_norm_drift},
                         {"max_tail_fraction", gr.max_tail_fraction}};
    } catch (const InternalError& e) {
      abort_with("grid", e.what());
    }
  }

  if (config.classical.mode == ClassicalMode::SingleResonance && !report.partial) {
    log_line(options, "single-resonance model");
    SingleResonanceOptions so;
    so.dt = config.classical.dt;
    so.sample_every = config.classical.sample_every;
    so.drop_phase_correction = config.classical.drop_phase_correction;
    const ActionAnglePoint start = resonant_start(config.program);
    try {
      const SingleResonanceResult r = simulate_single_resonance(config.program, start, so);
      CsvWriter csv(dir / "classical.csv");
      csv.header({"t", "t_ms", "omega_d", "omega_d_hz", "action", "phase", "phase_deviation",
                  "omega_action", "relative_detuning"});
      for (const auto& p : r.trajectory) {
        const double w = omega_at(config.program, p.t);
        const double om = frequency_of_action(p.action);
        csv.cell(p.t).cell(ms_of(p.t, scales)).cell(w).cell(hz_of(w, scales));
        csv.cell(p.action).cell(p.phase).cell(p.phase - kPi).cell(om).cell(std::fabs(om - w) / w);
        csv.end();
      }
      report.files.push_back("classical.csv");
      results["classical"] = {{"mode", "single-resonance"},
                              {"initial_action", start.action},
                              {"initial_phase", start.phase},
                              {"trapped", r.trapped},
                              {"max_phase_deviation", r.max_phase_deviation},
                              {"max_relative_detuning", r.max_relative_detuning}};
    } catch (const ClassicalAbort& e) {
      abort_with("classical", e.what());
    }
  } else if (config.classical.mode == ClassicalMode::BouncerEnsemble && !report.partial) {
    log_line(options, "classical bouncer ensemble of " + std::to_string(config.classical.ensemble_size));
    BouncerOptions bo;
    bo.dt = config.classical.dt;
    bo.sample_every = config.classical.sample_every;
    const double action = action_of_energy(basis.energies(config.initial_level - 1));
    try {
      const auto samples = simulate_ensemble(config.program, action, config.classical.ensemble_size, bo,
                                             config.classical.threads);
      CsvWriter csv(dir / "classical.csv");
      csv.header({"t", "t_ms", "omega_d", "omega_d_hz", "mean_energy", "std_energy", "captured_fraction",
                  "captured_mean_energy", "classical_energy"});
      for (const auto& e : samples) {
        csv.cell(e.t).cell(ms_of(e.t, scales)).cell(e.omega_d).cell(hz_of(e.omega_d, scales));
        csv.cell(e.mean_energy).cell(e.std_energy).cell(e.captured_fraction);
        csv.cell(e.captured_mean_energy).cell(classical_energy(e.omega_d)).end();
      }
      report.files.push_back("classical.csv");
      ordered_json cj = {{"mode", "bouncer-ensemble"}, {"initial_action", action},
                         {"ensemble_size", config.classical.ensemble_size}};
      if (!samples.empty()) {
        const auto& last = samples.back();
        cj["final"] = {{"t", last.t}, {"mean_energy", last.mean_energy},
                       {"captured_fraction", last.captured_fraction},
                       {"classical_energy", classical_energy(last.omega_d)}};
      }
      results["classical"] = cj;
    } catch (const ClassicalAbort& e) {
      abort_with("classical", e.what());
    }
  }

  ordered_json manifest;
  manifest["schema_version"] = kManifestSchemaVersion;
  manifest["code_version"] = code_version();
  manifest["partial"] = report.partial;
  manifest["abort_reason"] = report.partial ? ordered_json(report.message) : ordered_json(nullptr);
  manifest["config"] = to_json(config);
  manifest["scales"] = {{"length_a_m", scales.length_a},
                        {"time_T_s", scales.time_T},
                        {"energy_E0_J", scales.energy_E0},
                        {"frequency_f0_Hz", scales.frequency_f0}};
  ordered_json snaps = ordered_json::array();
  for (const auto& t : targets) snaps.push_back({{"kind", t.label}, {"value", t.requested}, {"t", t.t}});
  manifest["snapshot_targets"] = snaps;
  manifest["results"] = results;
  report.files.push_back("manifest.json");
  manifest["files"] = report.files;
  write_json(dir / "manifest.json", manifest);
  return report;
}

}  // namespace bouncer
