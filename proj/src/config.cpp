#include "bouncer/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "bouncer/airy.hpp"

namespace bouncer {
namespace {

using nlohmann::json;

// Walks one JSON object, remembering which keys were consumed so leftovers can
// be reported as unknown.
class Fields {
 public:
  Fields(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, double fallback, bool required = false) {
    const json* v = find(key);
    if (v == nullptr) {
      if (required) throw ConfigError(at(key), "is required");
      return fallback;
    }
    if (!v->is_number()) throw ConfigError(at(key), "expected a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) throw ConfigError(at(key), "must be finite");
    return x;
  }

  int integer(const std::string& key, int fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    if (!v->is_number_integer()) throw ConfigError(at(key), "expected an integer");
    return v->get<int>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    if (!v->is_boolean()) throw ConfigError(at(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    if (!v->is_string()) throw ConfigError(at(key), "expected a string");
    return v->get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) return {};
    if (!v->is_array()) throw ConfigError(at(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& e = (*v)[i];
      if (!e.is_number() || !std::isfinite(e.get<double>())) {
        throw ConfigError(at(key) + "[" + std::to_string(i) + "]", "expected a finite number");
      }
      out.push_back(e.get<double>());
    }
    return out;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(at(it.key()), "unknown key");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

Schedule parse_schedule(const json& doc) {
  Fields f(doc, "schedule");
  const std::string type = f.string("type", "");
  Schedule out;
  if (type == "constant") {
    out = ConstantSchedule{f.number("omega0", 0.0, true)};
  } else if (type == "linear") {
    out = LinearSchedule{f.number("omega0", 0.0, true), f.number("rate", 0.0, true)};
  } else if (type == "optimal-chirp") {
    out = OptimalChirpSchedule{f.number("omega0", 0.0, true), f.number("q", 0.0, true)};
  } else {
    throw ConfigError("schedule.type", "expected constant, linear or optimal-chirp, got '" + type + "'");
  }
  f.finish();
  return out;
}

nlohmann::ordered_json schedule_json(const Schedule& s) {
  nlohmann::ordered_json j;
  if (const auto* c = std::get_if<ConstantSchedule>(&s)) {
    j["type"] = "constant";
    j["omega0"] = c->omega0;
  } else if (const auto* l = std::get_if<LinearSchedule>(&s)) {
    j["type"] = "linear";
    j["omega0"] = l->omega0;
    j["rate"] = l->rate;
  } else {
    const auto& o = std::get<OptimalChirpSchedule>(s);
    j["type"] = "optimal-chirp";
    j["omega0"] = o.omega0;
    j["q"] = o.q;
  }
  return j;
}

ClassicalMode parse_classical_mode(const std::string& text) {
  if (text == "off") return ClassicalMode::Off;
  if (text == "single-resonance") return ClassicalMode::SingleResonance;
  if (text == "bouncer-ensemble") return ClassicalMode::BouncerEnsemble;
  throw ConfigError("classical.mode",
                    "expected off, single-resonance or bouncer-ensemble, got '" + text + "'");
}

std::string classical_mode_name(ClassicalMode m) {
  switch (m) {
    case ClassicalMode::Off: return "off";
    case ClassicalMode::SingleResonance: return "single-resonance";
    case ClassicalMode::BouncerEnsemble: return "bouncer-ensemble";
  }
  return "off";
}

}  // namespace

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Spectral: return "spectral";
    case SolverKind::Grid: return "grid";
    case SolverKind::Both: return "both";
  }
  return "spectral";
}

SolverKind parse_solver(const std::string& text) {
  if (text == "spectral") return SolverKind::Spectral;
  if (text == "grid") return SolverKind::Grid;
  if (text == "both") return SolverKind::Both;
  throw ConfigError("solver", "expected spectral, grid or both, got '" + text + "'");
}

void ExperimentConfig::validate() const {
  try {
    constants.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError("constants", e.what());
  }
  if (!(program.epsilon >= 0.0)) throw ConfigError("epsilon", "must be >= 0");
  if (!(program.t_final > 0.0)) throw ConfigError("t_final", "must be > 0");
  std::visit([](const auto& s) {
    if (!(s.omega0 > 0.0)) throw ConfigError("schedule.omega0", "must be > 0");
  }, program.schedule);
  if (const auto* o = std::get_if<OptimalChirpSchedule>(&program.schedule); o && !(o->q > 0.0)) {
    throw ConfigError("schedule.q", "must be > 0");
  }
  try {
    program.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError("schedule", e.what());
  }
  if (n_basis < 2 || n_basis > kMaxLevels) throw ConfigError("n_basis", "must be in [2, 200]");
  if (!(dt > 0.0) || dt > 0.1) throw ConfigError("dt", "must be in (0, 0.1]");
  if (sample_every < 1) throw ConfigError("sample_every", "must be >= 1");
  if (initial_level < 1 || initial_level > n_basis) {
    throw ConfigError("initial_level", "must be in [1, n_basis]");
  }
  if (!(abort_norm_drift > 0.0)) throw ConfigError("abort_norm_drift", "must be > 0");
  if (!(truncation_guard > 0.0) || truncation_guard > 1.0) {
    throw ConfigError("truncation_guard", "must be in (0, 1]");
  }
  if (solver != SolverKind::Spectral) {
    try {
      grid.spec.validate();
    } catch (const InvalidInput& e) {
      throw ConfigError("grid", e.what());
    }
    if (grid.t_end > program.t_final) throw ConfigError("grid.t_end", "must not exceed t_final");
    if (!(std::fabs(airy_zero(initial_level)) < 0.5 * grid.spec.x_max)) {
      throw ConfigError("grid.x_max", "initial level's turning point must lie below x_max / 2");
    }
  }
  if (classical.mode != ClassicalMode::Off) {
    if (!(classical.dt > 0.0)) throw ConfigError("classical.dt", "must be > 0");
    if (classical.sample_every < 1) throw ConfigError("classical.sample_every", "must be >= 1");
    if (classical.threads < 1) throw ConfigError("classical.threads", "must be >= 1");
    if (classical.mode == ClassicalMode::BouncerEnsemble && classical.ensemble_size < 1) {
      throw ConfigError("classical.ensemble_size", "must be >= 1");
    }
  }
  for (std::size_t i = 0; i < wigner.frequencies_hz.size(); ++i) {
    if (!(wigner.frequencies_hz[i] > 0.0)) {
      throw ConfigError("wigner_snapshots.frequencies_hz[" + std::to_string(i) + "]", "must be > 0");
    }
  }
  for (std::size_t i = 0; i < wigner.times.size(); ++i) {
    if (!(wigner.times[i] >= 0.0) || wigner.times[i] > program.t_final) {
      throw ConfigError("wigner_snapshots.times[" + std::to_string(i) + "]", "must lie in [0, t_final]");
    }
  }
  if (!wigner.empty()) {
    if (solver == SolverKind::Grid) {
      throw ConfigError("wigner_snapshots", "snapshots need the spectral solver (spectral or both)");
    }
    if (!(wigner.dx > 0.0)) throw ConfigError("wigner_snapshots.dx", "must be > 0");
    if (!(wigner.x_max > 8.0 * wigner.dx)) throw ConfigError("wigner_snapshots.x_max", "must exceed 8 dx");
    if (!(wigner.p_window > 0.0)) throw ConfigError("wigner_snapshots.p_window", "must be > 0");
    if (wigner.x_stride < 1) throw ConfigError("wigner_snapshots.x_stride", "must be >= 1");
  }
}

ExperimentConfig parse_config(const json& doc) {
  Fields root(doc, "");
  ExperimentConfig c;
  if (const json* v = root.find("schema_version")) {
    if (!v->is_number_integer() || v->get<int>() != kConfigSchemaVersion) {
      throw ConfigError("schema_version", "unsupported (expected " +
                                              std::to_string(kConfigSchemaVersion) + ")");
    }
  }
  c.name = root.string("name", c.name);
  if (const json* v = root.find("constants")) {
    Fields f(*v, "constants");
    c.constants.neutron_mass = f.number("neutron_mass", c.constants.neutron_mass);
    c.constants.gravity_g = f.number("gravity_g", c.constants.gravity_g);
    c.constants.hbar = f.number("hbar", c.constants.hbar);
    f.finish();
  }
  c.program.epsilon = root.number("epsilon", 0.0, true);
  const json* sched = root.find("schedule");
  if (sched == nullptr) throw ConfigError("schedule", "is required");
  c.program.schedule = parse_schedule(*sched);
  c.program.t_final = root.number("t_final", 0.0, true);
  c.n_basis = root.integer("n_basis", c.n_basis);
  c.dt = root.number("dt", c.dt);
  c.sample_every = root.integer("sample_every", c.sample_every);
  c.initial_level = root.integer("initial_level", c.initial_level);
  c.abort_norm_drift = root.number("abort_norm_drift", c.abort_norm_drift);
  c.truncation_guard = root.number("truncation_guard", c.truncation_guard);
  c.solver = parse_solver(root.string("solver", to_string(c.solver)));
  if (const json* v = root.find("grid")) {
    Fields f(*v, "grid");
    c.grid.spec.x_max = f.number("x_max", c.grid.spec.x_max);
    c.grid.spec.n_points = f.integer("n_points", c.grid.spec.n_points);
    c.grid.spec.dt = f.number("dt", c.grid.spec.dt);
    c.grid.t_end = f.number("t_end", c.grid.t_end);
    f.finish();
  }
  if (const json* v = root.find("classical")) {
    Fields f(*v, "classical");
    c.classical.mode = parse_classical_mode(f.string("mode", "off"));
    c.classical.ensemble_size = f.integer("ensemble_size", c.classical.ensemble_size);
    c.classical.dt = f.number("dt", c.classical.dt);
    c.classical.sample_every = f.integer("sample_every", c.classical.sample_every);
    c.classical.drop_phase_correction =
        f.boolean("drop_phase_correction", c.classical.drop_phase_correction);
    c.classical.threads = f.integer("threads", c.classical.threads);
    f.finish();
  }
  if (const json* v = root.find("wigner_snapshots")) {
    Fields f(*v, "wigner_snapshots");
    c.wigner.frequencies_hz = f.numbers("frequencies_hz");
    c.wigner.times = f.numbers("times");
    c.wigner.dx = f.number("dx", c.wigner.dx);
    c.wigner.x_max = f.number("x_max", c.wigner.x_max);
    c.wigner.p_window = f.number("p_window", c.wigner.p_window);
    c.wigner.x_stride = f.integer("x_stride", c.wigner.x_stride);
    f.finish();
  }
  c.output_dir = root.string("output_dir", c.output_dir);
  root.finish();
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["name"] = c.name;
  j["constants"] = {{"neutron_mass", c.constants.neutron_mass},
                    {"gravity_g", c.constants.gravity_g},
                    {"hbar", c.constants.hbar}};
  j["epsilon"] = c.program.epsilon;
  j["schedule"] = schedule_json(c.program.schedule);
  j["t_final"] = c.program.t_final;
  j["n_basis"] = c.n_basis;
  j["dt"] = c.dt;
  j["sample_every"] = c.sample_every;
  j["initial_level"] = c.initial_level;
  j["abort_norm_drift"] = c.abort_norm_drift;
  j["truncation_guard"] = c.truncation_guard;
  j["solver"] = to_string(c.solver);
  j["grid"] = {{"x_max", c.grid.spec.x_max},
               {"n_points", c.grid.spec.n_points},
               {"dt", c.grid.spec.dt},
               {"t_end", c.grid.t_end}};
  j["classical"] = {{"mode", classical_mode_name(c.classical.mode)},
                    {"ensemble_size", c.classical.ensemble_size},
                    {"dt", c.classical.dt},
                    {"sample_every", c.classical.sample_every},
                    {"drop_phase_correction", c.classical.drop_phase_correction},
                    {"threads", c.classical.threads}};
  j["wigner_snapshots"] = {{"frequencies_hz", c.wigner.frequencies_hz},
                           {"times", c.wigner.times},
                           {"dx", c.wigner.dx},
                           {"x_max", c.wigner.x_max},
                           {"p_window", c.wigner.p_window},
                           {"x_stride", c.wigner.x_stride}};
  j["output_dir"] = c.output_dir;
  return j;
}

}  // namespace bouncer
