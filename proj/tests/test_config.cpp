#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "bouncer/config.hpp"
#include "bouncer/runner.hpp"

using namespace bouncer;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json small_doc() {
  return json::parse(R"({
    "schema_version": 1,
    "name": "small",
    "epsilon": 0.228,
    "schedule": {"type": "optimal-chirp", "omega0": 1.205, "q": 0.5},
    "t_final": 8.0,
    "n_basis": 12,
    "dt": 0.002,
    "sample_every": 250,
    "solver": "both",
    "grid": {"x_max": 40.0, "n_points": 511, "dt": 0.002},
    "classical": {"mode": "single-resonance", "sample_every": 500},
    "wigner_snapshots": {"times": [4.0], "dx": 0.05, "x_max": 24.0, "x_stride": 8}
  })");
}

std::string field_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bouncer-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("every preset parses and validates") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const ExperimentConfig c = load_config(preset_path(name));
    CHECK(c.name == name);
    CHECK_NOTHROW(c.validate());
    CHECK(c.program.epsilon == 0.228);
  }
  const ExperimentConfig fig2 = load_config(preset_path("fig2"));
  CHECK(fig2.wigner.frequencies_hz == std::vector<double>{338.0, 248.0, 136.0});
  CHECK(load_config(preset_path("fig3")).classical.mode == ClassicalMode::BouncerEnsemble);
  CHECK(load_config(preset_path("threshold-demo")).classical.mode == ClassicalMode::SingleResonance);
  CHECK_THROWS_AS(preset_path("fig9"), InvalidInput);
}

TEST_CASE("errors name the offending field") {
  json d = small_doc();
  d.erase("epsilon");
  CHECK(field_of(d) == "epsilon");

  d = small_doc();
  d["epsilom"] = 0.2;
  CHECK(field_of(d) == "epsilom");

  d = small_doc();
  d["n_basis"] = "forty";
  CHECK(field_of(d) == "n_basis");

  d = small_doc();
  d["schedule"]["type"] = "exponential";
  CHECK(field_of(d) == "schedule.type");

  d = small_doc();
  d["schedule"]["q"] = 0.0;
  CHECK(field_of(d) == "schedule.q");

  d = small_doc();
  d["grid"]["n_points"] = 1.5;
  CHECK(field_of(d) == "grid.n_points");

  d = small_doc();
  d["wigner_snapshots"]["dx"] = -0.1;
  CHECK(field_of(d) == "wigner_snapshots.dx");

  d = small_doc();
  d["solver"] = "grid";
  CHECK(field_of(d) == "wigner_snapshots");

  d = small_doc();
  d["schema_version"] = 2;
  CHECK(field_of(d) == "schema_version");

  d = small_doc();
  d["classical"]["mode"] = "quantum";
  CHECK(field_of(d) == "classical.mode");

  CHECK(field_of(small_doc()) == "<no error>");
  CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), InvalidInput);
}

TEST_CASE("resolved config round-trips") {
  const ExperimentConfig c = parse_config(small_doc());
  const nlohmann::ordered_json resolved = to_json(c);
  const ExperimentConfig again = parse_config(json::parse(resolved.dump()));
  CHECK(to_json(again).dump() == resolved.dump());
  CHECK(resolved["abort_norm_drift"] == 1e-4);
  CHECK(resolved["classical"]["ensemble_size"] == 100);
  CHECK(parse_solver("both") == SolverKind::Both);
  CHECK(to_string(SolverKind::Grid) == "grid");
  CHECK_THROWS_AS(parse_solver("exact"), InvalidInput);
}

TEST_CASE("identical configs give byte-identical outputs") {
  const ExperimentConfig c = parse_config(small_doc());
  const fs::path a = scratch("det-a"), b = scratch("det-b");
  const RunReport ra = run_experiment(c, {a, nullptr});
  const RunReport rb = run_experiment(c, {b, nullptr});
  CHECK(ra.exit_code == 0);
  CHECK_FALSE(ra.partial);
  CHECK(ra.files == rb.files);
  for (const char* f : {"manifest.json", "observables.csv", "classical.csv", "wigner_1.json"}) {
    CAPTURE(f);
    CHECK(fs::exists(a / f));
  }
  for (const auto& f : ra.files) {
    CAPTURE(f);
    CHECK(slurp(a / f) == slurp(b / f));
  }
  const json m = json::parse(slurp(a / "manifest.json"));
  CHECK(m["schema_version"] == kManifestSchemaVersion);
  CHECK(m["code_version"] == code_version());
  CHECK(m["partial"] == false);
  CHECK(m["config"]["name"] == "small");
  // Both solvers write rows.
  const std::string obs = slurp(a / "observables.csv");
  CHECK(obs.find("\nspectral,") != std::string::npos);
  CHECK(obs.find("\ngrid,") != std::string::npos);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("solver abort writes a partial run") {
  json d = small_doc();
  d["n_basis"] = 3;
  d["t_final"] = 60.0;
  d["solver"] = "spectral";
  d.erase("grid");
  d.erase("wigner_snapshots");
  const fs::path out = scratch("partial");
  const RunReport r = run_experiment(parse_config(d), {out, nullptr});
  CHECK(r.exit_code == 3);
  CHECK(r.partial);
  CHECK(r.message.find("top level") != std::string::npos);
  const json m = json::parse(slurp(out / "manifest.json"));
  CHECK(m["partial"] == true);
  CHECK(m["abort_reason"].get<std::string>().find("top level") != std::string::npos);
  CHECK(fs::file_size(out / "observables.csv") > 0);
  fs::remove_all(out);
}

TEST_CASE("a snapshot frequency the sweep never reaches is a config error") {
  json d = small_doc();
  d["wigner_snapshots"] = {{"frequencies_hz", {500.0}}};
  try {
    run_experiment(parse_config(d), {scratch("unreachable"), nullptr});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "wigner_snapshots.frequencies_hz[0]");
  }
  fs::remove_all(scratch("unreachable"));
}

TEST_CASE("environment overrides") {
  ::setenv("BOUNCER_OUT_DIR", "/tmp/elsewhere", 1);
  CHECK(default_output_dir() == fs::path("/tmp/elsewhere"));
  ::unsetenv("BOUNCER_OUT_DIR");
  CHECK(default_output_dir() == fs::path("bouncer-out"));
}
