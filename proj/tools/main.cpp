#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "bouncer/acceptance.hpp"
#include "bouncer/config.hpp"
#include "bouncer/runner.hpp"

namespace {

constexpr int kExitFailedChecks = 1;
constexpr int kExitBadConfig = 2;

bouncer::ExperimentConfig resolve_config(const std::string& preset, const std::string& path) {
  if (!path.empty()) return bouncer::load_config(path);
  return bouncer::load_config(bouncer::preset_path(preset));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Autoresonant excitation of the gravitational quantum bouncer"};
  app.set_version_flag("--version", bouncer::code_version());
  app.require_subcommand(1);

  std::string preset, config_path, out_dir, solver;
  bool quiet = false;
  double t_max = 0.0;
  bool eigenbasis_only = false;

  const std::string preset_help = "checked-in preset: fig1, fig2, fig3 or threshold-demo";
  auto* run = app.add_subcommand("run", "run one experiment and write its artifacts");
  auto* run_preset = run->add_option("--preset", preset, preset_help)
                         ->check(CLI::IsMember(bouncer::preset_names()));
  auto* run_config = run->add_option("--config", config_path, "JSON config file");
  run_preset->excludes(run_config);
  run->add_option("--out", out_dir, "output directory (default: config output_dir, then $BOUNCER_OUT_DIR/<name>)");
  run->add_option("--solver", solver, "override the config's solver")
      ->check(CLI::IsMember({"spectral", "grid", "both"}));
  run->add_flag("--quiet", quiet, "no progress messages");

  auto* verify = app.add_subcommand(
      "verify", "run the acceptance suite, or the checks that apply to one config");
  auto* ver_preset = verify->add_option("--preset", preset, preset_help)
                         ->check(CLI::IsMember(bouncer::preset_names()));
  auto* ver_config = verify->add_option("--config", config_path, "JSON config file");
  ver_preset->excludes(ver_config);
  verify->add_option("--t-max", t_max, "truncate the config's run at this scaled time");
  verify->add_flag("--eigenbasis", eigenbasis_only, "only the eigenbasis reference checks");
  verify->add_flag("--quiet", quiet, "only the pass/fail line per criterion");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (preset.empty() && config_path.empty()) {
        std::cerr << "run: one of --preset or --config is required\n";
        return kExitBadConfig;
      }
      bouncer::ExperimentConfig config = resolve_config(preset, config_path);
      if (!solver.empty()) {
        config.solver = bouncer::parse_solver(solver);
        config.validate();
      }
      // The manifest records the config as given, so the output location is
      // kept out of it and identical configs give identical files anywhere.
      bouncer::RunOptions options;
      if (!out_dir.empty()) {
        options.out_dir = out_dir;
      } else if (!config.output_dir.empty()) {
        options.out_dir = config.output_dir;
      } else {
        options.out_dir = bouncer::default_output_dir() / config.name;
      }
      options.log = quiet ? nullptr : &std::cerr;
      const bouncer::RunReport report = bouncer::run_experiment(config, options);
      if (!quiet) {
        std::cerr << (report.partial ? "partial results in " : "results in ") << options.out_dir.string() << '\n';
      }
      if (report.partial) std::cerr << "error: " << report.message << '\n';
      return report.exit_code;
    }

    bool ok = true;
    if (eigenbasis_only) {
      const auto r = bouncer::verify_eigenbasis();
      bouncer::print_result(std::cout, r, !quiet);
      ok = r.pass();
    } else if (!preset.empty() || !config_path.empty()) {
      const auto r = bouncer::verify_config(resolve_config(preset, config_path), t_max);
      bouncer::print_result(std::cout, r, !quiet);
      ok = r.pass();
    } else {
      for (const auto& r : bouncer::run_acceptance()) {
        bouncer::print_result(std::cout, r, !quiet);
        std::cout.flush();
        ok = ok && r.pass();
      }
    }
    return ok ? 0 : kExitFailedChecks;
  } catch (const bouncer::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}
