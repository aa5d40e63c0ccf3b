#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "oppsim/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"oppsim - opportunistic network simulator with reactive users"};
  app.require_subcommand(1);

  oppsim::RunManifest manifest;
  auto* run = app.add_subcommand("run", "Run a scenario");
  auto* preset_opt =
      run->add_option("--preset", manifest.preset,
                      "Builtin scenario: jodel, city-events, emergency");
  run->add_option("--scenario", manifest.scenario_path, "Scenario file")
      ->excludes(preset_opt);
  run->add_option("--seed", manifest.seed, "Master seed (replication k uses seed+k)");
  run->add_option("--reps", manifest.reps, "Number of replications")
      ->check(CLI::PositiveNumber);
  run->add_option("-o,--out", manifest.out_dir, "Output directory");
  int users = 0;
  auto* users_opt =
      run->add_option("--users", users, "Override the scenario user count");
  double horizon = 0.0;
  auto* horizon_opt = run->add_option("--horizon", horizon,
                                      "Override the run horizon (seconds)");
  run->add_flag("--dump-events", manifest.dumps.events,
                "Write events.csv (one row per reception)");
  run->add_flag("--dump-trace", manifest.dumps.trace,
                "Write trace.csv (positions at every contact scan)");
  run->add_flag("--dump-precompute", manifest.dumps.precompute,
                "Write precompute.csv (the reaction table)");
  run->add_flag("--dump-schedule", manifest.dumps.schedule,
                "Write schedule.csv (the injected messages)");
  run->add_flag("--single-emergency", manifest.single_emergency,
                "Keep only the earliest message of the schedule");
  run->add_flag("--exclude-self-reception", manifest.exclude_self_reception,
                "Drop the origin's own reception from the metrics");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Validate a scenario file");
  validate->add_option("file", validate_path, "Scenario file")->required();

  std::string preset_name;
  std::string preset_path;
  auto* dump =
      app.add_subcommand("dump-preset", "Write a builtin preset to a file");
  dump->add_option("name", preset_name, "Preset name")->required();
  dump->add_option("file", preset_path, "Destination file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return oppsim::kExitUserError;
  }

  try {
    if (run->parsed()) {
      if (users_opt->count() > 0) {
        manifest.users_override = users;
      }
      if (horizon_opt->count() > 0) {
        manifest.horizon_override = horizon;
      }
      return oppsim::run_manifest(manifest, std::cout, std::cerr);
    }
    if (validate->parsed()) {
      return oppsim::validate_file(validate_path, std::cout, std::cerr);
    }
    return oppsim::dump_preset(preset_name, preset_path, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return oppsim::kExitIoError;
  }
}
