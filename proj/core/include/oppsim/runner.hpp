#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "oppsim/simulation.hpp"

namespace oppsim {

// Exit codes shared by the runner and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUserError = 2;
inline constexpr int kExitIoError = 3;

struct RunManifest {
  std::string preset;         // builtin name, or
  std::string scenario_path;  // scenario file (exactly one of the two)
  std::uint64_t seed = 1;
  int reps = 1;
  std::string out_dir = "out";
  DumpOptions dumps;
  std::optional<int> users_override;
  std::optional<double> horizon_override;
  bool single_emergency = false;
  bool exclude_self_reception = false;
};

// Loads the preset or scenario file and applies the overrides. Throws
// SimError / IoError.
ScenarioConfig manifest_scenario(const RunManifest& manifest);

// Executes reps replications with seeds seed, seed+1, ... into
// out_dir/rep-<k>/ and writes the cross-replication aggregate. Returns an
// exit code; failures are printed to err.
int run_manifest(const RunManifest& manifest, std::ostream& out,
                 std::ostream& err);

// Prints violations; 0 when the file is a valid scenario.
int validate_file(const std::string& path, std::ostream& out,
                  std::ostream& err);

// Writes the preset's scenario file.
int dump_preset(const std::string& name, const std::string& path,
                std::ostream& err);

// Serialized forms (stable field names, see README).
std::string summary_json(const SummaryReport& report,
                         const ScenarioConfig& cfg, int message_count);
std::string summary_table(const SummaryReport& report);
std::string per_user_csv(const SummaryReport& report);
std::string aggregate_json(const std::vector<SummaryReport>& reports,
                           const RunManifest& manifest);

// Two-sided 95% Student-t quantile, used for the replication CIs.
double student_t_975(int dof);

}  // namespace oppsim
