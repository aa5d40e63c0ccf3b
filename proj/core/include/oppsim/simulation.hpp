#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "oppsim/dissemination.hpp"
#include "oppsim/generator.hpp"
#include "oppsim/kernel.hpp"
#include "oppsim/metrics.hpp"
#include "oppsim/mobility.hpp"
#include "oppsim/model.hpp"
#include "oppsim/reaction.hpp"
#include "oppsim/rng.hpp"
#include "oppsim/scenario.hpp"

namespace oppsim {

struct DumpOptions {
  bool events = false;      // events.csv - one row per reception
  bool trace = false;       // trace.csv - node positions at every scan tick
  bool precompute = false;  // precompute.csv - the reaction table
  bool schedule = false;    // schedule.csv - the injected messages
};

struct SimulationResult {
  SummaryReport summary;
  int user_count = 0;
  int message_count = 0;
  std::size_t dispatched_events = 0;
};

// One seeded replication: materializes users, pre-draws the message schedule,
// precomputes all reactions, then drives injections, mobility, contact scans
// and epidemic exchanges through the event kernel.
//
// Named RNG streams ("users", "generator", "precompute", "mobility.node_<i>")
// keep the subsystems decoupled: extra draws in one never shift another.
class Simulation {
 public:
  explicit Simulation(ScenarioConfig cfg);

  // Hooks for experiments and tests; call before run().
  void set_schedule(InjectionSchedule schedule);
  void set_homes(std::vector<Position> homes);
  void set_metrics_options(MetricsOptions options);
  // Truncates the schedule to its earliest message (--single-emergency).
  void set_single_message(bool single);

  SimulationResult run();
  SimulationResult run(const std::string& out_dir, const DumpOptions& dumps);

  // Post-run introspection.
  const ScenarioConfig& config() const { return cfg_; }
  const std::vector<UserProfile>& users() const { return users_; }
  const std::vector<Message>& messages() const { return schedule_.messages; }
  const PrecomputedTable& table() const { return table_; }
  const std::vector<MobilityState>& nodes() const { return nodes_; }
  const std::vector<ReceptionEvent>& reception_log() const;
  const MetricsCollector& metrics() const { return *metrics_; }

 private:
  void prepare();
  void sync_node(int node, SimTime t);
  void handle_injection(int msg_id);
  void handle_reception(int to_node, int msg_id, int from_node, SimTime now);
  void handle_visit_departure(int node);
  void scan_tick(std::ofstream* trace);

  ScenarioConfig cfg_;
  bool prepared_ = false;
  bool single_message_ = false;
  MetricsOptions metrics_options_;
  std::optional<InjectionSchedule> schedule_override_;
  std::optional<std::vector<Position>> homes_override_;

  EventQueue kernel_;
  std::vector<UserProfile> users_;
  InjectionSchedule schedule_;
  PrecomputedTable table_;
  std::optional<Mobility> mobility_;
  std::vector<MobilityState> nodes_;
  std::vector<RngStream> node_streams_;
  std::optional<Dissemination> dissemination_;
  std::unique_ptr<MetricsCollector> metrics_;
};

// Users with interests and base reaction probabilities drawn per the
// scenario's base_distribution rule, from the "users" stream.
std::vector<UserProfile> build_users(const ScenarioConfig& cfg,
                                     RngStream& stream);

void write_events_csv(const std::vector<ReceptionEvent>& log,
                      std::ostream& out);

}  // namespace oppsim
