#include "oppsim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "oppsim/errors.hpp"
#include "oppsim/io.hpp"

namespace oppsim {
namespace {

// Scales the non-ignore mass by a log-normal factor and renormalizes; the
// ignore probability absorbs the difference.
std::vector<double> perturb_base(const std::vector<double>& base,
                                 double sigma, RngStream& stream) {
  double rest = 0.0;
  for (std::size_t i = 1; i < base.size(); ++i) {
    rest += base[i];
  }
  const double factor = stream.log_normal(0.0, sigma);
  if (rest <= 0.0 || base.size() < 2) {
    return base;
  }
  const double scaled = std::min(rest * factor, 1.0);
  std::vector<double> out(base.size());
  out[0] = 1.0 - scaled;
  for (std::size_t i = 1; i < base.size(); ++i) {
    out[i] = base[i] * (scaled / rest);
  }
  return out;
}

}  // namespace

std::vector<UserProfile> build_users(const ScenarioConfig& cfg,
                                     RngStream& stream) {
  std::vector<UserProfile> users;
  users.reserve(static_cast<std::size_t>(cfg.user_count));
  for (int u = 0; u < cfg.user_count; ++u) {
    UserProfile p;
    p.user_id = u;
    p.reactions = cfg.reaction_set;
    if (cfg.interests_max > 0) {
      const int count = static_cast<int>(
          stream.uniform_int(cfg.interests_min, cfg.interests_max));
      p.interests = sample_keywords(cfg.keyword_vocabulary, count, stream);
    }
    p.base = cfg.base_mode == BaseMode::LogNormal
                 ? perturb_base(cfg.base, cfg.base_sigma, stream)
                 : cfg.base;
    users.push_back(std::move(p));
  }
  return users;
}

void write_events_csv(const std::vector<ReceptionEvent>& log,
                      std::ostream& out) {
  out << "time,msg_id,to_node,from_node,was_duplicate\n";
  for (const auto& ev : log) {
    out << fmt_double(ev.time) << ',' << ev.msg_id << ',' << ev.to_node << ','
        << ev.from_node << ',' << (ev.was_duplicate ? 1 : 0) << '\n';
  }
}

Simulation::Simulation(ScenarioConfig cfg) : cfg_(std::move(cfg)) {}

void Simulation::set_schedule(InjectionSchedule schedule) {
  schedule_override_ = std::move(schedule);
}

void Simulation::set_homes(std::vector<Position> homes) {
  homes_override_ = std::move(homes);
}

void Simulation::set_metrics_options(MetricsOptions options) {
  metrics_options_ = options;
}

void Simulation::set_single_message(bool single) { single_message_ = single; }

const std::vector<ReceptionEvent>& Simulation::reception_log() const {
  return dissemination_->reception_log();
}

void Simulation::prepare() {
  if (prepared_) {
    throw SimError("Simulation::run may only be called once per instance");
  }

  {
    RngStream user_stream(cfg_.master_seed, "users");
    users_ = build_users(cfg_, user_stream);
  }

  if (schedule_override_.has_value()) {
    schedule_ = std::move(*schedule_override_);
  } else {
    RngStream gen_stream(cfg_.master_seed, "generator");
    schedule_ = build_schedule(cfg_, gen_stream);
  }
  if (single_message_ && schedule_.messages.size() > 1) {
    schedule_.messages.resize(1);
  }
  for (std::size_t i = 0; i < schedule_.messages.size(); ++i) {
    const Message& m = schedule_.messages[i];
    if (m.msg_id != static_cast<int>(i)) {
      throw SimError("schedule message ids must be contiguous from 0");
    }
    if (m.origin_node < 0 || m.origin_node >= cfg_.user_count) {
      throw SimError("schedule origin outside the user range");
    }
    check_message(m);
  }

  {
    RngStream pre_stream(cfg_.master_seed, "precompute");
    table_ = precompute_all(users_, schedule_.messages,
                            cfg_.visit_probability, pre_stream);
  }

  if (homes_override_.has_value() &&
      homes_override_->size() != static_cast<std::size_t>(cfg_.user_count)) {
    throw SimError("set_homes needs one position per user");
  }

  mobility_.emplace(cfg_.mobility, cfg_.area());
  nodes_.clear();
  node_streams_.clear();
  nodes_.reserve(users_.size());
  node_streams_.reserve(users_.size());
  for (int i = 0; i < cfg_.user_count; ++i) {
    node_streams_.emplace_back(cfg_.master_seed,
                               "mobility.node_" + std::to_string(i));
    nodes_.push_back(mobility_->make_state(i, node_streams_.back()));
    if (homes_override_.has_value()) {
      nodes_.back().home = (*homes_override_)[static_cast<std::size_t>(i)];
      nodes_.back().position = nodes_.back().home;
    }
  }

  dissemination_.emplace(cfg_.user_count,
                         static_cast<int>(schedule_.messages.size()));
  dissemination_->set_receive_hook(
      [this](int to, int msg, int from, SimTime now) {
        handle_reception(to, msg, from, now);
      });

  metrics_ = std::make_unique<MetricsCollector>(
      cfg_.user_count, static_cast<int>(schedule_.messages.size()),
      metrics_options_);
  prepared_ = true;
}

void Simulation::sync_node(int node, SimTime t) {
  auto& state = nodes_[static_cast<std::size_t>(node)];
  const double dt = t - state.clock;
  if (dt > 0.0) {
    mobility_->advance(state, dt, node_streams_[static_cast<std::size_t>(node)]);
  }
}

void Simulation::handle_injection(int msg_id) {
  const Message& msg = schedule_.messages[static_cast<std::size_t>(msg_id)];
  sync_node(msg.origin_node, kernel_.now());
  dissemination_->inject(msg_id, msg.origin_node, kernel_.now());
}

void Simulation::handle_reception(int to_node, int msg_id, int /*from_node*/,
                                  SimTime now) {
  const Message& msg = schedule_.messages[static_cast<std::size_t>(msg_id)];
  auto& state = nodes_[static_cast<std::size_t>(to_node)];
  const ReactionOutcome outcome =
      on_receive(users_[static_cast<std::size_t>(to_node)], msg, now,
                 state.position, table_);
  metrics_->on_outcome(outcome);

  if (const auto* flee = std::get_if<FleeDirective>(&outcome.directive)) {
    mobility_->command_flee(state, flee->center, flee->radius_m, now,
                            node_streams_[static_cast<std::size_t>(to_node)]);
  } else if (const auto* visit =
                 std::get_if<VisitDirective>(&outcome.directive)) {
    const auto departure = mobility_->command_visit(
        state, visit->addr, visit->start, visit->end, now);
    if (departure.has_value()) {
      kernel_.schedule(*departure, "visit-departure",
                       [this, to_node] { handle_visit_departure(to_node); });
    }
  }
}

void Simulation::handle_visit_departure(int node) {
  sync_node(node, kernel_.now());
  mobility_->depart_for_visit(nodes_[static_cast<std::size_t>(node)],
                              kernel_.now(),
                              node_streams_[static_cast<std::size_t>(node)]);
}

void Simulation::scan_tick(std::ofstream* trace) {
  const SimTime t = kernel_.now();
  std::vector<Position> positions(nodes_.size());
  for (int i = 0; i < cfg_.user_count; ++i) {
    sync_node(i, t);
    positions[static_cast<std::size_t>(i)] =
        nodes_[static_cast<std::size_t>(i)].position;
  }

  const auto pairs = scan_contacts(positions, cfg_.contact_radius_m);

  // Location popularity: each node credits its current cell with the number
  // of distinct neighbors it sees this tick.
  std::vector<int> degree(nodes_.size(), 0);
  for (const auto& [a, b] : pairs) {
    ++degree[static_cast<std::size_t>(a)];
    ++degree[static_cast<std::size_t>(b)];
  }
  for (int i = 0; i < cfg_.user_count; ++i) {
    mobility_->note_seen(nodes_[static_cast<std::size_t>(i)],
                         degree[static_cast<std::size_t>(i)]);
  }

  for (const auto& [a, b] : pairs) {
    dissemination_->exchange(a, b, t);
  }

  if (trace != nullptr) {
    for (const auto& n : nodes_) {
      *trace << fmt_double(t) << ',' << n.node_id << ','
             << fmt_double(n.position.x) << ',' << fmt_double(n.position.y)
             << ',' << to_string(n.mode) << '\n';
    }
  }

  const SimTime next = t + cfg_.contact_scan_interval_s;
  if (next <= cfg_.run_horizon_s) {
    kernel_.schedule(next, "contact-scan", [this, trace] { scan_tick(trace); });
  }
}

SimulationResult Simulation::run() {
  return run(std::string(), DumpOptions{});
}

SimulationResult Simulation::run(const std::string& out_dir,
                                 const DumpOptions& dumps) {
  prepare();

  std::optional<AtomicFile> trace_file;
  if (dumps.trace) {
    trace_file.emplace(out_dir + "/trace.csv");
    trace_file->stream() << "time,node_id,x,y,mode\n";
  }

  for (const auto& msg : schedule_.messages) {
    kernel_.schedule(msg.injection_time, "inject",
                     [this, id = msg.msg_id] { handle_injection(id); });
  }
  if (cfg_.contact_scan_interval_s <= cfg_.run_horizon_s) {
    std::ofstream* trace = trace_file ? &trace_file->stream() : nullptr;
    kernel_.schedule(cfg_.contact_scan_interval_s, "contact-scan",
                     [this, trace] { scan_tick(trace); });
  }

  const std::size_t dispatched = kernel_.run_until(cfg_.run_horizon_s);
  for (int i = 0; i < cfg_.user_count; ++i) {
    sync_node(i, cfg_.run_horizon_s);
  }

  for (const auto& ev : dissemination_->reception_log()) {
    metrics_->on_reception(ev);
  }

  SimulationResult result;
  result.summary = metrics_->finalize(table_, schedule_.messages);
  result.user_count = cfg_.user_count;
  result.message_count = static_cast<int>(schedule_.messages.size());
  result.dispatched_events = dispatched;

  if (trace_file) {
    trace_file->commit();
  }
  if (dumps.events) {
    AtomicFile f(out_dir + "/events.csv");
    write_events_csv(dissemination_->reception_log(), f.stream());
    f.commit();
  }
  if (dumps.precompute) {
    AtomicFile f(out_dir + "/precompute.csv");
    table_.write_csv(f.stream());
    f.commit();
  }
  if (dumps.schedule) {
    AtomicFile f(out_dir + "/schedule.csv");
    write_schedule_csv(schedule_, f.stream());
    f.commit();
  }
  return result;
}

}  // namespace oppsim
