// Acceptance suite: each criterion runs standalone and prints one PASS/FAIL
// line. `oppsim_acceptance` runs all of them; `oppsim_acceptance 3 7` runs a
// subset. Exit code 0 iff everything passed.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "oppsim/io.hpp"
#include "oppsim/runner.hpp"
#include "oppsim/simulation.hpp"

using namespace oppsim;

namespace {

std::vector<std::string> g_failures;

#define REQ(cond, ...)                                               \
  do {                                                               \
    if (!(cond)) {                                                   \
      char _buf[512];                                                \
      std::snprintf(_buf, sizeof(_buf), __VA_ARGS__);                \
      g_failures.push_back(std::string(#cond) + " -- " + _buf);      \
      return false;                                                  \
    }                                                                \
  } while (0)

std::string work_dir(const std::string& tag) {
  const auto dir =
      std::filesystem::temp_directory_path() / ("oppsim_acceptance_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// 1. Reaction-law fidelity at lb = 0, 50, 100.
bool criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> base{0.90, 0.095, 0.005};
  const int draws = 100000;

  const auto frequencies = [&](double lb, RngStream& s) {
    std::vector<double> f(3, 0.0);
    for (int i = 0; i < draws; ++i) {
      f[static_cast<std::size_t>(draw_reaction(base, lb, s))] += 1.0;
    }
    for (auto& x : f) {
      x /= draws;
    }
    return f;
  };

  RngStream s(1001, "acceptance.reaction");
  const auto f0 = frequencies(0.0, s);
  REQ(std::fabs(f0[0] - 0.90) <= 0.005, "lb=0 ignore freq %.4f", f0[0]);
  REQ(std::fabs(f0[1] - 0.095) <= 0.005, "lb=0 vote freq %.4f", f0[1]);
  REQ(std::fabs(f0[2] - 0.005) <= 0.005, "lb=0 save freq %.4f", f0[2]);

  const auto f50 = frequencies(50.0, s);
  REQ(std::fabs(f50[0] - 0.80) <= 0.005, "lb=50 ignore freq %.4f", f50[0]);
  REQ(std::fabs(f50[1] - 0.19) <= 0.005, "lb=50 vote freq %.4f", f50[1]);
  REQ(std::fabs(f50[2] - 0.01) <= 0.005, "lb=50 save freq %.4f", f50[2]);

  const auto f100 = frequencies(100.0, s);
  REQ(f100[2] == 1.0, "lb=100 strongest freq %.6f", f100[2]);

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  REQ(elapsed < 5.0, "took %.2f s", elapsed);
  return true;
}

// ---------------------------------------------------------------------------
// 2. Clamp correctness: pop + 100k/l >= 100 always yields the strongest
//    reaction, across 1000 parameter triples x 100 draws.
bool criterion_2() {
  std::vector<std::string> vocab;
  for (int i = 0; i < 10; ++i) {
    vocab.push_back("k" + std::to_string(i));
  }
  const std::vector<double> base{0.80, 0.15, 0.045, 0.005};

  std::vector<std::array<int, 3>> triples;
  for (int pop = 0; pop <= 100 && triples.size() < 1000; pop += 1) {
    for (int l = 1; l <= 10 && triples.size() < 1000; ++l) {
      for (int k = 0; k <= l && triples.size() < 1000; ++k) {
        if (pop + 100.0 * k / l >= 100.0) {
          triples.push_back({pop, k, l});
        }
      }
    }
  }
  REQ(triples.size() == 1000, "only %zu clamped triples", triples.size());

  RngStream s(1002, "acceptance.clamp");
  for (const auto& [pop, k, l] : triples) {
    UserProfile u;
    u.user_id = 0;
    u.base = base;
    u.reactions.labels = {"a", "b", "c", "d"};
    for (int i = 0; i < k; ++i) {
      u.interests.push_back(vocab[static_cast<std::size_t>(i)]);
    }
    Message m;
    m.popularity = pop;
    for (int i = 0; i < l; ++i) {
      m.keywords.push_back(vocab[static_cast<std::size_t>(i)]);
    }
    const double lb = reaction_lower_bound(m, u);
    REQ(lb == 100.0, "pop=%d k=%d l=%d lb=%.3f", pop, k, l, lb);
    for (int d = 0; d < 100; ++d) {
      const int idx = draw_reaction(u.base, lb, s);
      REQ(idx == 3, "pop=%d k=%d l=%d drew %d", pop, k, l, idx);
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 3. Emergency end-to-end: on-time receivers inside the radius end the run
//    outside it and all in-time receivers react maximally.
bool criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();

  ScenarioConfig cfg = builtin_scenario("emergency");
  cfg.user_count = 200;
  cfg.run_horizon_s = 7200.0;
  cfg.master_seed = 77;

  Simulation sim(cfg);
  sim.set_single_message(true);
  const SimulationResult res = sim.run();
  REQ(res.message_count == 1, "expected a single emergency, got %d",
      res.message_count);
  const Message& alert = sim.messages()[0];
  const Position center = *alert.event_addr;
  const double radius = *alert.danger_radius_m;

  // Every in-time receiver reacts maximally (read&run), per popularity 100.
  long receivers = 0;
  for (const auto& ev : sim.reception_log()) {
    if (ev.was_duplicate) continue;
    ++receivers;
    REQ(sim.table().at(ev.to_node, 0).reaction_index == 1,
        "node %d did not react maximally", ev.to_node);
  }
  REQ(receivers > 100, "message spread to only %ld nodes", receivers);

  // Nodes that received inside the zone carry it in their avoidance memory;
  // all of them must end the run outside the radius.
  long fled = 0;
  for (const auto& node : sim.nodes()) {
    if (node.avoided_zones.empty()) continue;
    ++fled;
    const double d = distance(node.position, center);
    REQ(d >= radius - 1e-6, "node %d ended inside the zone (%.1f < %.1f)",
        node.node_id, d, radius);
  }
  REQ(fled >= 3, "only %ld nodes received inside the zone", fled);

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  REQ(elapsed < 30.0, "took %.2f s", elapsed);
  return true;
}

// ---------------------------------------------------------------------------
// 4. Angry bit: a relay chain that delivers an event message after event_end
//    produces exactly one angry outcome, counted as a delivery failure.
bool criterion_4() {
  ScenarioConfig cfg = builtin_scenario("jodel");
  cfg.name = "relay3";
  cfg.user_count = 3;
  cfg.area_width_m = 500.0;
  cfg.area_height_m = 500.0;
  cfg.run_horizon_s = 14400.0;
  cfg.contact_radius_m = 80.0;
  cfg.visit_probability = 0.0;  // keep mobility independent of receptions
  cfg.master_seed = 1;

  const std::vector<Position> homes{{100.0, 250.0}, {250.0, 250.0},
                                    {400.0, 250.0}};

  const auto run_phase = [&](std::optional<SimTime> event_end) {
    Message m;
    m.msg_id = 0;
    m.popularity = 100;  // everyone precomputes to the maximal reaction
    m.injection_time = 0.0;
    m.origin_node = 0;
    if (event_end.has_value()) {
      m.event_start = 1.0;
      m.event_end = *event_end;
      m.event_addr = Position{250.0, 250.0};
    }
    InjectionSchedule schedule;
    schedule.messages.push_back(m);

    auto sim = std::make_unique<Simulation>(cfg);
    sim->set_schedule(schedule);
    sim->set_homes(homes);
    sim->run();
    return sim;
  };

  // Phase 1: no window; learn when the two relays first receive.
  auto probe = run_phase(std::nullopt);
  std::map<int, SimTime> first;
  for (const auto& ev : probe->reception_log()) {
    if (!ev.was_duplicate && !first.count(ev.to_node)) {
      first[ev.to_node] = ev.time;
    }
  }
  REQ(first.size() == 3, "message reached only %zu of 3 nodes", first.size());
  std::vector<std::pair<SimTime, int>> order;
  for (const auto& [node, t] : first) {
    order.emplace_back(t, node);
  }
  std::sort(order.begin(), order.end());
  const SimTime t_mid_receiver = order[1].first;
  const SimTime t_last = order[2].first;
  const int last_node = order[2].second;
  REQ(t_mid_receiver < t_last,
      "need strictly ordered receptions, got %.1f and %.1f", t_mid_receiver,
      t_last);

  // Phase 2: same run, but the event ends between those two receptions.
  // Receptions don't influence mobility here, so the timeline replays.
  const SimTime cut = (t_mid_receiver + t_last) / 2.0;
  auto sim = run_phase(cut);
  std::map<int, SimTime> first2;
  for (const auto& ev : sim->reception_log()) {
    if (!ev.was_duplicate && !first2.count(ev.to_node)) {
      first2[ev.to_node] = ev.time;
    }
  }
  REQ(first2 == first, "reception timeline changed between phases");
  for (const auto& ev : sim->reception_log()) {
    if (!ev.was_duplicate && ev.to_node == last_node) {
      REQ(ev.from_node != 0 && ev.from_node != last_node,
          "late delivery did not travel the relay chain (from %d)",
          ev.from_node);
    }
  }

  const SummaryReport& r = sim->metrics().finalize(sim->table(),
                                                   sim->messages());
  REQ(r.angry_count == 1, "angry_count = %lld", r.angry_count);
  const DeliveryRecord late =
      sim->metrics().record(last_node, sim->messages()[0]);
  REQ(late.angry, "late receiver not marked angry");
  REQ(!late.reacted_above_ignore, "angry pair counted as success");
  REQ(r.wanted_pairs == 3, "wanted pairs %lld", r.wanted_pairs);
  REQ(r.successful_pairs == 2, "successful pairs %lld", r.successful_pairs);
  REQ(r.delivery_rate.has_value() && *r.delivery_rate == 2.0 / 3.0,
      "delivery rate not 2/3");
  return true;
}

// ---------------------------------------------------------------------------
// 5. Scheduled-visit punctuality: with visit_probability 1 and a feasible
//    event, every maximal-reaction receiver stands within 1 m of the address
//    inside [start, end], verified from the waypoint trace.
bool criterion_5() {
  ScenarioConfig cfg = builtin_scenario("city-events");
  cfg.name = "punctual";
  cfg.user_count = 150;
  cfg.area_width_m = 500.0;
  cfg.area_height_m = 500.0;
  cfg.run_horizon_s = 10800.0;
  cfg.contact_radius_m = 50.0;
  cfg.visit_probability = 1.0;
  cfg.master_seed = 12;

  const Position addr{250.0, 250.0};
  const SimTime start = 4000.0;
  const SimTime end = 10000.0;

  Message m;
  m.msg_id = 0;
  m.popularity = 100;  // maximal for everyone
  m.injection_time = 0.0;
  m.origin_node = 0;
  m.event_start = start;
  m.event_end = end;
  m.event_addr = addr;
  InjectionSchedule schedule;
  schedule.messages.push_back(m);

  const std::string dir = work_dir("punctuality");
  DumpOptions dumps;
  dumps.trace = true;
  dumps.precompute = true;

  Simulation sim(cfg);
  sim.set_schedule(schedule);
  sim.run(dir, dumps);

  // Everybody received it in time and decided to visit.
  std::map<int, SimTime> first;
  for (const auto& ev : sim.reception_log()) {
    if (!ev.was_duplicate && !first.count(ev.to_node)) {
      first[ev.to_node] = ev.time;
    }
  }
  REQ(first.size() == 150, "message reached only %zu of 150 nodes",
      first.size());
  for (const auto& [node, t] : first) {
    REQ(t < start - 600.0, "node %d received too late (%.0f)", node, t);
    const auto pre = sim.table().at(node, 0);
    REQ(pre.reaction_index == sim.users()[0].reactions.max_index(),
        "node %d not maximal", node);
    REQ(pre.will_visit.value_or(false), "node %d has no visit decision", node);
  }

  // Scan the trace for presence at the address inside the window.
  std::vector<bool> present(150, false);
  for (const auto& row : read_csv(dir + "/trace.csv")) {
    const double t = parse_double(row[0]);
    if (t < start || t > end) continue;
    const int node = static_cast<int>(parse_int(row[1]));
    const Position p{parse_double(row[2]), parse_double(row[3])};
    if (distance(p, addr) <= 1.0) {
      present[static_cast<std::size_t>(node)] = true;
    }
  }
  for (int node = 0; node < 150; ++node) {
    REQ(present[static_cast<std::size_t>(node)],
        "node %d never stood within 1 m of the event", node);
  }
  return true;
}

// ---------------------------------------------------------------------------
// 6. Metrics oracle: recompute every summary figure from the raw dumps and
//    compare exactly against summary.json.
bool criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string dir = work_dir("oracle");

  RunManifest manifest;
  manifest.preset = "jodel";
  manifest.seed = 31;
  manifest.users_override = 200;
  manifest.horizon_override = 21600.0;
  manifest.out_dir = dir;
  manifest.dumps.events = true;
  manifest.dumps.precompute = true;
  manifest.dumps.schedule = true;
  std::ostringstream out;
  std::ostringstream err;
  REQ(run_manifest(manifest, out, err) == 0, "run failed: %s",
      err.str().c_str());

  const std::string rep = dir + "/rep-0";
  const auto events = read_csv(rep + "/events.csv");
  const auto precomp = read_csv(rep + "/precompute.csv");
  const auto sched = read_csv(rep + "/schedule.csv");
  const auto summary = nlohmann::json::parse(read_file(rep + "/summary.json"));

  const int users = 200;
  const int msgs = static_cast<int>(sched.size());
  REQ(msgs == summary["messages"].get<int>(), "message count mismatch");

  // Raw tables.
  std::vector<double> injection(static_cast<std::size_t>(msgs), 0.0);
  std::vector<std::optional<double>> event_end(static_cast<std::size_t>(msgs));
  for (const auto& row : sched) {
    const auto id = static_cast<std::size_t>(parse_int(row[1]));
    injection[id] = parse_double(row[0]);
    if (!row[6].empty()) {
      event_end[id] = parse_double(row[6]);
    }
  }
  std::vector<int> reaction(static_cast<std::size_t>(users) *
                                static_cast<std::size_t>(msgs),
                            0);
  for (const auto& row : precomp) {
    const auto u = static_cast<std::size_t>(parse_int(row[0]));
    const auto m = static_cast<std::size_t>(parse_int(row[1]));
    reaction[u * static_cast<std::size_t>(msgs) + m] =
        static_cast<int>(parse_int(row[2]));
  }
  constexpr double kNever = -1.0;
  std::vector<double> first(static_cast<std::size_t>(users) *
                                static_cast<std::size_t>(msgs),
                            kNever);
  std::vector<long long> receptions(static_cast<std::size_t>(users), 0);
  long long duplicates = 0;
  for (const auto& row : events) {
    const double t = parse_double(row[0]);
    const auto m = static_cast<std::size_t>(parse_int(row[1]));
    const auto to = static_cast<std::size_t>(parse_int(row[2]));
    const bool dup = row[4] == "1";
    receptions[to] += 1;
    duplicates += dup ? 1 : 0;
    auto& slot = first[to * static_cast<std::size_t>(msgs) + m];
    if (!dup && slot == kNever) {
      slot = t;
    }
  }

  // Brute-force recount, mirroring the documented aggregation order
  // (user-major, ascending message id; global delays sorted ascending).
  long long wanted = 0;
  long long successful = 0;
  long long angry = 0;
  std::vector<double> delays;
  std::vector<long long> user_successful(static_cast<std::size_t>(users), 0);
  std::vector<double> user_delay_sum(static_cast<std::size_t>(users), 0.0);
  std::vector<long long> user_delay_n(static_cast<std::size_t>(users), 0);
  for (int u = 0; u < users; ++u) {
    for (int m = 0; m < msgs; ++m) {
      const auto idx = static_cast<std::size_t>(u) *
                           static_cast<std::size_t>(msgs) +
                       static_cast<std::size_t>(m);
      const bool want = reaction[idx] > 0;
      wanted += want ? 1 : 0;
      const double t = first[idx];
      if (t == kNever) continue;
      const bool on_time =
          !event_end[static_cast<std::size_t>(m)].has_value() ||
          t <= *event_end[static_cast<std::size_t>(m)];
      if (!on_time) {
        ++angry;
      } else if (want) {
        ++successful;
        ++user_successful[static_cast<std::size_t>(u)];
        const double d = t - injection[static_cast<std::size_t>(m)];
        delays.push_back(d);
        user_delay_sum[static_cast<std::size_t>(u)] += d;
        user_delay_n[static_cast<std::size_t>(u)] += 1;
      }
    }
  }

  REQ(wanted == summary["delivery"]["wanted_pairs"].get<long long>(),
      "wanted %lld vs %lld", wanted,
      summary["delivery"]["wanted_pairs"].get<long long>());
  REQ(successful == summary["delivery"]["successful_pairs"].get<long long>(),
      "successful mismatch");
  REQ(angry == summary["angry_count"].get<long long>(), "angry mismatch");
  const double rate = static_cast<double>(successful) /
                      static_cast<double>(wanted);
  REQ(rate == summary["delivery"]["rate"].get<double>(), "rate mismatch");
  const double rate_all =
      static_cast<double>(successful) /
      (static_cast<double>(users) * static_cast<double>(msgs));
  REQ(rate_all == summary["delivery"]["rate_all_pairs"].get<double>(),
      "rate_all_pairs mismatch");

  std::sort(delays.begin(), delays.end());
  double delay_sum = 0.0;
  for (double d : delays) {
    delay_sum += d;
  }
  const auto nearest_rank = [&](const std::vector<double>& sorted, double p) {
    auto rank = static_cast<std::size_t>(
        std::ceil(p / 100.0 * static_cast<double>(sorted.size())));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
  };
  REQ(static_cast<long long>(delays.size()) ==
          summary["delay"]["count"].get<long long>(),
      "delay count mismatch");
  REQ(delay_sum / static_cast<double>(delays.size()) ==
          summary["delay"]["mean_s"].get<double>(),
      "delay mean mismatch");
  REQ(nearest_rank(delays, 50.0) == summary["delay"]["median_s"].get<double>(),
      "delay median mismatch");
  REQ(nearest_rank(delays, 95.0) == summary["delay"]["p95_s"].get<double>(),
      "delay p95 mismatch");

  // Per-user series, then the fairness figures.
  std::vector<double> succ_series;
  std::vector<double> delay_series;
  std::vector<double> overhead_series;
  double overhead_sum = 0.0;
  long long overhead_n = 0;
  long long total_receptions = 0;
  for (int u = 0; u < users; ++u) {
    const auto ui = static_cast<std::size_t>(u);
    succ_series.push_back(static_cast<double>(user_successful[ui]));
    total_receptions += receptions[ui];
    if (user_successful[ui] > 0) {
      const double oh = 100.0 * static_cast<double>(receptions[ui]) /
                        static_cast<double>(user_successful[ui]);
      overhead_series.push_back(oh);
      overhead_sum += oh;
      ++overhead_n;
      delay_series.push_back(user_delay_sum[ui] /
                             static_cast<double>(user_delay_n[ui]));
    }
  }
  REQ(total_receptions == summary["receptions_total"].get<long long>(),
      "receptions mismatch");
  REQ(duplicates == summary["duplicate_receptions"].get<long long>(),
      "duplicates mismatch");
  REQ(overhead_sum / static_cast<double>(overhead_n) ==
          summary["overhead"]["mean_pct"].get<double>(),
      "overhead mean mismatch");

  const auto jain = [](const std::vector<double>& v) {
    double s = 0.0;
    double ss = 0.0;
    for (double x : v) {
      s += x;
      ss += x * x;
    }
    return (s * s) / (static_cast<double>(v.size()) * ss);
  };
  REQ(jain(succ_series) ==
          summary["fairness"]["successful"]["jain"].get<double>(),
      "jain successful mismatch");
  REQ(jain(delay_series) == summary["fairness"]["delay"]["jain"].get<double>(),
      "jain delay mismatch");
  REQ(jain(overhead_series) ==
          summary["fairness"]["overhead"]["jain"].get<double>(),
      "jain overhead mismatch");

  std::sort(overhead_series.begin(), overhead_series.end());
  REQ(nearest_rank(overhead_series, 95.0) ==
          summary["fairness"]["overhead"]["p95"].get<double>(),
      "overhead p95 mismatch");
  std::sort(succ_series.begin(), succ_series.end());
  REQ(nearest_rank(succ_series, 50.0) ==
          summary["fairness"]["successful"]["p50"].get<double>(),
      "successful p50 mismatch");

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  REQ(elapsed < 60.0, "took %.2f s", elapsed);
  return true;
}

// ---------------------------------------------------------------------------
// 7. Determinism: identical invocations produce byte-identical events.csv.
bool criterion_7() {
  const std::string dir_a = work_dir("det_a");
  const std::string dir_b = work_dir("det_b");

  const auto run_into = [](const std::string& dir) {
    RunManifest m;
    m.preset = "jodel";
    m.seed = 99;
    m.users_override = 120;
    m.horizon_override = 7200.0;
    m.out_dir = dir;
    m.dumps.events = true;
    m.dumps.trace = true;
    std::ostringstream out;
    std::ostringstream err;
    return run_manifest(m, out, err);
  };
  REQ(run_into(dir_a) == 0, "first run failed");
  REQ(run_into(dir_b) == 0, "second run failed");

  const std::string ev_a = read_file(dir_a + "/rep-0/events.csv");
  const std::string ev_b = read_file(dir_b + "/rep-0/events.csv");
  REQ(!ev_a.empty(), "empty events.csv");
  REQ(std::hash<std::string>{}(ev_a) == std::hash<std::string>{}(ev_b) &&
          ev_a == ev_b,
      "events.csv differs between runs");
  REQ(read_file(dir_a + "/rep-0/trace.csv") ==
          read_file(dir_b + "/rep-0/trace.csv"),
      "trace.csv differs between runs");
  REQ(read_file(dir_a + "/rep-0/summary.json") ==
          read_file(dir_b + "/rep-0/summary.json"),
      "summary.json differs between runs");
  return true;
}

// ---------------------------------------------------------------------------
// 8. Generator statistics: popularity categorical and per-user inter-arrival
//    means.
bool criterion_8() {
  ScenarioConfig cfg = builtin_scenario("jodel");
  RngStream s(1008, "generator");
  const auto schedule = build_schedule(cfg, s);
  REQ(schedule.messages.size() >= 3000, "only %zu messages",
      schedule.messages.size());
  double zero = 0.0;
  double mid = 0.0;
  double fifty = 0.0;
  for (const auto& m : schedule.messages) {
    if (m.popularity == 0) zero += 1.0;
    else if (m.popularity >= 10 && m.popularity <= 20) mid += 1.0;
    else if (m.popularity == 50) fifty += 1.0;
    else REQ(false, "popularity %d outside the categorical", m.popularity);
  }
  const auto n = static_cast<double>(schedule.messages.size());
  REQ(std::fabs(zero / n - 0.70) <= 0.02, "pop 0 freq %.4f", zero / n);
  REQ(std::fabs(mid / n - 0.29) <= 0.02, "pop 10-20 freq %.4f", mid / n);
  REQ(std::fabs(fifty / n - 0.01) <= 0.02, "pop 50 freq %.4f", fifty / n);

  // Long-run per-user inter-arrival mean within 5% of 86400/5.
  ScenarioConfig small = cfg;
  small.user_count = 5;
  small.run_horizon_s = 1000.0 * 86400.0;
  RngStream s2(1009, "generator");
  const auto long_run = build_schedule(small, s2);
  std::map<int, std::vector<double>> arrivals;
  for (const auto& m : long_run.messages) {
    arrivals[m.origin_node].push_back(m.injection_time);
  }
  REQ(arrivals.size() == 5, "users missing from the long run");
  for (auto& [user, times] : arrivals) {
    REQ(times.size() >= 500, "user %d has only %zu arrivals", user,
        times.size());
    double prev = 0.0;
    double sum = 0.0;
    for (double t : times) {
      sum += t - prev;
      prev = t;
    }
    const double mean = sum / static_cast<double>(times.size());
    REQ(std::fabs(mean / 17280.0 - 1.0) <= 0.05,
        "user %d inter-arrival mean %.1f", user, mean);
  }
  return true;
}

// ---------------------------------------------------------------------------
// 9. Contact oracle: the spatial index equals brute-force all-pairs on every
//    tick of a 200-node run.
bool criterion_9() {
  ScenarioConfig cfg = builtin_scenario("jodel");
  cfg.user_count = 200;
  cfg.run_horizon_s = 1800.0;
  cfg.master_seed = 41;

  const std::string dir = work_dir("contacts");
  DumpOptions dumps;
  dumps.trace = true;
  Simulation sim(cfg);
  sim.run(dir, dumps);

  std::map<double, std::vector<Position>> ticks;
  for (const auto& row : read_csv(dir + "/trace.csv")) {
    const double t = parse_double(row[0]);
    const auto node = static_cast<std::size_t>(parse_int(row[1]));
    auto& positions = ticks[t];
    if (positions.size() <= node) {
      positions.resize(node + 1);
    }
    positions[node] = {parse_double(row[2]), parse_double(row[3])};
  }
  REQ(ticks.size() == 180, "expected 180 ticks, parsed %zu", ticks.size());

  long long pair_total = 0;
  for (const auto& [t, positions] : ticks) {
    REQ(positions.size() == 200, "tick %.0f has %zu nodes", t,
        positions.size());
    std::vector<std::pair<int, int>> brute;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      for (std::size_t j = i + 1; j < positions.size(); ++j) {
        if (distance(positions[i], positions[j]) <= cfg.contact_radius_m) {
          brute.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
      }
    }
    const auto indexed = scan_contacts(positions, cfg.contact_radius_m);
    REQ(indexed == brute, "pair sets differ at tick %.0f", t);
    pair_total += static_cast<long long>(brute.size());
  }
  REQ(pair_total > 0, "no contacts at all in the run");
  return true;
}

// ---------------------------------------------------------------------------
// 10. Fairness identities.
bool criterion_10() {
  for (const int n : {2, 4, 7, 10}) {
    std::vector<double> equal(static_cast<std::size_t>(n), 3.0);
    const auto j = jain_index(equal);
    REQ(j.has_value() && *j == 1.0, "equal allocations, n=%d: jain %.12f", n,
        j.value_or(-1.0));
  }
  for (const int n : {2, 4, 10}) {
    std::vector<double> one(static_cast<std::size_t>(n), 0.0);
    one[0] = 5.0;
    const auto j = jain_index(one);
    REQ(j.has_value() && *j == 1.0 / static_cast<double>(n),
        "single allocation, n=%d: jain %.12f", n, j.value_or(-1.0));
  }
  REQ(!jain_index({0.0, 0.0, 0.0}).has_value(),
      "all-zero series must be undefined");
  return true;
}

struct Criterion {
  int id;
  const char* name;
  bool (*fn)();
};

const Criterion kCriteria[] = {
    {1, "reaction-law fidelity (lb = 0 / 50 / 100)", criterion_1},
    {2, "clamp correctness on 1000 saturated triples", criterion_2},
    {3, "emergency end-to-end flight from the danger zone", criterion_3},
    {4, "angry bit on late relay delivery", criterion_4},
    {5, "scheduled-visit punctuality from the waypoint trace", criterion_5},
    {6, "metrics oracle recount from raw logs (exact)", criterion_6},
    {7, "byte-identical replay per seed", criterion_7},
    {8, "generator statistics (popularity, inter-arrivals)", criterion_8},
    {9, "contact spatial index equals all-pairs on every tick", criterion_9},
    {10, "Jain fairness identities", criterion_10},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) {
    wanted.push_back(std::atoi(argv[i]));
  }

  int failures = 0;
  for (const auto& c : kCriteria) {
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) {
      continue;
    }
    g_failures.clear();
    const auto t0 = std::chrono::steady_clock::now();
    const bool ok = c.fn();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%s] criterion %2d: %s (%.2f s)\n", ok ? "PASS" : "FAIL",
                c.id, c.name, secs);
    if (!ok) {
      ++failures;
      for (const auto& f : g_failures) {
        std::printf("       %s\n", f.c_str());
      }
    }
  }
  return failures == 0 ? 0 : 1;
}
