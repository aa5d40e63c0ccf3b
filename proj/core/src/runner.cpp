#include "oppsim/runner.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "oppsim/errors.hpp"
#include "oppsim/io.hpp"

namespace oppsim {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json opt(const std::optional<double>& v) {
  if (v.has_value()) {
    return *v;
  }
  return nullptr;
}

ordered_json fairness_json(const FairnessFigures& f) {
  ordered_json j;
  j["jain"] = opt(f.jain);
  j["p5"] = f.p5;
  j["p25"] = f.p25;
  j["p50"] = f.p50;
  j["p75"] = f.p75;
  j["p95"] = f.p95;
  j["included"] = f.included;
  j["excluded"] = f.excluded;
  return j;
}

}  // namespace

std::string summary_json(const SummaryReport& r, const ScenarioConfig& cfg,
                         int message_count) {
  ordered_json j;
  j["scenario"] = cfg.name;
  j["seed"] = cfg.master_seed;
  j["users"] = cfg.user_count;
  j["messages"] = message_count;
  j["horizon_s"] = cfg.run_horizon_s;

  ordered_json delivery;
  delivery["rate"] = opt(r.delivery_rate);
  delivery["rate_all_pairs"] = opt(r.delivery_rate_all_pairs);
  delivery["wanted_pairs"] = r.wanted_pairs;
  delivery["successful_pairs"] = r.successful_pairs;
  j["delivery"] = delivery;

  ordered_json delay;
  delay["mean_s"] = opt(r.delay_mean_s);
  delay["median_s"] = opt(r.delay_median_s);
  delay["p95_s"] = opt(r.delay_p95_s);
  delay["count"] = r.delay_count;
  j["delay"] = delay;

  ordered_json overhead;
  overhead["mean_pct"] = opt(r.overhead_mean_pct);
  overhead["undefined_users"] = r.overhead_undefined_users;
  j["overhead"] = overhead;

  ordered_json fairness;
  fairness["successful"] = fairness_json(r.fairness_successful);
  fairness["delay"] = fairness_json(r.fairness_delay);
  fairness["overhead"] = fairness_json(r.fairness_overhead);
  j["fairness"] = fairness;

  j["angry_count"] = r.angry_count;
  j["receptions_total"] = r.receptions_total;
  j["duplicate_receptions"] = r.duplicate_receptions;
  return j.dump(2) + "\n";
}

std::string summary_table(const SummaryReport& r) {
  std::ostringstream out;
  char line[160];
  const auto num = [](const std::optional<double>& v) {
    if (!v.has_value()) {
      return std::string("n/a");
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", *v);
    return std::string(buf);
  };
  const auto row = [&](const char* label, const std::string& value) {
    std::snprintf(line, sizeof(line), "  %-28s %s\n", label, value.c_str());
    out << line;
  };
  row("delivery rate", num(r.delivery_rate));
  row("delivery rate (all pairs)", num(r.delivery_rate_all_pairs));
  row("wanted / successful pairs", std::to_string(r.wanted_pairs) + " / " +
                                       std::to_string(r.successful_pairs));
  row("delay mean/median/p95 [s]", num(r.delay_mean_s) + " / " +
                                       num(r.delay_median_s) + " / " +
                                       num(r.delay_p95_s));
  row("overhead mean [%]", num(r.overhead_mean_pct));
  row("jain succ/delay/overhead",
      num(r.fairness_successful.jain) + " / " + num(r.fairness_delay.jain) +
          " / " + num(r.fairness_overhead.jain));
  row("angry receptions", std::to_string(r.angry_count));
  row("receptions (duplicates)", std::to_string(r.receptions_total) + " (" +
                                     std::to_string(r.duplicate_receptions) +
                                     ")");
  return out.str();
}

std::string per_user_csv(const SummaryReport& r) {
  std::ostringstream out;
  out << "user_id,receptions_total,successful,angry,overhead_pct,delay_mean_s\n";
  for (const auto& s : r.per_user) {
    out << s.user_id << ',' << s.receptions_total << ',' << s.successful << ','
        << s.angry << ',';
    if (s.overhead_pct) out << fmt_double(*s.overhead_pct);
    out << ',';
    if (s.delay_mean_s) out << fmt_double(*s.delay_mean_s);
    out << '\n';
  }
  return out.str();
}

double student_t_975(int dof) {
  static constexpr double kTable[] = {
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
      2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
      2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (dof < 1) {
    return 0.0;
  }
  if (dof <= 30) {
    return kTable[dof - 1];
  }
  return 1.96;
}

namespace {

// Mean and 95% CI half-width across replications; null entries are skipped.
ordered_json stat_json(const std::vector<std::optional<double>>& values) {
  std::vector<double> v;
  for (const auto& x : values) {
    if (x.has_value()) {
      v.push_back(*x);
    }
  }
  ordered_json j;
  j["n"] = v.size();
  if (v.empty()) {
    j["mean"] = nullptr;
    j["ci95_half_width"] = nullptr;
    return j;
  }
  double sum = 0.0;
  for (double x : v) {
    sum += x;
  }
  const double mean = sum / static_cast<double>(v.size());
  j["mean"] = mean;
  if (v.size() < 2) {
    j["ci95_half_width"] = nullptr;
    return j;
  }
  double ss = 0.0;
  for (double x : v) {
    ss += (x - mean) * (x - mean);
  }
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  j["ci95_half_width"] = student_t_975(static_cast<int>(v.size()) - 1) * sd /
                         std::sqrt(static_cast<double>(v.size()));
  j["values"] = v;
  return j;
}

}  // namespace

std::string aggregate_json(const std::vector<SummaryReport>& reports,
                           const RunManifest& manifest) {
  const auto collect = [&](auto getter) {
    std::vector<std::optional<double>> v;
    v.reserve(reports.size());
    for (const auto& r : reports) {
      v.push_back(getter(r));
    }
    return v;
  };
  const auto count = [&](auto getter) {
    std::vector<std::optional<double>> v;
    v.reserve(reports.size());
    for (const auto& r : reports) {
      v.emplace_back(static_cast<double>(getter(r)));
    }
    return v;
  };

  ordered_json j;
  j["replications"] = reports.size();
  j["base_seed"] = manifest.seed;
  ordered_json m;
  m["delivery_rate"] =
      stat_json(collect([](const auto& r) { return r.delivery_rate; }));
  m["delay_mean_s"] =
      stat_json(collect([](const auto& r) { return r.delay_mean_s; }));
  m["delay_median_s"] =
      stat_json(collect([](const auto& r) { return r.delay_median_s; }));
  m["delay_p95_s"] =
      stat_json(collect([](const auto& r) { return r.delay_p95_s; }));
  m["overhead_mean_pct"] =
      stat_json(collect([](const auto& r) { return r.overhead_mean_pct; }));
  m["jain_successful"] = stat_json(
      collect([](const auto& r) { return r.fairness_successful.jain; }));
  m["jain_delay"] =
      stat_json(collect([](const auto& r) { return r.fairness_delay.jain; }));
  m["jain_overhead"] = stat_json(
      collect([](const auto& r) { return r.fairness_overhead.jain; }));
  m["angry_count"] =
      stat_json(count([](const auto& r) { return r.angry_count; }));
  m["receptions_total"] =
      stat_json(count([](const auto& r) { return r.receptions_total; }));
  j["metrics"] = m;
  return j.dump(2) + "\n";
}

ScenarioConfig manifest_scenario(const RunManifest& manifest) {
  if (manifest.preset.empty() == manifest.scenario_path.empty()) {
    throw SimError("exactly one of preset or scenario file is required");
  }
  ScenarioConfig cfg = manifest.preset.empty()
                           ? load_scenario_file(manifest.scenario_path)
                           : builtin_scenario(manifest.preset);
  cfg.master_seed = manifest.seed;
  if (manifest.users_override.has_value()) {
    cfg.user_count = *manifest.users_override;
  }
  if (manifest.horizon_override.has_value()) {
    cfg.run_horizon_s = *manifest.horizon_override;
  }
  return cfg;
}

int run_manifest(const RunManifest& manifest, std::ostream& out,
                 std::ostream& err) {
  try {
    ScenarioConfig cfg = manifest_scenario(manifest);
    const auto violations = validate_scenario(cfg);
    if (!violations.empty()) {
      for (const auto& v : violations) {
        err << v.field << ": " << v.message << "\n";
      }
      return kExitUserError;
    }
    if (manifest.reps < 1) {
      err << "reps must be >= 1\n";
      return kExitUserError;
    }

    std::vector<SummaryReport> reports;
    for (int rep = 0; rep < manifest.reps; ++rep) {
      ScenarioConfig rep_cfg = cfg;
      rep_cfg.master_seed = manifest.seed + static_cast<std::uint64_t>(rep);
      Simulation sim(rep_cfg);
      sim.set_single_message(manifest.single_emergency);
      sim.set_metrics_options(
          MetricsOptions{!manifest.exclude_self_reception});
      const std::string rep_dir =
          manifest.out_dir + "/rep-" + std::to_string(rep);
      SimulationResult result = sim.run(rep_dir, manifest.dumps);

      atomic_write_file(
          rep_dir + "/summary.json",
          summary_json(result.summary, rep_cfg, result.message_count));
      atomic_write_file(rep_dir + "/per_user.csv",
                        per_user_csv(result.summary));

      out << "rep " << rep << ": seed " << rep_cfg.master_seed << ", "
          << result.message_count << " messages\n"
          << summary_table(result.summary);
      reports.push_back(std::move(result.summary));
    }

    atomic_write_file(manifest.out_dir + "/aggregate.json",
                      aggregate_json(reports, manifest));
    return kExitOk;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const SimError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  }
}

int validate_file(const std::string& path, std::ostream& out,
                  std::ostream& err) {
  try {
    const ScenarioConfig cfg = load_scenario_file(path);
    const auto violations = validate_scenario(cfg);
    if (!violations.empty()) {
      for (const auto& v : violations) {
        err << v.field << ": " << v.message << "\n";
      }
      return kExitUserError;
    }
    out << "ok\n";
    return kExitOk;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const SimError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  }
}

int dump_preset(const std::string& name, const std::string& path,
                std::ostream& err) {
  try {
    const ScenarioConfig cfg = builtin_scenario(name);
    atomic_write_file(path, format_scenario(cfg));
    return kExitOk;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const SimError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  }
}

}  // namespace oppsim
