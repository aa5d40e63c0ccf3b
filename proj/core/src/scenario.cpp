#include "oppsim/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "oppsim/errors.hpp"

namespace oppsim {
namespace {

constexpr double kProbSumTol = 1e-9;

std::string fmt_sum(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void check_positive(std::vector<Violation>& out, const std::string& field,
                    double v) {
  if (!(v > 0.0)) {
    out.push_back({field, "must be positive"});
  }
}

}  // namespace

std::vector<Violation> validate_scenario(const ScenarioConfig& cfg) {
  std::vector<Violation> out;

  if (cfg.user_count < 1) {
    out.push_back({"user_count", "must be >= 1"});
  }
  check_positive(out, "area_width_m", cfg.area_width_m);
  check_positive(out, "area_height_m", cfg.area_height_m);
  check_positive(out, "run_horizon_s", cfg.run_horizon_s);

  const std::size_t n = cfg.reaction_set.labels.size();
  if (n < 1) {
    out.push_back({"reactions.labels", "at least one reaction required"});
  }
  {
    std::set<std::string> uniq(cfg.reaction_set.labels.begin(),
                               cfg.reaction_set.labels.end());
    if (uniq.size() != n) {
      out.push_back({"reactions.labels", "labels must be unique"});
    }
  }
  if (cfg.base.size() != n) {
    out.push_back({"reactions.base", "needs one probability per reaction"});
  }
  double base_sum = 0.0;
  bool base_neg = false;
  for (double b : cfg.base) {
    base_sum += b;
    base_neg = base_neg || b < 0.0;
  }
  if (base_neg) {
    out.push_back({"reactions.base", "probabilities must be non-negative"});
  }
  if (!cfg.base.empty() && std::fabs(base_sum - 1.0) > kProbSumTol) {
    out.push_back({"reactions.base", "sums to " + fmt_sum(base_sum)});
  }
  if (cfg.base_mode == BaseMode::LogNormal && !(cfg.base_sigma > 0.0)) {
    out.push_back({"reactions.base_sigma", "must be positive"});
  }

  {
    std::set<std::string> uniq(cfg.keyword_vocabulary.begin(),
                               cfg.keyword_vocabulary.end());
    if (uniq.size() != cfg.keyword_vocabulary.size()) {
      out.push_back({"users.vocabulary", "entries must be unique"});
    }
  }
  const int vocab = static_cast<int>(cfg.keyword_vocabulary.size());
  if (cfg.interests_min < 0 || cfg.interests_min > cfg.interests_max) {
    out.push_back({"users.interests_min", "need 0 <= min <= max"});
  }
  if (cfg.interests_max > vocab) {
    out.push_back({"users.interests_max", "exceeds vocabulary size"});
  }

  check_positive(out, "messages.rate_per_user_per_day",
                 cfg.message_rate_per_user_per_day);
  if (cfg.popularity.empty()) {
    out.push_back({"messages.popularity", "distribution is empty"});
  }
  double pop_sum = 0.0;
  for (const auto& bin : cfg.popularity) {
    pop_sum += bin.prob;
    if (bin.prob < 0.0) {
      out.push_back({"messages.popularity", "probabilities must be non-negative"});
    }
    if (bin.lo < 0 || bin.lo > bin.hi || bin.hi > 100) {
      out.push_back({"messages.popularity", "values must satisfy 0 <= lo <= hi <= 100"});
    }
  }
  if (!cfg.popularity.empty() && std::fabs(pop_sum - 1.0) > kProbSumTol) {
    out.push_back({"messages.popularity", "sums to " + fmt_sum(pop_sum)});
  }
  if (cfg.keywords_min < 0 || cfg.keywords_min > cfg.keywords_max) {
    out.push_back({"messages.keywords_min", "need 0 <= min <= max"});
  }
  if (cfg.keywords_max > vocab) {
    out.push_back({"messages.keywords_max", "exceeds vocabulary size"});
  }
  if (cfg.emergency) {
    if (cfg.place_policy == PlacePolicy::None) {
      out.push_back({"messages.place_policy",
                     "emergencies need a place policy for the danger center"});
    }
    if (cfg.time_policy != TimePolicy::None) {
      out.push_back({"messages.time_policy",
                     "emergencies carry no event window"});
    }
    if (!(cfg.danger_radius_m > 0.0)) {
      out.push_back({"messages.danger_radius_m", "must be positive"});
    }
  } else {
    const bool has_place = cfg.place_policy != PlacePolicy::None;
    const bool has_time = cfg.time_policy != TimePolicy::None;
    if (has_place != has_time) {
      out.push_back({"messages.place_policy",
                     "place and time policies must be set together"});
    }
  }
  if (cfg.visit_probability < 0.0 || cfg.visit_probability > 1.0) {
    out.push_back({"messages.visit_probability", "must be in [0, 1]"});
  }

  check_positive(out, "mobility.speed_mps", cfg.mobility.speed_mps);
  check_positive(out, "mobility.flee_speed_mps", cfg.mobility.flee_speed_mps);
  if (cfg.mobility.alpha < 0.0 || cfg.mobility.alpha > 1.0) {
    out.push_back({"mobility.alpha", "must be in [0, 1]"});
  }
  check_positive(out, "mobility.cell_size_m", cfg.mobility.cell_size_m);
  if (!(cfg.mobility.wait_min_s > 0.0) ||
      !(cfg.mobility.wait_min_s < cfg.mobility.wait_max_s)) {
    out.push_back({"mobility.wait_min_s", "need 0 < wait_min_s < wait_max_s"});
  }
  if (!(cfg.mobility.wait_slope > 1.0)) {
    out.push_back({"mobility.wait_slope", "must be > 1"});
  }
  check_positive(out, "mobility.flee_margin", cfg.mobility.flee_margin);

  check_positive(out, "network.contact_radius_m", cfg.contact_radius_m);
  check_positive(out, "network.contact_scan_interval_s",
                 cfg.contact_scan_interval_s);

  return out;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"jodel", "city-events",
                                                 "emergency"};
  return names;
}

ScenarioConfig builtin_scenario(const std::string& name) {
  ScenarioConfig cfg;
  cfg.name = name;

  if (name == "jodel") {
    // Anonymous campus messaging: no interests, no event data, high traffic.
    cfg.user_count = 750;
    cfg.area_width_m = 1000.0;
    cfg.area_height_m = 1000.0;
    cfg.run_horizon_s = 86400.0;
    cfg.reaction_set.labels = {"ignore", "comment/vote", "save"};
    cfg.base = {0.90, 0.095, 0.005};
    cfg.message_rate_per_user_per_day = 5.0;
    cfg.popularity = {{0, 0, 0.70}, {10, 20, 0.29}, {50, 50, 0.01}};
    return cfg;
  }

  if (name == "city-events") {
    cfg.user_count = 2000;
    cfg.area_width_m = 3000.0;
    cfg.area_height_m = 3000.0;
    cfg.run_horizon_s = 7.0 * 86400.0;
    cfg.reaction_set.labels = {"ignore", "like", "save", "save&go"};
    cfg.base = {0.80, 0.15, 0.045, 0.005};
    cfg.keyword_vocabulary = {"sale",   "concert", "exhibition",
                              "outdoor", "food",    "happy hour",
                              "market", "sports",  "demonstration"};
    canonicalize_keywords(cfg.keyword_vocabulary);
    cfg.interests_min = 2;
    cfg.interests_max = 5;
    cfg.message_rate_per_user_per_day = 0.1;
    cfg.popularity = {{0, 0, 0.70}, {1, 5, 0.29}, {10, 10, 0.01}};
    cfg.keywords_min = 2;
    cfg.keywords_max = 5;
    cfg.place_policy = PlacePolicy::CityCenter;
    cfg.time_policy = TimePolicy::EveningWeekend;
    return cfg;
  }

  if (name == "emergency") {
    cfg.user_count = 2000;
    cfg.area_width_m = 3000.0;
    cfg.area_height_m = 3000.0;
    cfg.run_horizon_s = 86400.0;
    // Everyone reads; popularity 100 forces the maximal reaction, and users
    // inside the danger zone run.
    cfg.reaction_set.labels = {"read", "read&run"};
    cfg.base = {0.0, 1.0};
    cfg.message_rate_per_user_per_day = 0.1;
    cfg.popularity = {{100, 100, 1.0}};
    cfg.place_policy = PlacePolicy::Uniform;
    cfg.emergency = true;
    cfg.danger_radius_m = 300.0;
    return cfg;
  }

  throw UnknownScenarioError("unknown preset '" + name + "'");
}

const char* to_string(PlacePolicy p) {
  switch (p) {
    case PlacePolicy::None: return "none";
    case PlacePolicy::CityCenter: return "city-center";
    case PlacePolicy::Uniform: return "uniform";
  }
  return "?";
}

const char* to_string(TimePolicy p) {
  switch (p) {
    case TimePolicy::None: return "none";
    case TimePolicy::EveningWeekend: return "evening-weekend";
    case TimePolicy::Uniform: return "uniform";
  }
  return "?";
}

const char* to_string(BaseMode m) {
  return m == BaseMode::Fixed ? "fixed" : "log-normal";
}

const char* to_string(FleePolicy p) {
  return p == FleePolicy::Radial ? "radial" : "swim-outside";
}

}  // namespace oppsim
