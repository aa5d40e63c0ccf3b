#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "oppsim/errors.hpp"
#include "oppsim/io.hpp"
#include "oppsim/scenario.hpp"

namespace oppsim {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  if (trim(value).empty()) {
    return out;
  }
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = value.find(',', start);
    const std::string_view item =
        comma == std::string_view::npos
            ? value.substr(start)
            : value.substr(start, comma - start);
    out.emplace_back(trim(item));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) {
    out.push_back(parse_double(item));
  }
  return out;
}

std::vector<PopularityBin> parse_popularity(std::string_view value) {
  std::vector<PopularityBin> out;
  for (const auto& item : split_list(value)) {
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) {
      throw SimError("popularity entry '" + item + "' needs value:prob");
    }
    const std::string_view val = trim(std::string_view(item).substr(0, colon));
    const std::string_view prob = trim(std::string_view(item).substr(colon + 1));
    PopularityBin bin;
    const std::size_t dash = val.find('-');
    if (dash == std::string_view::npos) {
      bin.lo = bin.hi = static_cast<int>(parse_int(val));
    } else {
      bin.lo = static_cast<int>(parse_int(trim(val.substr(0, dash))));
      bin.hi = static_cast<int>(parse_int(trim(val.substr(dash + 1))));
    }
    bin.prob = parse_double(prob);
    out.push_back(bin);
  }
  return out;
}

bool parse_bool(std::string_view v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw SimError("expected true/false, got '" + std::string(v) + "'");
}

PlacePolicy parse_place_policy(std::string_view v) {
  if (v == "none") return PlacePolicy::None;
  if (v == "city-center") return PlacePolicy::CityCenter;
  if (v == "uniform") return PlacePolicy::Uniform;
  throw SimError("unknown place policy '" + std::string(v) + "'");
}

TimePolicy parse_time_policy(std::string_view v) {
  if (v == "none") return TimePolicy::None;
  if (v == "evening-weekend") return TimePolicy::EveningWeekend;
  if (v == "uniform") return TimePolicy::Uniform;
  throw SimError("unknown time policy '" + std::string(v) + "'");
}

BaseMode parse_base_mode(std::string_view v) {
  if (v == "fixed") return BaseMode::Fixed;
  if (v == "log-normal") return BaseMode::LogNormal;
  throw SimError("unknown base mode '" + std::string(v) + "'");
}

FleePolicy parse_flee_policy(std::string_view v) {
  if (v == "radial") return FleePolicy::Radial;
  if (v == "swim-outside") return FleePolicy::SwimOutside;
  throw SimError("unknown flee policy '" + std::string(v) + "'");
}

// One (section, key) assignment. Throws SimError on unknown names.
void apply_key(ScenarioConfig& cfg, const std::string& section,
               const std::string& key, std::string_view value) {
  if (section == "scenario") {
    if (key == "name") { cfg.name = std::string(value); return; }
    if (key == "user_count") { cfg.user_count = static_cast<int>(parse_int(value)); return; }
    if (key == "area_width_m") { cfg.area_width_m = parse_double(value); return; }
    if (key == "area_height_m") { cfg.area_height_m = parse_double(value); return; }
    if (key == "run_horizon_s") { cfg.run_horizon_s = parse_double(value); return; }
    if (key == "master_seed") { cfg.master_seed = parse_uint(value); return; }
  } else if (section == "reactions") {
    if (key == "labels") { cfg.reaction_set.labels = split_list(value); return; }
    if (key == "base") { cfg.base = parse_double_list(value); return; }
    if (key == "base_mode") { cfg.base_mode = parse_base_mode(value); return; }
    if (key == "base_sigma") { cfg.base_sigma = parse_double(value); return; }
  } else if (section == "users") {
    if (key == "interests_min") { cfg.interests_min = static_cast<int>(parse_int(value)); return; }
    if (key == "interests_max") { cfg.interests_max = static_cast<int>(parse_int(value)); return; }
    if (key == "vocabulary") {
      cfg.keyword_vocabulary = split_list(value);
      canonicalize_keywords(cfg.keyword_vocabulary);
      return;
    }
  } else if (section == "messages") {
    if (key == "rate_per_user_per_day") { cfg.message_rate_per_user_per_day = parse_double(value); return; }
    if (key == "keywords_min") { cfg.keywords_min = static_cast<int>(parse_int(value)); return; }
    if (key == "keywords_max") { cfg.keywords_max = static_cast<int>(parse_int(value)); return; }
    if (key == "popularity") { cfg.popularity = parse_popularity(value); return; }
    if (key == "place_policy") { cfg.place_policy = parse_place_policy(value); return; }
    if (key == "time_policy") { cfg.time_policy = parse_time_policy(value); return; }
    if (key == "emergency") { cfg.emergency = parse_bool(value); return; }
    if (key == "danger_radius_m") { cfg.danger_radius_m = parse_double(value); return; }
    if (key == "visit_probability") { cfg.visit_probability = parse_double(value); return; }
  } else if (section == "mobility") {
    auto& m = cfg.mobility;
    if (key == "speed_mps") { m.speed_mps = parse_double(value); return; }
    if (key == "flee_speed_mps") { m.flee_speed_mps = parse_double(value); return; }
    if (key == "alpha") { m.alpha = parse_double(value); return; }
    if (key == "cell_size_m") { m.cell_size_m = parse_double(value); return; }
    if (key == "wait_min_s") { m.wait_min_s = parse_double(value); return; }
    if (key == "wait_max_s") { m.wait_max_s = parse_double(value); return; }
    if (key == "wait_slope") { m.wait_slope = parse_double(value); return; }
    if (key == "flee_margin") { m.flee_margin = parse_double(value); return; }
    if (key == "flee_policy") { m.flee_policy = parse_flee_policy(value); return; }
  } else if (section == "network") {
    if (key == "contact_radius_m") { cfg.contact_radius_m = parse_double(value); return; }
    if (key == "contact_scan_interval_s") { cfg.contact_scan_interval_s = parse_double(value); return; }
  } else {
    throw SimError("unknown section [" + section + "]");
  }
  throw SimError("unknown key '" + key + "' in section [" + section + "]");
}

}  // namespace

ScenarioConfig parse_scenario(std::istream& in) {
  ScenarioConfig cfg;
  cfg.reaction_set.labels.clear();
  cfg.base.clear();
  cfg.popularity.clear();

  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') {
      continue;
    }
    try {
      if (s.front() == '[') {
        if (s.back() != ']') {
          throw SimError("malformed section header");
        }
        section = std::string(trim(s.substr(1, s.size() - 2)));
        continue;
      }
      const std::size_t eq = s.find('=');
      if (eq == std::string_view::npos) {
        throw SimError("expected key = value");
      }
      if (section.empty()) {
        throw SimError("key before any [section]");
      }
      const std::string key(trim(s.substr(0, eq)));
      const std::string_view value = trim(s.substr(eq + 1));
      apply_key(cfg, section, key, value);
    } catch (const SimError& e) {
      throw SimError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

ScenarioConfig parse_scenario_string(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read scenario file " + path);
  }
  return parse_scenario(in);
}

std::string format_scenario(const ScenarioConfig& cfg) {
  std::ostringstream out;
  const auto list = [](const std::vector<std::string>& items) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) s += ", ";
      s += items[i];
    }
    return s;
  };

  out << "[scenario]\n";
  out << "name = " << cfg.name << "\n";
  out << "user_count = " << cfg.user_count << "\n";
  out << "area_width_m = " << fmt_double(cfg.area_width_m) << "\n";
  out << "area_height_m = " << fmt_double(cfg.area_height_m) << "\n";
  out << "run_horizon_s = " << fmt_double(cfg.run_horizon_s) << "\n";
  out << "master_seed = " << cfg.master_seed << "\n";

  out << "\n[reactions]\n";
  out << "labels = " << list(cfg.reaction_set.labels) << "\n";
  out << "base = ";
  for (std::size_t i = 0; i < cfg.base.size(); ++i) {
    if (i > 0) out << ", ";
    out << fmt_double(cfg.base[i]);
  }
  out << "\n";
  out << "base_mode = " << to_string(cfg.base_mode) << "\n";
  out << "base_sigma = " << fmt_double(cfg.base_sigma) << "\n";

  out << "\n[users]\n";
  out << "interests_min = " << cfg.interests_min << "\n";
  out << "interests_max = " << cfg.interests_max << "\n";
  out << "vocabulary = " << list(cfg.keyword_vocabulary) << "\n";

  out << "\n[messages]\n";
  out << "rate_per_user_per_day = "
      << fmt_double(cfg.message_rate_per_user_per_day) << "\n";
  out << "keywords_min = " << cfg.keywords_min << "\n";
  out << "keywords_max = " << cfg.keywords_max << "\n";
  out << "popularity = ";
  for (std::size_t i = 0; i < cfg.popularity.size(); ++i) {
    const auto& bin = cfg.popularity[i];
    if (i > 0) out << ", ";
    out << bin.lo;
    if (bin.hi != bin.lo) out << "-" << bin.hi;
    out << ":" << fmt_double(bin.prob);
  }
  out << "\n";
  out << "place_policy = " << to_string(cfg.place_policy) << "\n";
  out << "time_policy = " << to_string(cfg.time_policy) << "\n";
  out << "emergency = " << (cfg.emergency ? "true" : "false") << "\n";
  out << "danger_radius_m = " << fmt_double(cfg.danger_radius_m) << "\n";
  out << "visit_probability = " << fmt_double(cfg.visit_probability) << "\n";

  out << "\n[mobility]\n";
  const auto& m = cfg.mobility;
  out << "speed_mps = " << fmt_double(m.speed_mps) << "\n";
  out << "flee_speed_mps = " << fmt_double(m.flee_speed_mps) << "\n";
  out << "alpha = " << fmt_double(m.alpha) << "\n";
  out << "cell_size_m = " << fmt_double(m.cell_size_m) << "\n";
  out << "wait_min_s = " << fmt_double(m.wait_min_s) << "\n";
  out << "wait_max_s = " << fmt_double(m.wait_max_s) << "\n";
  out << "wait_slope = " << fmt_double(m.wait_slope) << "\n";
  out << "flee_margin = " << fmt_double(m.flee_margin) << "\n";
  out << "flee_policy = " << to_string(m.flee_policy) << "\n";

  out << "\n[network]\n";
  out << "contact_radius_m = " << fmt_double(cfg.contact_radius_m) << "\n";
  out << "contact_scan_interval_s = "
      << fmt_double(cfg.contact_scan_interval_s) << "\n";

  return out.str();
}

}  // namespace oppsim
