#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "oppsim/model.hpp"

namespace oppsim {

enum class PlacePolicy { None, CityCenter, Uniform };
enum class TimePolicy { None, EveningWeekend, Uniform };
enum class BaseMode { Fixed, LogNormal };
enum class FleePolicy { Radial, SwimOutside };

// Categorical popularity entry: a point value (lo == hi) or an integer range
// [lo, hi] drawn uniformly, selected with probability prob.
struct PopularityBin {
  int lo = 0;
  int hi = 0;
  double prob = 0.0;

  bool operator==(const PopularityBin&) const = default;
};

struct MobilityParams {
  double speed_mps = 1.4;
  double flee_speed_mps = 2.8;
  // SWIM blend: alpha weighs distance-from-home decay, 1 - alpha weighs
  // observed location popularity.
  double alpha = 0.75;
  double cell_size_m = 100.0;
  double wait_min_s = 30.0;
  double wait_max_s = 3600.0;
  double wait_slope = 1.45;
  // Fractional overshoot beyond the danger radius when fleeing.
  double flee_margin = 0.1;
  FleePolicy flee_policy = FleePolicy::Radial;

  bool operator==(const MobilityParams&) const = default;
};

struct ScenarioConfig {
  std::string name = "custom";
  int user_count = 100;
  double area_width_m = 1000.0;
  double area_height_m = 1000.0;
  SimTime run_horizon_s = 86400.0;
  std::uint64_t master_seed = 1;

  ReactionSet reaction_set;
  std::vector<double> base;
  BaseMode base_mode = BaseMode::Fixed;
  // Log-normal sigma for the per-user perturbation of the non-ignore mass.
  double base_sigma = 0.5;

  std::vector<std::string> keyword_vocabulary;
  int interests_min = 0;
  int interests_max = 0;

  double message_rate_per_user_per_day = 1.0;
  std::vector<PopularityBin> popularity;
  int keywords_min = 0;
  int keywords_max = 0;
  PlacePolicy place_policy = PlacePolicy::None;
  TimePolicy time_policy = TimePolicy::None;
  bool emergency = false;
  double danger_radius_m = 300.0;
  double visit_probability = 0.5;

  MobilityParams mobility;

  double contact_radius_m = 30.0;
  double contact_scan_interval_s = 10.0;

  Area area() const { return Area{area_width_m, area_height_m}; }

  bool operator==(const ScenarioConfig&) const = default;
};

struct Violation {
  std::string field;
  std::string message;
};

// Empty when every scenario invariant holds; otherwise one entry per
// violation, carrying the offending field path.
std::vector<Violation> validate_scenario(const ScenarioConfig& cfg);

// Table-1 presets: "jodel", "city-events", "emergency". Throws
// UnknownScenarioError for anything else.
ScenarioConfig builtin_scenario(const std::string& name);

const std::vector<std::string>& preset_names();

// --- scenario file format ------------------------------------------------
//
// Line-oriented text with [section] headers and key = value pairs. Lists are
// comma-separated; the popularity categorical uses value:prob entries where
// value is an integer or an inclusive lo-hi range. '#' starts a comment.
// Unknown sections or keys are rejected. See README for the full grammar.

// Throws SimError on any syntax problem (with line number).
ScenarioConfig parse_scenario(std::istream& in);
ScenarioConfig parse_scenario_string(const std::string& text);

// Throws IoError when the file cannot be read.
ScenarioConfig load_scenario_file(const std::string& path);

// Canonical text form; parse_scenario(format_scenario(cfg)) == cfg.
std::string format_scenario(const ScenarioConfig& cfg);

const char* to_string(PlacePolicy p);
const char* to_string(TimePolicy p);
const char* to_string(BaseMode m);
const char* to_string(FleePolicy p);

}  // namespace oppsim
