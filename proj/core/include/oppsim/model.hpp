#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oppsim/geometry.hpp"
#include "oppsim/kernel.hpp"

namespace oppsim {

// Ordered reaction labels, weakest first. Index 0 is always the ignore-class
// reaction ("ignore"/"delete"/"read"); the last index is the maximal one.
struct ReactionSet {
  std::vector<std::string> labels;

  std::size_t size() const { return labels.size(); }
  int max_index() const { return static_cast<int>(labels.size()) - 1; }

  bool operator==(const ReactionSet&) const = default;
};

struct UserProfile {
  int user_id = 0;
  // Interest keywords, lowercase, sorted, unique.
  std::vector<std::string> interests;
  ReactionSet reactions;
  // base[i] = P[reaction i] when a message has no popularity and no keyword
  // match. Non-negative, sums to 1.
  std::vector<double> base;
};

struct Message {
  int msg_id = 0;
  // Lowercase, sorted, unique.
  std::vector<std::string> keywords;
  int popularity = 0;  // [0, 100]
  std::optional<SimTime> event_start;
  std::optional<SimTime> event_end;
  std::optional<Position> event_addr;
  // For emergencies event_addr doubles as the danger-zone center.
  std::optional<double> danger_radius_m;
  SimTime injection_time = 0.0;
  int origin_node = 0;

  bool is_emergency() const { return danger_radius_m.has_value(); }
  bool has_event_window() const {
    return event_start.has_value() && event_end.has_value() &&
           event_addr.has_value();
  }
};

// Lowercases (ASCII) and trims surrounding whitespace.
std::string normalize_keyword(std::string_view raw);

// Sorts, dedupes and normalizes a keyword list in place.
void canonicalize_keywords(std::vector<std::string>& keywords);

// |user.interests ∩ msg.keywords|, exact case-insensitive matching.
int matching_keywords(const UserProfile& user, const Message& msg);

// One entry per violated message invariant, empty when the tuple is valid.
std::vector<std::string> message_violations(const Message& msg);

// Throws SimError when message_violations(msg) is non-empty.
void check_message(const Message& msg);

}  // namespace oppsim
