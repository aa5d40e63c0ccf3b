#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "oppsim/model.hpp"
#include "oppsim/rng.hpp"

namespace oppsim {

struct FleeDirective {
  Position center;
  double radius_m = 0.0;
};

struct VisitDirective {
  Position addr;
  SimTime start = 0.0;
  SimTime end = 0.0;
};

using Directive = std::variant<std::monostate, FleeDirective, VisitDirective>;

struct ReactionOutcome {
  int user_id = 0;
  int msg_id = 0;
  SimTime reception_time = 0.0;
  int reaction_index = 0;
  // Message arrived after its event ended; the reaction is forced to the
  // weakest and the pair counts as a delivery failure.
  bool angry = false;
  Directive directive;
};

struct PrecomputedReaction {
  int user_id = 0;
  int msg_id = 0;
  int reaction_index = 0;
  // Only drawn for event messages precomputed to the maximal reaction.
  std::optional<bool> will_visit;
};

// Dense (user x message) table of precomputed reactions. Users and messages
// must use contiguous ids starting at 0.
class PrecomputedTable {
 public:
  PrecomputedTable() = default;
  PrecomputedTable(int user_count, int message_count);

  int user_count() const { return user_count_; }
  int message_count() const { return message_count_; }
  std::size_t size() const { return cells_.size(); }

  // Throws UnknownPairError when the pair is outside the table.
  PrecomputedReaction at(int user_id, int msg_id) const;

  void set(int user_id, int msg_id, int reaction_index,
           std::optional<bool> will_visit);

  // CSV dump: user_id,msg_id,reaction_index,will_visit (blank when not drawn).
  void write_csv(std::ostream& out) const;

 private:
  struct Cell {
    std::uint8_t index = 0;
    std::int8_t visit = -1;  // -1 not drawn, else 0/1
  };

  std::size_t offset(int user_id, int msg_id) const;

  int user_count_ = 0;
  int message_count_ = 0;
  std::vector<Cell> cells_;
};

// Left edge of the reaction draw interval: popularity plus the keyword-match
// bonus 100*k/l, clamped to 100. Messages without keywords contribute no
// keyword term.
double reaction_lower_bound(const Message& msg, const UserProfile& user);

// Draws uniform(lower_bound, 100) and maps it through the base intervals laid
// out weakest to strongest over [0, 100]. Intervals are right-open except the
// last, which is closed at 100.
int draw_reaction(const std::vector<double>& base, double lower_bound,
                  RngStream& stream);

// One reaction per (user, message) pair, message-major order. Event messages
// hitting the maximal reaction additionally draw a Bernoulli(visit_probability)
// attendance decision.
PrecomputedTable precompute_all(const std::vector<UserProfile>& users,
                                const std::vector<Message>& messages,
                                double visit_probability, RngStream& stream);

// The runtime reception flow for the first reception of msg by user:
// late event -> angry with the weakest reaction; emergency received inside
// the danger zone -> flee directive; maximal reaction on an event message
// with a positive attendance decision -> visit directive; otherwise just the
// precomputed reaction.
ReactionOutcome on_receive(const UserProfile& user, const Message& msg,
                           SimTime now, const Position& position,
                           const PrecomputedTable& table);

}  // namespace oppsim
