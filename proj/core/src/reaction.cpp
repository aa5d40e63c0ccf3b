#include "oppsim/reaction.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "oppsim/errors.hpp"
#include "oppsim/io.hpp"

namespace oppsim {

PrecomputedTable::PrecomputedTable(int user_count, int message_count)
    : user_count_(user_count),
      message_count_(message_count),
      cells_(static_cast<std::size_t>(user_count) *
             static_cast<std::size_t>(message_count)) {}

std::size_t PrecomputedTable::offset(int user_id, int msg_id) const {
  if (user_id < 0 || user_id >= user_count_ || msg_id < 0 ||
      msg_id >= message_count_) {
    throw UnknownPairError("no precomputed reaction for user " +
                           std::to_string(user_id) + ", message " +
                           std::to_string(msg_id));
  }
  return static_cast<std::size_t>(user_id) *
             static_cast<std::size_t>(message_count_) +
         static_cast<std::size_t>(msg_id);
}

PrecomputedReaction PrecomputedTable::at(int user_id, int msg_id) const {
  const Cell& c = cells_[offset(user_id, msg_id)];
  PrecomputedReaction r;
  r.user_id = user_id;
  r.msg_id = msg_id;
  r.reaction_index = c.index;
  if (c.visit >= 0) {
    r.will_visit = (c.visit != 0);
  }
  return r;
}

void PrecomputedTable::set(int user_id, int msg_id, int reaction_index,
                           std::optional<bool> will_visit) {
  Cell& c = cells_[offset(user_id, msg_id)];
  c.index = static_cast<std::uint8_t>(reaction_index);
  c.visit = will_visit.has_value() ? (*will_visit ? 1 : 0) : -1;
}

void PrecomputedTable::write_csv(std::ostream& out) const {
  out << "user_id,msg_id,reaction_index,will_visit\n";
  for (int u = 0; u < user_count_; ++u) {
    for (int m = 0; m < message_count_; ++m) {
      const Cell& c = cells_[static_cast<std::size_t>(u) * message_count_ + m];
      out << u << ',' << m << ',' << int(c.index) << ',';
      if (c.visit >= 0) {
        out << int(c.visit);
      }
      out << '\n';
    }
  }
}

double reaction_lower_bound(const Message& msg, const UserProfile& user) {
  double lb = static_cast<double>(msg.popularity);
  if (!msg.keywords.empty()) {
    const int k = matching_keywords(user, msg);
    lb += 100.0 * static_cast<double>(k) /
          static_cast<double>(msg.keywords.size());
  }
  return std::min(lb, 100.0);
}

int draw_reaction(const std::vector<double>& base, double lower_bound,
                  RngStream& stream) {
  const double u = stream.uniform(lower_bound, 100.0);
  double edge = 0.0;
  const int n = static_cast<int>(base.size());
  for (int i = 0; i + 1 < n; ++i) {
    edge += 100.0 * base[i];
    if (u < edge) {
      return i;
    }
  }
  return n - 1;
}

PrecomputedTable precompute_all(const std::vector<UserProfile>& users,
                                const std::vector<Message>& messages,
                                double visit_probability, RngStream& stream) {
  PrecomputedTable table(static_cast<int>(users.size()),
                         static_cast<int>(messages.size()));
  for (const Message& msg : messages) {
    for (const UserProfile& user : users) {
      const double lb = reaction_lower_bound(msg, user);
      const int idx = draw_reaction(user.base, lb, stream);
      std::optional<bool> will_visit;
      if (msg.has_event_window() && idx == user.reactions.max_index()) {
        will_visit = stream.bernoulli(visit_probability);
      }
      table.set(user.user_id, msg.msg_id, idx, will_visit);
    }
  }
  return table;
}

ReactionOutcome on_receive(const UserProfile& user, const Message& msg,
                           SimTime now, const Position& position,
                           const PrecomputedTable& table) {
  const PrecomputedReaction pre = table.at(user.user_id, msg.msg_id);

  ReactionOutcome out;
  out.user_id = user.user_id;
  out.msg_id = msg.msg_id;
  out.reception_time = now;

  if (msg.event_end.has_value() && now > *msg.event_end) {
    out.angry = true;
    out.reaction_index = 0;
    return out;
  }

  out.reaction_index = pre.reaction_index;

  if (msg.is_emergency() &&
      distance(position, *msg.event_addr) <= *msg.danger_radius_m) {
    out.directive = FleeDirective{*msg.event_addr, *msg.danger_radius_m};
    return out;
  }

  if (pre.reaction_index == user.reactions.max_index() &&
      pre.will_visit.value_or(false)) {
    out.directive =
        VisitDirective{*msg.event_addr, *msg.event_start, *msg.event_end};
    return out;
  }

  return out;
}

}  // namespace oppsim
