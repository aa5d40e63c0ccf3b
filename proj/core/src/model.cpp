#include "oppsim/model.hpp"

#include <algorithm>
#include <cctype>

#include "oppsim/errors.hpp"

namespace oppsim {

std::string normalize_keyword(std::string_view raw) {
  std::size_t b = 0;
  std::size_t e = raw.size();
  while (b < e && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
  std::string out;
  out.reserve(e - b);
  for (std::size_t i = b; i < e; ++i) {
    out.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(raw[i]))));
  }
  return out;
}

void canonicalize_keywords(std::vector<std::string>& keywords) {
  for (auto& k : keywords) {
    k = normalize_keyword(k);
  }
  std::sort(keywords.begin(), keywords.end());
  keywords.erase(std::unique(keywords.begin(), keywords.end()),
                 keywords.end());
}

int matching_keywords(const UserProfile& user, const Message& msg) {
  // Both lists are sorted and unique.
  int count = 0;
  auto a = user.interests.begin();
  auto b = msg.keywords.begin();
  while (a != user.interests.end() && b != msg.keywords.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

std::vector<std::string> message_violations(const Message& msg) {
  std::vector<std::string> v;
  if (msg.popularity < 0 || msg.popularity > 100) {
    v.push_back("popularity must be in [0, 100]");
  }
  const bool has_start = msg.event_start.has_value();
  const bool has_end = msg.event_end.has_value();
  if (has_start != has_end) {
    v.push_back("event_start and event_end must both be present or absent");
  }
  if (has_start && has_end && !msg.event_addr.has_value()) {
    v.push_back("event window requires event_addr");
  }
  if (has_start && has_end && *msg.event_start >= *msg.event_end) {
    v.push_back("event_start must be before event_end");
  }
  if (msg.danger_radius_m.has_value()) {
    if (!msg.event_addr.has_value()) {
      v.push_back("danger_radius requires event_addr as the danger center");
    }
    if (*msg.danger_radius_m <= 0.0) {
      v.push_back("danger_radius must be positive");
    }
  } else if (msg.event_addr.has_value() && !(has_start && has_end)) {
    // Only emergencies carry a bare address without a time window.
    v.push_back("event_addr without a window is only valid for emergencies");
  }
  return v;
}

void check_message(const Message& msg) {
  const auto v = message_violations(msg);
  if (!v.empty()) {
    std::string what = "invalid message " + std::to_string(msg.msg_id) + ":";
    for (const auto& s : v) {
      what += " " + s + ";";
    }
    throw SimError(what);
  }
}

}  // namespace oppsim
