#include "doctest.h"
#include "oppsim/errors.hpp"
#include "oppsim/model.hpp"

using namespace oppsim;

TEST_SUITE_BEGIN("model");

namespace {

UserProfile user_with(std::vector<std::string> interests) {
  UserProfile u;
  u.interests = std::move(interests);
  canonicalize_keywords(u.interests);
  return u;
}

Message msg_with(std::vector<std::string> keywords) {
  Message m;
  m.keywords = std::move(keywords);
  canonicalize_keywords(m.keywords);
  return m;
}

}  // namespace

TEST_CASE("matching_keywords counts the intersection") {
  CHECK(matching_keywords(user_with({"sale", "food"}),
                          msg_with({"food", "sports"})) == 1);
  CHECK(matching_keywords(user_with({}), msg_with({"concert"})) == 0);
  CHECK(matching_keywords(user_with({"a", "b", "c"}),
                          msg_with({"a", "b", "c"})) == 3);
}

TEST_CASE("matching is case-insensitive and trimmed") {
  CHECK(matching_keywords(user_with({"Happy Hour "}),
                          msg_with({"happy hour"})) == 1);
}

TEST_CASE("event window must be ordered") {
  Message m;
  m.event_start = 1000.0;
  m.event_end = 1000.0;
  m.event_addr = Position{1.0, 2.0};
  CHECK_THROWS_AS(check_message(m), SimError);
  m.event_end = 2000.0;
  CHECK_NOTHROW(check_message(m));
}

TEST_CASE("start and end come together") {
  Message m;
  m.event_start = 10.0;
  CHECK(!message_violations(m).empty());
  m.event_start.reset();
  m.event_end = 10.0;
  CHECK(!message_violations(m).empty());
}

TEST_CASE("window needs an address") {
  Message m;
  m.event_start = 10.0;
  m.event_end = 20.0;
  CHECK(!message_violations(m).empty());
  m.event_addr = Position{0.0, 0.0};
  CHECK(message_violations(m).empty());
}

TEST_CASE("popularity is percent-bounded") {
  Message m;
  m.popularity = 101;
  CHECK(!message_violations(m).empty());
  m.popularity = -1;
  CHECK(!message_violations(m).empty());
  m.popularity = 100;
  CHECK(message_violations(m).empty());
}

TEST_CASE("emergencies carry an address but need no window") {
  Message m;
  m.danger_radius_m = 300.0;
  CHECK(!message_violations(m).empty());  // no danger center
  m.event_addr = Position{5.0, 5.0};
  CHECK(message_violations(m).empty());
  CHECK(m.is_emergency());
  CHECK(!m.has_event_window());
}

TEST_CASE("a bare address is reserved for emergencies") {
  Message m;
  m.event_addr = Position{5.0, 5.0};
  CHECK(!message_violations(m).empty());
}

TEST_SUITE_END();
