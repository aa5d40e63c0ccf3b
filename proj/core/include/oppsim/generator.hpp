#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "oppsim/model.hpp"
#include "oppsim/rng.hpp"
#include "oppsim/scenario.hpp"

namespace oppsim {

// The full message schedule, drawn before t=0 so reactions can be
// precomputed over all messages. Sorted by injection time; msg_id equals the
// vector index.
struct InjectionSchedule {
  std::vector<Message> messages;
};

// Per-user Poisson creation processes over [0, horizon), then per-message
// keywords, popularity and event fields per the scenario policies.
InjectionSchedule build_schedule(const ScenarioConfig& cfg, RngStream& stream);

// city-center: 80% Gaussian around the area center (sigma = 10% of the
// smaller dimension, rejection-sampled into bounds), else uniform.
Position sample_event_place(PlacePolicy policy, const Area& area,
                            RngStream& stream);

// evening-weekend: 70% of starts in an 18:00-23:00 slot with weekend days
// twice as likely, else uniform; duration uniform 1-4 h, end clamped to the
// horizon.
std::pair<SimTime, SimTime> sample_event_time(TimePolicy policy,
                                              SimTime horizon,
                                              RngStream& stream);

int sample_popularity(const std::vector<PopularityBin>& bins,
                      RngStream& stream);

// count distinct keywords out of vocab, sorted.
std::vector<std::string> sample_keywords(
    const std::vector<std::string>& vocab, int count, RngStream& stream);

// CSV: injection_time,msg_id,origin,popularity,keywords,start,end,addr_x,
// addr_y,radius. Keywords are ';'-joined; absent fields stay blank.
void write_schedule_csv(const InjectionSchedule& schedule, std::ostream& out);

}  // namespace oppsim
