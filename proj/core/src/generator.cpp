#include "oppsim/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "oppsim/errors.hpp"
#include "oppsim/io.hpp"

namespace oppsim {
namespace {

constexpr double kDaySeconds = 86400.0;
constexpr double kEveningStart = 18.0 * 3600.0;
constexpr double kEveningEnd = 23.0 * 3600.0;
constexpr double kCenterShare = 0.8;   // city-center mass near the center
constexpr double kEveningShare = 0.7;  // evening/weekend mass in the slots

}  // namespace

Position sample_event_place(PlacePolicy policy, const Area& area,
                            RngStream& stream) {
  if (policy == PlacePolicy::CityCenter && stream.bernoulli(kCenterShare)) {
    const Position c = area.center();
    const double sigma = 0.1 * std::min(area.width_m, area.height_m);
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const Position p{stream.normal(c.x, sigma), stream.normal(c.y, sigma)};
      if (area.contains(p)) {
        return p;
      }
    }
    return c;
  }
  return {stream.uniform(0.0, area.width_m),
          stream.uniform(0.0, area.height_m)};
}

std::pair<SimTime, SimTime> sample_event_time(TimePolicy policy,
                                              SimTime horizon,
                                              RngStream& stream) {
  SimTime start = -1.0;
  if (policy == TimePolicy::EveningWeekend && stream.bernoulli(kEveningShare)) {
    const int days =
        std::max(1, static_cast<int>(std::ceil(horizon / kDaySeconds)));
    std::vector<double> weights(static_cast<std::size_t>(days));
    for (int d = 0; d < days; ++d) {
      const int dow = d % 7;  // day 0 is a Monday; 5, 6 are the weekend
      weights[static_cast<std::size_t>(d)] = (dow >= 5) ? 2.0 : 1.0;
    }
    for (int attempt = 0; attempt < 100; ++attempt) {
      const auto day = static_cast<double>(stream.pick_weighted(weights));
      const SimTime t =
          day * kDaySeconds + stream.uniform(kEveningStart, kEveningEnd);
      if (t < horizon) {
        start = t;
        break;
      }
    }
  }
  if (start < 0.0) {
    start = stream.uniform(0.0, horizon);
  }
  const double duration = stream.uniform(3600.0, 4.0 * 3600.0);
  const SimTime end = std::min(start + duration, horizon);
  return {start, end};
}

int sample_popularity(const std::vector<PopularityBin>& bins,
                      RngStream& stream) {
  std::vector<double> probs;
  probs.reserve(bins.size());
  for (const auto& b : bins) {
    probs.push_back(b.prob);
  }
  const auto& bin = bins[stream.pick_weighted(probs)];
  if (bin.lo == bin.hi) {
    return bin.lo;
  }
  return static_cast<int>(stream.uniform_int(bin.lo, bin.hi));
}

std::vector<std::string> sample_keywords(
    const std::vector<std::string>& vocab, int count, RngStream& stream) {
  const int v = static_cast<int>(vocab.size());
  count = std::min(count, v);
  std::vector<int> idx(static_cast<std::size_t>(v));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const auto j = static_cast<std::size_t>(stream.uniform_int(i, v - 1));
    std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
    out.push_back(vocab[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

InjectionSchedule build_schedule(const ScenarioConfig& cfg,
                                 RngStream& stream) {
  const double mean_interarrival =
      kDaySeconds / cfg.message_rate_per_user_per_day;

  // Creation times first, per user in id order, so the message count and
  // timing never depend on how per-message fields are drawn.
  std::vector<std::pair<SimTime, int>> creations;
  for (int u = 0; u < cfg.user_count; ++u) {
    SimTime t = 0.0;
    for (;;) {
      t += stream.exponential(mean_interarrival);
      if (t >= cfg.run_horizon_s) {
        break;
      }
      creations.emplace_back(t, u);
    }
  }
  std::sort(creations.begin(), creations.end());

  const Area area = cfg.area();
  InjectionSchedule schedule;
  schedule.messages.reserve(creations.size());
  for (std::size_t i = 0; i < creations.size(); ++i) {
    Message m;
    m.msg_id = static_cast<int>(i);
    m.injection_time = creations[i].first;
    m.origin_node = creations[i].second;
    if (cfg.keywords_max > 0) {
      const int count = static_cast<int>(
          stream.uniform_int(cfg.keywords_min, cfg.keywords_max));
      m.keywords = sample_keywords(cfg.keyword_vocabulary, count, stream);
    }
    m.popularity = sample_popularity(cfg.popularity, stream);
    if (cfg.emergency) {
      m.event_addr = sample_event_place(cfg.place_policy, area, stream);
      m.danger_radius_m = cfg.danger_radius_m;
    } else if (cfg.place_policy != PlacePolicy::None) {
      m.event_addr = sample_event_place(cfg.place_policy, area, stream);
      const auto [start, end] =
          sample_event_time(cfg.time_policy, cfg.run_horizon_s, stream);
      m.event_start = start;
      m.event_end = end;
    }
    check_message(m);
    schedule.messages.push_back(std::move(m));
  }
  return schedule;
}

void write_schedule_csv(const InjectionSchedule& schedule, std::ostream& out) {
  out << "injection_time,msg_id,origin,popularity,keywords,start,end,addr_x,"
         "addr_y,radius\n";
  for (const auto& m : schedule.messages) {
    out << fmt_double(m.injection_time) << ',' << m.msg_id << ','
        << m.origin_node << ',' << m.popularity << ',';
    for (std::size_t i = 0; i < m.keywords.size(); ++i) {
      if (i > 0) out << ';';
      out << m.keywords[i];
    }
    out << ',';
    if (m.event_start) out << fmt_double(*m.event_start);
    out << ',';
    if (m.event_end) out << fmt_double(*m.event_end);
    out << ',';
    if (m.event_addr) out << fmt_double(m.event_addr->x);
    out << ',';
    if (m.event_addr) out << fmt_double(m.event_addr->y);
    out << ',';
    if (m.danger_radius_m) out << fmt_double(*m.danger_radius_m);
    out << '\n';
  }
}

}  // namespace oppsim
