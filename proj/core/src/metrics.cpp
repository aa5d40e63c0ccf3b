#include "oppsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oppsim {

std::optional<double> jain_index(const std::vector<double>& values) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : values) {
    sum += v;
    sum_sq += v * v;
  }
  if (sum_sq == 0.0) {
    return std::nullopt;
  }
  return (sum * sum) / (static_cast<double>(values.size()) * sum_sq);
}

double percentile_nearest_rank(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) {
    return 0.0;
  }
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  if (rank < 1) rank = 1;
  if (rank > sorted.size()) rank = sorted.size();
  return sorted[rank - 1];
}

FairnessFigures fairness(const std::vector<std::optional<double>>& values) {
  FairnessFigures f;
  std::vector<double> defined;
  defined.reserve(values.size());
  for (const auto& v : values) {
    if (v.has_value()) {
      defined.push_back(*v);
    } else {
      ++f.excluded;
    }
  }
  f.included = static_cast<long long>(defined.size());
  if (defined.empty()) {
    return f;
  }
  f.jain = jain_index(defined);
  std::sort(defined.begin(), defined.end());
  f.p5 = percentile_nearest_rank(defined, 5.0);
  f.p25 = percentile_nearest_rank(defined, 25.0);
  f.p50 = percentile_nearest_rank(defined, 50.0);
  f.p75 = percentile_nearest_rank(defined, 75.0);
  f.p95 = percentile_nearest_rank(defined, 95.0);
  return f;
}

MetricsCollector::MetricsCollector(int user_count, int message_count,
                                   MetricsOptions options)
    : user_count_(user_count),
      message_count_(message_count),
      options_(options),
      first_time_(static_cast<std::size_t>(user_count) *
                      static_cast<std::size_t>(message_count),
                  std::numeric_limits<double>::quiet_NaN()),
      flags_(static_cast<std::size_t>(user_count) *
                 static_cast<std::size_t>(message_count),
             0),
      receptions_(static_cast<std::size_t>(user_count), 0),
      duplicates_(static_cast<std::size_t>(user_count), 0) {}

std::size_t MetricsCollector::offset(int user_id, int msg_id) const {
  return static_cast<std::size_t>(user_id) *
             static_cast<std::size_t>(message_count_) +
         static_cast<std::size_t>(msg_id);
}

void MetricsCollector::on_reception(const ReceptionEvent& ev) {
  if (!options_.count_self_reception && ev.to_node == ev.from_node) {
    return;
  }
  receptions_[static_cast<std::size_t>(ev.to_node)] += 1;
  if (ev.was_duplicate) {
    duplicates_[static_cast<std::size_t>(ev.to_node)] += 1;
  }
}

void MetricsCollector::on_outcome(const ReactionOutcome& outcome) {
  const std::size_t i = offset(outcome.user_id, outcome.msg_id);
  first_time_[i] = outcome.reception_time;
  std::uint8_t f = kReceived;
  if (outcome.angry) {
    f |= kAngry;
  } else if (outcome.reaction_index > 0) {
    f |= kReacted;
  }
  flags_[i] = f;
}

DeliveryRecord MetricsCollector::record(int user_id, const Message& msg) const {
  DeliveryRecord r;
  r.user_id = user_id;
  r.msg_id = msg.msg_id;
  const std::size_t i = offset(user_id, msg.msg_id);
  const std::uint8_t f = flags_[i];
  if (f & kReceived) {
    r.first_reception = first_time_[i];
    r.angry = (f & kAngry) != 0;
    r.on_time = !r.angry;
    r.reacted_above_ignore = (f & kReacted) != 0;
  }
  return r;
}

SummaryReport MetricsCollector::finalize(
    const PrecomputedTable& table, const std::vector<Message>& messages) const {
  SummaryReport r;
  std::vector<double> delays;
  std::vector<long long> successful(static_cast<std::size_t>(user_count_), 0);
  std::vector<long long> angry(static_cast<std::size_t>(user_count_), 0);
  std::vector<double> delay_sum(static_cast<std::size_t>(user_count_), 0.0);
  std::vector<long long> delay_n(static_cast<std::size_t>(user_count_), 0);

  long long all_pairs = 0;
  for (int u = 0; u < user_count_; ++u) {
    for (const Message& msg : messages) {
      if (!options_.count_self_reception && msg.origin_node == u) {
        continue;
      }
      ++all_pairs;
      if (table.at(u, msg.msg_id).reaction_index > 0) {
        ++r.wanted_pairs;
      }
      const std::uint8_t f = flags_[offset(u, msg.msg_id)];
      if (f & kAngry) {
        ++r.angry_count;
        ++angry[static_cast<std::size_t>(u)];
      }
      if (f & kReacted) {
        ++r.successful_pairs;
        ++successful[static_cast<std::size_t>(u)];
        const double delay =
            first_time_[offset(u, msg.msg_id)] - msg.injection_time;
        delays.push_back(delay);
        delay_sum[static_cast<std::size_t>(u)] += delay;
        delay_n[static_cast<std::size_t>(u)] += 1;
      }
    }
  }

  if (r.wanted_pairs > 0) {
    r.delivery_rate = static_cast<double>(r.successful_pairs) /
                      static_cast<double>(r.wanted_pairs);
  }
  if (all_pairs > 0) {
    r.delivery_rate_all_pairs = static_cast<double>(r.successful_pairs) /
                                static_cast<double>(all_pairs);
  }

  std::sort(delays.begin(), delays.end());
  r.delay_count = static_cast<long long>(delays.size());
  if (!delays.empty()) {
    double sum = 0.0;
    for (double d : delays) {
      sum += d;
    }
    r.delay_mean_s = sum / static_cast<double>(delays.size());
    r.delay_median_s = percentile_nearest_rank(delays, 50.0);
    r.delay_p95_s = percentile_nearest_rank(delays, 95.0);
  }

  std::vector<std::optional<double>> successful_series;
  std::vector<std::optional<double>> delay_series;
  std::vector<std::optional<double>> overhead_series;
  successful_series.reserve(static_cast<std::size_t>(user_count_));
  double overhead_sum = 0.0;
  long long overhead_n = 0;
  r.per_user.reserve(static_cast<std::size_t>(user_count_));
  for (int u = 0; u < user_count_; ++u) {
    const auto ui = static_cast<std::size_t>(u);
    UserStats s;
    s.user_id = u;
    s.receptions_total = receptions_[ui];
    s.successful = successful[ui];
    s.angry = angry[ui];
    if (s.successful > 0) {
      s.overhead_pct = 100.0 * static_cast<double>(s.receptions_total) /
                       static_cast<double>(s.successful);
      overhead_sum += *s.overhead_pct;
      ++overhead_n;
      s.delay_mean_s = delay_sum[ui] / static_cast<double>(delay_n[ui]);
    } else {
      ++r.overhead_undefined_users;
    }
    successful_series.emplace_back(static_cast<double>(s.successful));
    delay_series.push_back(s.delay_mean_s);
    overhead_series.push_back(s.overhead_pct);
    r.receptions_total += s.receptions_total;
    r.duplicate_receptions += duplicates_[ui];
    r.per_user.push_back(s);
  }
  if (overhead_n > 0) {
    r.overhead_mean_pct = overhead_sum / static_cast<double>(overhead_n);
  }

  r.fairness_successful = fairness(successful_series);
  r.fairness_delay = fairness(delay_series);
  r.fairness_overhead = fairness(overhead_series);
  return r;
}

}  // namespace oppsim
