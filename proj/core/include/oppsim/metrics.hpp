#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oppsim/dissemination.hpp"
#include "oppsim/model.hpp"
#include "oppsim/reaction.hpp"

namespace oppsim {

// Per-(user, message) outcome, the unit the delivery metrics are defined on.
struct DeliveryRecord {
  int user_id = 0;
  int msg_id = 0;
  // Precomputed reaction above ignore: a pair the user would have liked.
  bool wanted = false;
  std::optional<SimTime> first_reception;
  bool on_time = false;
  bool reacted_above_ignore = false;
  bool angry = false;
};

struct UserStats {
  int user_id = 0;
  long long receptions_total = 0;  // duplicates included
  long long successful = 0;
  long long angry = 0;
  std::optional<double> overhead_pct;   // undefined when successful == 0
  std::optional<double> delay_mean_s;   // undefined when successful == 0
};

struct FairnessFigures {
  std::optional<double> jain;  // undefined for an all-zero series
  double p5 = 0.0;
  double p25 = 0.0;
  double p50 = 0.0;
  double p75 = 0.0;
  double p95 = 0.0;
  long long included = 0;
  long long excluded = 0;  // undefined-sentinel entries left out
};

struct SummaryReport {
  std::optional<double> delivery_rate;  // successful / wanted pairs
  std::optional<double> delivery_rate_all_pairs;
  long long wanted_pairs = 0;
  long long successful_pairs = 0;
  long long angry_count = 0;
  long long receptions_total = 0;
  long long duplicate_receptions = 0;

  std::optional<double> delay_mean_s;
  std::optional<double> delay_median_s;
  std::optional<double> delay_p95_s;
  long long delay_count = 0;

  std::optional<double> overhead_mean_pct;
  long long overhead_undefined_users = 0;

  FairnessFigures fairness_successful;  // successful deliveries per user
  FairnessFigures fairness_delay;       // mean delay per user
  FairnessFigures fairness_overhead;    // overhead per user

  std::vector<UserStats> per_user;
};

struct MetricsOptions {
  // When false, the origin's own reception of its message is dropped from
  // every metric (the pair leaves the denominator too).
  bool count_self_reception = true;
};

// Jain fairness index (sum v)^2 / (n * sum v^2); nullopt when sum v^2 == 0.
std::optional<double> jain_index(const std::vector<double>& values);

// Nearest-rank percentile of an ascending-sorted series, p in (0, 100].
double percentile_nearest_rank(const std::vector<double>& sorted, double p);

// Jain index plus 5/25/50/75/95 percentiles over the defined entries;
// undefined entries are excluded and counted.
FairnessFigures fairness(const std::vector<std::optional<double>>& values);

// Accumulates reception events and first-reception outcomes, then folds them
// with the precomputed table into the summary. Streaming results are exactly
// reproducible from the raw logs: sums are taken over ascending-sorted delay
// values and user-id order, so an independent recount matches bit for bit.
class MetricsCollector {
 public:
  MetricsCollector(int user_count, int message_count, MetricsOptions options);

  void on_reception(const ReceptionEvent& ev);
  void on_outcome(const ReactionOutcome& outcome);

  DeliveryRecord record(int user_id, const Message& msg) const;

  SummaryReport finalize(const PrecomputedTable& table,
                         const std::vector<Message>& messages) const;

 private:
  static constexpr std::uint8_t kReceived = 1;
  static constexpr std::uint8_t kAngry = 2;
  static constexpr std::uint8_t kReacted = 4;

  std::size_t offset(int user_id, int msg_id) const;

  int user_count_ = 0;
  int message_count_ = 0;
  MetricsOptions options_;
  std::vector<double> first_time_;
  std::vector<std::uint8_t> flags_;
  std::vector<long long> receptions_;
  std::vector<long long> duplicates_;
};

}  // namespace oppsim
