#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace oppsim {

// Named deterministic random stream. The same (master_seed, stream_id) pair
// always produces the same draw sequence, and distinct ids are seeded
// independently, so adding draws to one stream never perturbs another.
//
// All floating-point sampling is built on top of next_u01() instead of the
// std::* distribution classes, whose output is implementation-defined and
// would break replay across standard libraries.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::string_view stream_id);

  const std::string& id() const { return id_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double next_u01();

  // Uniform in [lo, hi); lo == hi returns lo. Throws InvertedRangeError when
  // lo > hi.
  double uniform(double lo, double hi);

  // Uniform integer in [lo, hi], both inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  bool bernoulli(double p) { return next_u01() < p; }

  // Exponential with the given mean (inverse transform).
  double exponential(double mean);

  // Box-Muller; one draw per call.
  double normal(double mu, double sigma);

  double log_normal(double mu, double sigma);

  // Truncated power law on [lo, hi] with pdf proportional to x^(-slope),
  // slope > 1 (the SWIM wait-time law).
  double power_law(double lo, double hi, double slope);

  // Index sampled proportionally to the (non-negative) weights. A zero total
  // falls back to uniform over all indices.
  std::size_t pick_weighted(const std::vector<double>& weights);

 private:
  std::string id_;
  std::mt19937_64 engine_;
};

}  // namespace oppsim
