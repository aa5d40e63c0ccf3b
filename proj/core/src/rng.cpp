#include "oppsim/rng.hpp"

#include <cmath>
#include <numbers>

#include "oppsim/errors.hpp"

namespace oppsim {
namespace {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::string_view stream_id)
    : id_(stream_id),
      engine_(splitmix64(master_seed ^ fnv1a64(stream_id))) {}

double RngStream::next_u01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  if (lo > hi) {
    throw InvertedRangeError("uniform: lo > hi");
  }
  if (lo == hi) {
    return lo;
  }
  return lo + (hi - lo) * next_u01();
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) {
    throw InvertedRangeError("uniform_int: lo > hi");
  }
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) {  // full 64-bit range
    return static_cast<std::int64_t>(engine_());
  }
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

double RngStream::exponential(double mean) {
  return -mean * std::log1p(-next_u01());
}

double RngStream::normal(double mu, double sigma) {
  // u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - next_u01();
  const double u2 = next_u01();
  const double z = std::sqrt(-2.0 * std::log(u1)) *
                   std::cos(2.0 * std::numbers::pi * u2);
  return mu + sigma * z;
}

double RngStream::log_normal(double mu, double sigma) {
  return std::exp(normal(mu, sigma));
}

double RngStream::power_law(double lo, double hi, double slope) {
  const double e = 1.0 - slope;
  const double a = std::pow(lo, e);
  const double b = std::pow(hi, e);
  return std::pow(a + next_u01() * (b - a), 1.0 / e);
}

std::size_t RngStream::pick_weighted(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) {
    total += w;
  }
  if (total <= 0.0) {
    return static_cast<std::size_t>(
        uniform_int(0, static_cast<std::int64_t>(weights.size()) - 1));
  }
  const double u = next_u01() * total;
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    cum += weights[i];
    if (u < cum) {
      return i;
    }
  }
  return weights.size() - 1;
}

}  // namespace oppsim
