#include "oppsim/dissemination.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>

#include "oppsim/errors.hpp"

namespace oppsim {

std::vector<std::pair<int, int>> scan_contacts(
    const std::vector<Position>& positions, double contact_radius_m) {
  std::vector<std::pair<int, int>> pairs;
  const int n = static_cast<int>(positions.size());
  if (n < 2 || contact_radius_m <= 0.0) {
    return pairs;
  }

  // Bucket by radius-sized cells; only the 3x3 neighborhood can contain a
  // node within range.
  const double cell = contact_radius_m;
  const auto key = [cell](const Position& p) {
    const auto cx = static_cast<std::int64_t>(std::floor(p.x / cell));
    const auto cy = static_cast<std::int64_t>(std::floor(p.y / cell));
    return (static_cast<std::uint64_t>(cx) << 32) ^
           static_cast<std::uint32_t>(cy);
  };

  std::unordered_map<std::uint64_t, std::vector<int>> buckets;
  buckets.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    buckets[key(positions[i])].push_back(i);
  }

  for (int i = 0; i < n; ++i) {
    const auto cx = static_cast<std::int64_t>(std::floor(positions[i].x / cell));
    const auto cy = static_cast<std::int64_t>(std::floor(positions[i].y / cell));
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const std::uint64_t k = (static_cast<std::uint64_t>(cx + dx) << 32) ^
                                static_cast<std::uint32_t>(cy + dy);
        const auto it = buckets.find(k);
        if (it == buckets.end()) {
          continue;
        }
        for (int j : it->second) {
          if (j > i && distance(positions[i], positions[j]) <= contact_radius_m) {
            pairs.emplace_back(i, j);
          }
        }
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

Dissemination::Dissemination(int node_count, int message_count)
    : message_count_(message_count),
      buffers_(static_cast<std::size_t>(node_count)),
      injected_(static_cast<std::size_t>(message_count), false) {
  const std::size_t words = (static_cast<std::size_t>(message_count) + 63) / 64;
  for (auto& b : buffers_) {
    b.words.assign(words, 0);
  }
}

bool Dissemination::holds(int node, int msg_id) const {
  const auto& w = buffers_[static_cast<std::size_t>(node)].words;
  return (w[static_cast<std::size_t>(msg_id) / 64] >>
          (static_cast<std::size_t>(msg_id) % 64)) &
         1u;
}

int Dissemination::held_count(int node) const {
  return buffers_[static_cast<std::size_t>(node)].held;
}

void Dissemination::deliver(int to_node, int msg_id, int from_node,
                            SimTime now) {
  if (holds(to_node, msg_id)) {
    log_.push_back(ReceptionEvent{now, msg_id, to_node, from_node, true});
    return;
  }
  auto& buf = buffers_[static_cast<std::size_t>(to_node)];
  buf.words[static_cast<std::size_t>(msg_id) / 64] |=
      std::uint64_t{1} << (static_cast<std::size_t>(msg_id) % 64);
  buf.held += 1;
  log_.push_back(ReceptionEvent{now, msg_id, to_node, from_node, false});
  if (hook_) {
    hook_(to_node, msg_id, from_node, now);
  }
}

void Dissemination::inject(int msg_id, int origin, SimTime now) {
  if (injected_[static_cast<std::size_t>(msg_id)]) {
    throw DuplicateInjectionError("message " + std::to_string(msg_id) +
                                  " injected twice");
  }
  injected_[static_cast<std::size_t>(msg_id)] = true;
  deliver(origin, msg_id, origin, now);
}

void Dissemination::exchange(int a, int b, SimTime now) {
  const auto& wa = buffers_[static_cast<std::size_t>(a)].words;
  const auto& wb = buffers_[static_cast<std::size_t>(b)].words;

  // Word-level summary-vector diff, both directions computed before any
  // transfer is applied.
  std::vector<int> to_a;
  std::vector<int> to_b;
  for (std::size_t w = 0; w < wa.size(); ++w) {
    std::uint64_t a_missing = wb[w] & ~wa[w];
    std::uint64_t b_missing = wa[w] & ~wb[w];
    while (a_missing != 0) {
      const int bit = std::countr_zero(a_missing);
      to_a.push_back(static_cast<int>(w * 64) + bit);
      a_missing &= a_missing - 1;
    }
    while (b_missing != 0) {
      const int bit = std::countr_zero(b_missing);
      to_b.push_back(static_cast<int>(w * 64) + bit);
      b_missing &= b_missing - 1;
    }
  }

  const int lo = std::min(a, b);
  const int hi = std::max(a, b);
  const auto& to_lo = (lo == a) ? to_a : to_b;
  const auto& to_hi = (lo == a) ? to_b : to_a;
  for (int msg : to_lo) {
    deliver(lo, msg, hi, now);
  }
  for (int msg : to_hi) {
    deliver(hi, msg, lo, now);
  }
}

}  // namespace oppsim
