#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "oppsim/geometry.hpp"
#include "oppsim/kernel.hpp"

namespace oppsim {

struct ReceptionEvent {
  SimTime time = 0.0;
  int msg_id = 0;
  int to_node = 0;
  int from_node = 0;
  bool was_duplicate = false;
};

// All unordered node pairs within contact_radius (Euclidean, inclusive),
// returned ascending as (min_id, max_id). Grid-bucketed by radius-sized
// cells; output-equivalent to the quadratic all-pairs check.
std::vector<std::pair<int, int>> scan_contacts(
    const std::vector<Position>& positions, double contact_radius_m);

// Summary-vector anti-entropy over proximity contacts: at every exchange each
// side receives the messages it lacks. Unlimited bandwidth, zero latency
// inside a tick; the protocol is deliberately minimal plumbing.
class Dissemination {
 public:
  // First reception of msg_id by to_node; duplicates never reach the hook.
  using ReceiveHook =
      std::function<void(int to_node, int msg_id, int from_node, SimTime now)>;

  Dissemination(int node_count, int message_count);

  void set_receive_hook(ReceiveHook hook) { hook_ = std::move(hook); }

  // Message enters the origin's buffer; the origin reacts to it like any
  // other reception. Throws DuplicateInjectionError on a second injection.
  void inject(int msg_id, int origin, SimTime now);

  // Anti-entropy between two nodes in contact. The side with the smaller id
  // receives first; transfers go in ascending msg_id order.
  void exchange(int a, int b, SimTime now);

  // Guarded single-message transfer. Already-held messages are logged with
  // was_duplicate=true and do not fire the hook.
  void deliver(int to_node, int msg_id, int from_node, SimTime now);

  bool holds(int node, int msg_id) const;
  int held_count(int node) const;
  int node_count() const { return static_cast<int>(buffers_.size()); }
  int message_count() const { return message_count_; }

  // Time-ordered global reception log (one row per transfer, duplicates
  // included); feeds the metrics overhead counting and events.csv.
  const std::vector<ReceptionEvent>& reception_log() const { return log_; }

 private:
  struct Buffer {
    std::vector<std::uint64_t> words;
    int held = 0;
  };

  int message_count_ = 0;
  std::vector<Buffer> buffers_;
  std::vector<bool> injected_;
  std::vector<ReceptionEvent> log_;
  ReceiveHook hook_;
};

}  // namespace oppsim
