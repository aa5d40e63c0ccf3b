#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "oppsim/errors.hpp"

namespace oppsim {

// Simulated seconds since t = 0.
using SimTime = double;

struct DispatchRecord {
  SimTime time = 0.0;
  std::uint64_t sequence = 0;
  std::string label;
};

// Single-threaded discrete-event queue keyed by (fire_time, sequence).
// Events with equal fire times dispatch in scheduling order, which is what
// makes runs with simultaneous events reproducible.
class EventQueue {
 public:
  using Handler = std::function<void()>;

  SimTime now() const { return now_; }
  std::size_t pending() const { return heap_.size(); }

  // Queues fn to run at fire_time. Throws PastEventError when fire_time is
  // before now(). Scheduling at exactly now() from inside a handler is fine.
  void schedule(SimTime fire_time, std::string label, Handler fn);

  // Dispatches every event with fire_time <= t_end in (time, sequence) order
  // and leaves the clock at exactly t_end. Returns the dispatch count.
  std::size_t run_until(SimTime t_end);

  // Optional record of every dispatched event, for replay comparison.
  void set_dispatch_log(std::vector<DispatchRecord>* log) { log_ = log; }

 private:
  struct Entry {
    SimTime time;
    std::uint64_t seq;
    std::string label;
    Handler fn;
  };

  // Min-heap on (time, seq) via std::push_heap/pop_heap so entries can be
  // moved out (std::priority_queue only exposes a const top).
  static bool later(const Entry& a, const Entry& b) {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }

  std::vector<Entry> heap_;
  SimTime now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::vector<DispatchRecord>* log_ = nullptr;
};

}  // namespace oppsim
