#include "oppsim/kernel.hpp"

#include <algorithm>
#include <utility>

namespace oppsim {

void EventQueue::schedule(SimTime fire_time, std::string label, Handler fn) {
  if (fire_time < now_) {
    throw PastEventError("schedule: fire_time " + std::to_string(fire_time) +
                         " is before now " + std::to_string(now_));
  }
  heap_.push_back(Entry{fire_time, next_seq_++, std::move(label), std::move(fn)});
  std::push_heap(heap_.begin(), heap_.end(), later);
}

std::size_t EventQueue::run_until(SimTime t_end) {
  if (t_end < now_) {
    throw SimError("run_until: t_end is before now");
  }
  std::size_t dispatched = 0;
  while (!heap_.empty() && heap_.front().time <= t_end) {
    std::pop_heap(heap_.begin(), heap_.end(), later);
    Entry e = std::move(heap_.back());
    heap_.pop_back();
    now_ = e.time;
    if (log_ != nullptr) {
      log_->push_back(DispatchRecord{e.time, e.seq, e.label});
    }
    e.fn();
    ++dispatched;
  }
  now_ = t_end;
  return dispatched;
}

}  // namespace oppsim
