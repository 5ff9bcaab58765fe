#include "manet/event_queue.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace manet {

EventQueue::Handle EventQueue::schedule(Time at, std::function<void()> fn) {
  if (at < now_) {
    throw std::logic_error("event scheduled in the past: t=" +
                           std::to_string(at) + " now=" + std::to_string(now_));
  }
  Handle h = next_seq_++;
  heap_.push(Entry{at, h, h});
  records_.emplace(h, Record{std::move(fn)});
  ++live_;
  return h;
}

void EventQueue::cancel(Handle h) {
  auto it = records_.find(h);
  if (it == records_.end()) return;
  records_.erase(it);
  --live_;
}

bool EventQueue::run_one() {
  while (!heap_.empty()) {
    Entry e = heap_.top();
    heap_.pop();
    auto it = records_.find(e.handle);
    if (it == records_.end()) continue;  // cancelled
    std::function<void()> fn = std::move(it->second.fn);
    records_.erase(it);
    --live_;
    now_ = e.at;
    fn();
    return true;
  }
  return false;
}

void EventQueue::run_until(Time horizon) {
  while (!heap_.empty()) {
    // Skip cancelled entries without advancing the clock.
    Entry e = heap_.top();
    auto it = records_.find(e.handle);
    if (it == records_.end()) {
      heap_.pop();
      continue;
    }
    if (e.at > horizon) break;
    heap_.pop();
    std::function<void()> fn = std::move(it->second.fn);
    records_.erase(it);
    --live_;
    now_ = e.at;
    fn();
  }
  if (horizon != kNever && horizon > now_) now_ = horizon;
}

}  // namespace manet
