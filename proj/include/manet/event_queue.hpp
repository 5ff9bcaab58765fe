#pragma once

// Deterministic discrete-event scheduler.  Events with equal fire times run
// in insertion order, so a run is a pure function of its inputs.

#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "manet/types.hpp"

namespace manet {

class EventQueue {
 public:
  using Handle = std::uint64_t;
  static constexpr Handle kInvalidHandle = 0;

  EventQueue() = default;

  Time now() const { return now_; }
  bool empty() const { return live_ == 0; }
  std::size_t pending() const { return live_; }

  // Throws std::logic_error if `at` precedes the current clock.
  Handle schedule(Time at, std::function<void()> fn);

  // Cancelling an unknown or already-fired handle is a no-op.
  void cancel(Handle h);

  // Runs every event with fire time <= `horizon`.  A finite horizon leaves
  // the clock exactly there; an infinite one leaves it at the last event.
  void run_until(Time horizon);

  bool run_one();  // fires the single next event; false if queue empty

 private:
  struct Entry {
    Time at;
    std::uint64_t seq;
    Handle handle;
    bool operator>(const Entry& o) const {
      if (at != o.at) return at > o.at;
      return seq > o.seq;
    }
  };

  struct Record {
    std::function<void()> fn;
  };

  Time now_ = 0.0;
  std::uint64_t next_seq_ = 1;
  std::size_t live_ = 0;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap_;
  // Records are erased when fired or cancelled; heap entries whose record
  // is gone are skipped lazily.
  std::unordered_map<Handle, Record> records_;
};

}  // namespace manet
