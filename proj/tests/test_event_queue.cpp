#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "manet/event_queue.hpp"
#include "manet/rng.hpp"

using namespace manet;

TEST_CASE("events fire in time order") {
  EventQueue q;
  std::vector<int> order;
  q.schedule(3.0, [&] { order.push_back(3); });
  q.schedule(1.0, [&] { order.push_back(1); });
  q.schedule(2.0, [&] { order.push_back(2); });
  q.run_until(10.0);
  CHECK(order == std::vector<int>{1, 2, 3});
  CHECK(q.now() == 10.0);
  CHECK(q.empty());
}

TEST_CASE("equal fire times break ties by insertion order") {
  EventQueue q;
  std::vector<char> order;
  q.schedule(5.0, [&] { order.push_back('a'); });
  q.schedule(5.0, [&] { order.push_back('b'); });
  q.schedule(5.0, [&] { order.push_back('c'); });
  q.run_until(5.0);
  CHECK(order == std::vector<char>{'a', 'b', 'c'});
}

TEST_CASE("scheduling in the past throws") {
  EventQueue q;
  q.schedule(2.0, [] {});
  q.run_until(2.0);
  CHECK(q.now() == 2.0);
  CHECK_THROWS_AS(q.schedule(1.5, [] {}), std::logic_error);
  CHECK_NOTHROW(q.schedule(2.0, [] {}));  // now is allowed
}

TEST_CASE("cancel prevents firing and is idempotent") {
  EventQueue q;
  int fired = 0;
  auto h = q.schedule(1.0, [&] { ++fired; });
  q.schedule(2.0, [&] { ++fired; });
  q.cancel(h);
  q.cancel(h);                          // already cancelled
  q.cancel(EventQueue::kInvalidHandle); // unknown
  q.run_until(3.0);
  CHECK(fired == 1);
  q.cancel(h);  // already fired epoch; still a no-op
}

TEST_CASE("pending counts live events only") {
  EventQueue q;
  auto a = q.schedule(1.0, [] {});
  q.schedule(2.0, [] {});
  CHECK(q.pending() == 2);
  q.cancel(a);
  CHECK(q.pending() == 1);
  CHECK_FALSE(q.empty());
  q.run_until(5.0);
  CHECK(q.pending() == 0);
  CHECK(q.empty());
}

TEST_CASE("finite horizon leaves the clock exactly there") {
  EventQueue q;
  q.run_until(42.0);  // nothing scheduled
  CHECK(q.now() == 42.0);

  q.schedule(50.0, [] {});
  q.run_until(45.0);  // event beyond horizon does not fire
  CHECK(q.now() == 45.0);
  CHECK(q.pending() == 1);
  q.run_until(50.0);  // boundary event fires
  CHECK(q.pending() == 0);
}

TEST_CASE("infinite horizon stops at the last event") {
  EventQueue q;
  q.schedule(1.0, [] {});
  q.schedule(7.5, [] {});
  q.run_until(kNever);
  CHECK(q.now() == 7.5);
}

TEST_CASE("run_one fires a single event") {
  EventQueue q;
  int fired = 0;
  q.schedule(1.0, [&] { ++fired; });
  q.schedule(2.0, [&] { ++fired; });
  CHECK(q.run_one());
  CHECK(fired == 1);
  CHECK(q.now() == 1.0);
  CHECK(q.run_one());
  CHECK_FALSE(q.run_one());
}

TEST_CASE("callbacks may schedule and cancel") {
  EventQueue q;
  std::vector<int> order;
  EventQueue::Handle victim = EventQueue::kInvalidHandle;
  q.schedule(1.0, [&] {
    order.push_back(1);
    q.schedule(1.0, [&] { order.push_back(2); });  // same time, runs after
    q.cancel(victim);
  });
  victim = q.schedule(3.0, [&] { order.push_back(99); });
  q.schedule(2.0, [&] { order.push_back(3); });
  q.run_until(10.0);
  CHECK(order == std::vector<int>{1, 2, 3});
}

TEST_CASE("random schedules dequeue in nondecreasing time") {
  EventQueue q;
  RngStream rng(7, "eq-test");
  std::vector<double> fired;
  for (int i = 0; i < 500; ++i) {
    double t = rng.uniform(0.0, 100.0);
    q.schedule(t, [&fired, t] { fired.push_back(t); });
  }
  q.run_until(kNever);
  REQUIRE(fired.size() == 500);
  for (std::size_t i = 1; i < fired.size(); ++i) {
    CHECK(fired[i - 1] <= fired[i]);
  }
}
