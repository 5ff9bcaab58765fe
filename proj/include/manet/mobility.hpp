#pragma once

// Random waypoint motion.  Each node repeatedly picks a uniform destination
// in the field, walks there at a uniform random speed, pauses, repeats.
// Legs are advanced lazily as time queries arrive (queries must not go
// backwards, which the event loop guarantees); every node draws from its
// own labeled stream, so one node's history never perturbs another's.

#include <cstdint>
#include <utility>
#include <vector>

#include "manet/rng.hpp"
#include "manet/types.hpp"

namespace manet {

struct MobilityParams {
  double width = 670.0;
  double height = 670.0;
  double v_min = 0.5;   // > 0 avoids the random-waypoint speed decay
  double v_max = 5.0;
  double pause_s = 0.0;
};

struct MotionLeg {
  double origin_x, origin_y;
  double dest_x, dest_y;
  double speed;        // m/s
  double depart;       // leg start time
  double travel;       // seconds in motion
  double pause_after;  // seconds stationary at dest
};

MotionLeg draw_next_leg(double ox, double oy, Time now,
                        const MobilityParams& p, RngStream& rng);

class Mobility {
 public:
  Mobility(int n, const MobilityParams& p, std::uint64_t master_seed);

  int size() const { return static_cast<int>(count_); }

  // Batch positions of all nodes at time t (t non-decreasing across calls).
  void positions(Time t, double* xs, double* ys);

  std::pair<double, double> position_at(NodeId node, Time t);

 private:
  void advance(std::size_t i, Time t);

  MobilityParams params_;
  std::size_t count_;
  std::vector<RngStream> streams_;
  // Structure-of-arrays legs, consumed by the batch kernels.
  std::vector<double> origin_x_, origin_y_, vel_x_, vel_y_;
  std::vector<double> depart_, travel_, leg_end_;
};

}  // namespace manet
