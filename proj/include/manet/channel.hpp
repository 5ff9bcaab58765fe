#pragma once

// The shared radio medium.  When a frame starts, the received power at
// every node is computed once (batch path-loss kernels plus one fading
// draw per receiver, in node order) and fixed for the frame's lifetime.
// Frames are kept after they end for as long as a still-active frame
// could overlap them, so interference sums at resolution time see every
// overlapping transmission.

#include <cstdint>
#include <vector>

#include "manet/mobility.hpp"
#include "manet/propagation.hpp"
#include "manet/rng.hpp"
#include "manet/types.hpp"

namespace manet {

class Channel {
 public:
  struct Frame {
    std::uint64_t id;
    NodeId tx;
    double tx_power_w;
    double start, end;
    bool resolved = false;        // end_frame() has run
    std::vector<double> power_w;  // received power per node; 0 at tx
  };

  Channel(const RadioParams& rp, const FadingSpec& spec, Mobility* mobility,
          std::uint64_t master_seed);

  // For static-topology tests: fixed positions instead of a mobility model.
  Channel(const RadioParams& rp, const FadingSpec& spec,
          std::vector<std::pair<double, double>> positions,
          std::uint64_t master_seed);

  const RadioParams& radio() const { return rp_; }
  int nodes() const { return n_; }

  std::uint64_t begin_frame(NodeId tx, double now, double duration);
  // Marks the frame resolved; its record survives until no active frame
  // can overlap it.
  void end_frame(std::uint64_t id);
  const Frame* frame(std::uint64_t id) const;

  // Busy if the node itself is on air or any other frame arrives at or
  // above the carrier-sense threshold.  A frame occupies [start, end).
  bool busy_at(NodeId node, double now) const;
  double busy_until(NodeId node, double now) const;

  // Sum of the powers of all other frames overlapping `id` at `node`.
  double interference_w(NodeId node, std::uint64_t id) const;

  // Whether `node` transmitted during any part of [start, end).
  bool own_tx_overlaps(NodeId node, double start, double end) const;

 private:
  void fill_powers(NodeId tx, double now, std::vector<double>& out);
  void prune();

  RadioParams rp_;
  FadingSpec spec_;
  Mobility* mobility_;  // null for static positions
  std::vector<double> static_x_, static_y_;
  int n_;
  RngStream fading_;
  std::uint64_t next_id_ = 1;
  std::vector<Frame> frames_;       // active + recently ended
  std::vector<double> scratch_x_, scratch_y_, scratch_d2_, scratch_p_;
};

}  // namespace manet
