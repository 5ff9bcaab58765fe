#pragma once

// Lossless fixed-latency link over a static topology: every in-range
// delivery arrives exactly hop_latency later, broadcasts fan out in node
// order, unicasts always succeed when the target is in range.  Floods
// therefore arrive in breadth-first order, which makes converged routing
// state comparable against a shortest-path oracle.

#include <vector>

#include "manet/event_queue.hpp"
#include "manet/link_layer.hpp"

namespace manet {

class IdealLink : public LinkLayer {
 public:
  IdealLink(EventQueue& q, std::vector<std::pair<double, double>> positions,
            double range_m, double hop_latency_s = 1e-3);

  void send(NodeId from, Packet pkt, NodeId next_hop) override;

  bool in_range(NodeId a, NodeId b) const;
  int nodes() const { return static_cast<int>(pos_.size()); }

 private:
  EventQueue& queue_;
  std::vector<std::pair<double, double>> pos_;
  double range2_;
  double latency_;
};

}  // namespace manet
