#include "manet/ideal_link.hpp"

namespace manet {

IdealLink::IdealLink(EventQueue& q,
                     std::vector<std::pair<double, double>> positions,
                     double range_m, double hop_latency_s)
    : queue_(q),
      pos_(std::move(positions)),
      range2_(range_m * range_m),
      latency_(hop_latency_s) {}

bool IdealLink::in_range(NodeId a, NodeId b) const {
  auto [ax, ay] = pos_[static_cast<std::size_t>(a)];
  auto [bx, by] = pos_[static_cast<std::size_t>(b)];
  double dx = ax - bx;
  double dy = ay - by;
  return dx * dx + dy * dy <= range2_;
}

void IdealLink::send(NodeId from, Packet pkt, NodeId next_hop) {
  double at = queue_.now() + latency_;
  if (next_hop == kBroadcast) {
    for (NodeId u = 0; u < nodes(); ++u) {
      if (u == from || !in_range(from, u)) continue;
      queue_.schedule(at, [this, u, pkt, from] {
        if (cb_ != nullptr) cb_->mac_deliver(u, pkt, from, true);
      });
    }
    return;
  }
  if (in_range(from, next_hop)) {
    queue_.schedule(at, [this, next_hop, pkt, from] {
      if (cb_ != nullptr) cb_->mac_deliver(next_hop, pkt, from, true);
    });
    queue_.schedule(at, [this, from, next_hop, pkt] {
      if (cb_ != nullptr) cb_->mac_link_result(from, next_hop, pkt, true);
    });
  } else {
    queue_.schedule(at, [this, from, next_hop, pkt] {
      if (cb_ != nullptr) cb_->mac_link_result(from, next_hop, pkt, false);
    });
  }
}

}  // namespace manet
