#pragma once

#include "manet/packet.hpp"
#include "manet/types.hpp"

namespace manet {

struct MacCallbacks {
  // A decoded frame: broadcast, addressed to `at`, or (when the MAC runs
  // promiscuously) overheard.  `addressed` tells which.
  virtual void mac_deliver(NodeId at, const Packet& pkt, NodeId from,
                           bool addressed) = 0;
  // Outcome of a unicast frame from `at` to `next_hop`: ack received, or
  // retries exhausted.  Reported exactly once per accepted frame.
  virtual void mac_link_result(NodeId at, NodeId next_hop, const Packet& pkt,
                               bool success) = 0;
  virtual ~MacCallbacks() = default;
};

class LinkLayer {
 public:
  virtual ~LinkLayer() = default;
  // next_hop == kBroadcast sends unacknowledged to everyone in range.
  virtual void send(NodeId from, Packet pkt, NodeId next_hop) = 0;
  virtual void node_died(NodeId node) { (void)node; }

  void set_callbacks(MacCallbacks* cb) { cb_ = cb; }

 protected:
  MacCallbacks* cb_ = nullptr;
};

}  // namespace manet
