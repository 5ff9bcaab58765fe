#pragma once

// Common surface of the three routing protocols.  A protocol instance is
// one node's state machine; instances interact only through link-layer
// frames.  The environment is a bundle of callbacks so protocols can run
// under the contention MAC, the ideal link, or a bare test harness.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "manet/event_queue.hpp"
#include "manet/metrics.hpp"
#include "manet/packet.hpp"
#include "manet/rng.hpp"
#include "manet/types.hpp"

namespace manet {

struct ProtoConfig {
  // AODV
  double hello_interval_s = 1.0;
  int allowed_hello_loss = 2;
  double active_route_timeout_s = 10.0;
  int rreq_retries = 3;          // after the first flood
  double rreq_timeout_s = 0.5;   // doubles per retry
  // DSR
  int cache_size = 64;
  bool reply_from_cache = true;
  bool gratuitous_replies = false;  // reserved; off
  // Shared reactive send buffer
  int send_buffer_size = 64;
  double send_buffer_timeout_s = 30.0;
  // DSDV
  double dump_interval_s = 15.0;
  bool triggered_updates = true;
  double min_update_gap_s = 1.5;

  int ttl = 32;
};

struct ProtoEnv {
  NodeId self = -1;
  int n_nodes = 0;
  EventQueue* queue = nullptr;
  RngStream* rng = nullptr;
  std::function<bool()> alive;                     // optional
  std::function<void(Packet, NodeId)> send;        // to the link layer
  std::function<void(const Packet&)> deliver_up;   // data arrived here
  std::function<std::uint64_t()> next_uid;
  std::function<void(std::uint64_t, DropReason)> drop;  // data packet fate
  std::function<void()> discard;                   // bad control, counted
};

class RoutingProtocol {
 public:
  virtual ~RoutingProtocol() = default;
  virtual const char* name() const = 0;
  virtual void start() = 0;
  virtual void on_app_data(Packet pkt) = 0;
  virtual void on_receive(const Packet& pkt, NodeId from) = 0;
  virtual void on_link_result(NodeId next, const Packet& pkt,
                              bool success) = 0;

  // Converged-state introspection for the shortest-path comparisons.
  virtual bool route_known(NodeId dest) const = 0;
  virtual int route_hops(NodeId dest) const = 0;  // -1 when unknown
  virtual NodeId route_next(NodeId dest) const = 0;
  virtual std::vector<NodeId> source_route(NodeId dest) const {
    (void)dest;
    return {};
  }

 protected:
  bool self_alive(const ProtoEnv& env) const {
    return !env.alive || env.alive();
  }
};

std::unique_ptr<RoutingProtocol> make_protocol(const std::string& name,
                                               ProtoEnv env,
                                               const ProtoConfig& cfg);

}  // namespace manet
