#pragma once

#include <map>
#include <set>

#include "manet/routing.hpp"

namespace manet {

class Dsdv : public RoutingProtocol {
 public:
  Dsdv(ProtoEnv env, const ProtoConfig& cfg);

  const char* name() const override { return "dsdv"; }
  void start() override;
  void on_app_data(Packet pkt) override;
  void on_receive(const Packet& pkt, NodeId from) override;
  void on_link_result(NodeId next, const Packet& pkt, bool success) override;

  bool route_known(NodeId dest) const override;
  int route_hops(NodeId dest) const override;
  NodeId route_next(NodeId dest) const override;

 private:
  struct Rt {
    NodeId next = -1;
    std::uint32_t hops = kDsdvInfinity;
    std::uint32_t seq = 0;  // even = reachable, odd = break marker
  };

  double now() const { return env_.queue->now(); }
  void full_dump();
  void send_update(const std::vector<DsdvEntry>& entries);
  void handle_update(const DsdvUpdateBody& b, NodeId from);
  void link_break(NodeId nb);
  void schedule_trigger();
  void trigger_fire();
  void forward_data(Packet pkt);

  ProtoEnv env_;
  ProtoConfig cfg_;
  std::map<NodeId, Rt> table_;
  std::uint32_t own_seq_ = 0;
  std::map<NodeId, double> last_heard_;  // neighbor -> last update time
  std::set<NodeId> changed_;
  EventQueue::Handle trigger_handle_ = EventQueue::kInvalidHandle;
  double last_sent_ = -1e300;
};

}  // namespace manet
