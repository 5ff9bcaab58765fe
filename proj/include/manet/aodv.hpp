#pragma once

#include <deque>
#include <map>
#include <set>

#include "manet/routing.hpp"

namespace manet {

class Aodv : public RoutingProtocol {
 public:
  Aodv(ProtoEnv env, const ProtoConfig& cfg);

  const char* name() const override { return "aodv"; }
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
    std::uint32_t hops = 0;
    std::uint32_t seq = 0;
    bool seq_valid = false;
    bool valid = false;
    double expiry = 0.0;
    std::set<NodeId> precursors;
  };
  struct Buffered {
    Packet pkt;
    double queued_at;
  };
  struct Pending {
    int tries = 0;
    EventQueue::Handle timer = EventQueue::kInvalidHandle;
  };

  double now() const { return env_.queue->now(); }
  Rt* find_valid(NodeId dest);
  bool update_route(NodeId dest, NodeId next, std::uint32_t hops,
                    std::uint32_t seq, bool seq_valid, double lifetime);
  void refresh(NodeId dest);
  void neighbor_heard(NodeId nb);
  void send_hello();
  void liveness_check();
  void start_discovery(NodeId dest);
  void discovery_retry(NodeId dest);
  void flush_buffer(NodeId dest);
  void buffer_packet(Packet pkt);
  void link_break(NodeId nb);
  void send_rerr(
      const std::vector<std::pair<NodeId, std::uint32_t>>& unreachable);

  void handle_rreq(Packet pkt, NodeId from);
  void handle_rrep(Packet pkt, NodeId from);
  void handle_rerr(const Packet& pkt, NodeId from);

  ProtoEnv env_;
  ProtoConfig cfg_;
  std::map<NodeId, Rt> table_;
  std::uint32_t own_seq_ = 0;
  std::uint32_t next_rreq_id_ = 0;
  struct Seen {
    double first_seen;
    std::uint32_t best_hops;
  };
  std::map<std::pair<NodeId, std::uint32_t>, Seen> seen_;
  std::map<NodeId, Pending> pending_;
  std::deque<Buffered> buffer_;
  std::map<NodeId, double> last_heard_;
};

}  // namespace manet
