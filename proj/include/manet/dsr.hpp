#pragma once

#include <deque>
#include <map>

#include "manet/routing.hpp"

namespace manet {

class Dsr : public RoutingProtocol {
 public:
  Dsr(ProtoEnv env, const ProtoConfig& cfg);

  const char* name() const override { return "dsr"; }
  void start() override;
  void on_app_data(Packet pkt) override;
  void on_receive(const Packet& pkt, NodeId from) override;
  void on_link_result(NodeId next, const Packet& pkt, bool success) override;

  bool route_known(NodeId dest) const override;
  int route_hops(NodeId dest) const override;
  NodeId route_next(NodeId dest) const override;
  std::vector<NodeId> source_route(NodeId dest) const override;

 private:
  struct CacheEntry {
    std::vector<NodeId> path;  // path[0] == self
    mutable double last_used;  // recency only, not route state
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
  void cache_add(std::vector<NodeId> path);
  // Shortest cached source route self..dest (ties: most recently used);
  // empty when none.  Refreshes the winning entry's recency.
  std::vector<NodeId> cache_lookup(NodeId dest, bool touch) const;
  void cache_purge_link(NodeId a, NodeId b);
  static bool has_duplicate(const std::vector<NodeId>& path);

  void start_discovery(NodeId dest);
  void discovery_retry(NodeId dest);
  void flush_buffer(NodeId dest);
  void buffer_packet(Packet pkt);
  void buffer_sweep();
  void send_along(Packet pkt);  // forward per pkt.sr_hops / sr_index

  void handle_rreq(Packet pkt, NodeId from);
  void handle_rrep(const Packet& pkt);
  void handle_rerr(const Packet& pkt);
  void handle_data(const Packet& pkt);
  void send_rrep(std::vector<NodeId> full_route,
                 std::vector<NodeId> back_route);

  ProtoEnv env_;
  ProtoConfig cfg_;
  std::vector<CacheEntry> cache_;
  std::uint32_t next_rreq_id_ = 0;
  std::map<std::pair<NodeId, std::uint32_t>, double> seen_;
  std::map<NodeId, Pending> pending_;
  std::deque<Buffered> buffer_;
};

}  // namespace manet
