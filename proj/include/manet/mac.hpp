#pragma once

// Simplified CSMA/CA.  One transmit pipeline per node: head-of-line frame,
// carrier sense with deferral, random slotted backoff, re-sense at the
// chosen slot, then an unslotted transmission.  Unicast data waits for a
// short ack frame; a missed ack doubles the contention window and retries
// up to the limit.  Receivers resolve frames when they end: decodable iff
// power >= rx_thresh, the node was not transmitting meanwhile, and the
// frame beats the summed interference by the capture ratio.

#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <vector>

#include "manet/channel.hpp"
#include "manet/energy.hpp"
#include "manet/event_queue.hpp"
#include "manet/link_layer.hpp"
#include "manet/metrics.hpp"
#include "manet/rng.hpp"

namespace manet {

struct MacConfig {
  double slot_s = 20e-6;
  double sifs_s = 10e-6;
  int cw_min = 32;
  int cw_max = 1024;
  int retry_limit = 7;     // retransmissions after the first unicast attempt
  int header_bytes = 58;   // added to every frame except acks
  int ack_bytes = 14;
  int ifq_capacity = 50;
  double capture_ratio = 10.0;  // linear power ratio
  double rate_bps = 2.0e6;
  bool control_first = true;    // control class jumps the data class
  bool rx_addressed_only = false;
};

class CsmaMac : public LinkLayer {
 public:
  CsmaMac(EventQueue& q, Channel& ch, EnergyModel& energy,
          MetricsLedger& metrics, const MacConfig& cfg,
          std::uint64_t master_seed);

  void send(NodeId from, Packet pkt, NodeId next_hop) override;
  void node_died(NodeId node) override;

  std::uint64_t frames_sent() const { return frames_sent_; }

 private:
  struct Outgoing {
    Packet pkt;
    NodeId next = kBroadcast;
    int attempts = 0;
    int cw = 0;
    DropReason last_fail = DropReason::BelowThresh;
  };

  struct FrameCtx {
    Packet pkt;
    NodeId tx = -1;
    NodeId next = kBroadcast;  // ack target for ack frames
    bool broadcast = false;
    bool is_ack = false;
  };

  struct NodeState {
    std::deque<Outgoing> q_ctrl, q_data;
    std::optional<Outgoing> cur;
    bool waiting_ack = false;
    EventQueue::Handle timer = EventQueue::kInvalidHandle;  // backoff/defer/ack
    RngStream rng;
    explicit NodeState(RngStream r) : rng(std::move(r)) {}
  };

  NodeState& st(NodeId n) { return nodes_[static_cast<std::size_t>(n)]; }
  std::size_t queued(const NodeState& s) const {
    return s.q_ctrl.size() + s.q_data.size();
  }

  void kick(NodeId n);           // engage next queued frame if idle
  void access(NodeId n);         // sense; defer or draw backoff
  void start_tx(NodeId n);       // re-sense and put the frame on air
  void transmit(NodeId n, const FrameCtx& ctx, std::uint64_t bits);
  void on_frame_end(std::uint64_t id);
  void send_ack(NodeId from, NodeId to, std::uint64_t acked_uid);
  void on_ack(NodeId n, std::uint64_t acked_uid);
  void ack_timeout(NodeId n);
  void give_up(NodeId n);        // retries exhausted on cur
  void finish_current(NodeId n);
  void drop_packet(const Packet& pkt, DropReason r);
  double frame_duration(std::uint64_t bits) const {
    return static_cast<double>(bits) / cfg_.rate_bps;
  }
  std::uint64_t frame_bits(const Packet& pkt) const;

  EventQueue& queue_;
  Channel& channel_;
  EnergyModel& energy_;
  MetricsLedger& metrics_;
  MacConfig cfg_;
  std::vector<NodeState> nodes_;
  std::unordered_map<std::uint64_t, FrameCtx> ctx_;  // keyed by frame id
  std::uint64_t frames_sent_ = 0;
};

}  // namespace manet
