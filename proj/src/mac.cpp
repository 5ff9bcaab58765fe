#include "manet/mac.hpp"

#include <algorithm>
#include <string>

namespace manet {

CsmaMac::CsmaMac(EventQueue& q, Channel& ch, EnergyModel& energy,
                 MetricsLedger& metrics, const MacConfig& cfg,
                 std::uint64_t master_seed)
    : queue_(q), channel_(ch), energy_(energy), metrics_(metrics), cfg_(cfg) {
  int n = ch.nodes();
  nodes_.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    nodes_.emplace_back(RngStream(master_seed, "mac/" + std::to_string(i)));
  }
}

std::uint64_t CsmaMac::frame_bits(const Packet& pkt) const {
  if (pkt.kind == PacketKind::MacAck) {
    return static_cast<std::uint64_t>(cfg_.ack_bytes) * 8;
  }
  return static_cast<std::uint64_t>(pkt.size_bytes() + cfg_.header_bytes) * 8;
}

void CsmaMac::drop_packet(const Packet& pkt, DropReason r) {
  if (pkt.kind == PacketKind::Data) metrics_.data_dropped(pkt.uid, r);
}

void CsmaMac::send(NodeId from, Packet pkt, NodeId next_hop) {
  if (!energy_.alive(from)) {
    drop_packet(pkt, DropReason::Energy);
    return;
  }
  NodeState& s = st(from);
  if (queued(s) >= static_cast<std::size_t>(cfg_.ifq_capacity)) {
    drop_packet(pkt, DropReason::QueueOverflow);
    return;
  }
  Outgoing o;
  o.pkt = std::move(pkt);
  o.next = next_hop;
  o.cw = cfg_.cw_min;
  if (cfg_.control_first && is_control(o.pkt.kind)) {
    s.q_ctrl.push_back(std::move(o));
  } else {
    s.q_data.push_back(std::move(o));
  }
  kick(from);
}

void CsmaMac::kick(NodeId n) {
  NodeState& s = st(n);
  if (s.cur.has_value()) return;
  if (!s.q_ctrl.empty()) {
    s.cur = std::move(s.q_ctrl.front());
    s.q_ctrl.pop_front();
  } else if (!s.q_data.empty()) {
    s.cur = std::move(s.q_data.front());
    s.q_data.pop_front();
  } else {
    return;
  }
  access(n);
}

void CsmaMac::access(NodeId n) {
  NodeState& s = st(n);
  if (!energy_.alive(n)) {
    node_died(n);
    return;
  }
  double now = queue_.now();
  if (channel_.busy_at(n, now)) {
    double until = channel_.busy_until(n, now);
    s.timer = queue_.schedule(until, [this, n] {
      st(n).timer = EventQueue::kInvalidHandle;
      access(n);
    });
    return;
  }
  auto slots = s.rng.below(static_cast<std::uint64_t>(s.cur->cw));
  s.timer = queue_.schedule(now + static_cast<double>(slots) * cfg_.slot_s,
                            [this, n] {
                              st(n).timer = EventQueue::kInvalidHandle;
                              start_tx(n);
                            });
}

void CsmaMac::start_tx(NodeId n) {
  NodeState& s = st(n);
  if (!energy_.alive(n)) {
    node_died(n);
    return;
  }
  if (channel_.busy_at(n, queue_.now())) {
    access(n);  // someone grabbed the medium during our backoff
    return;
  }
  FrameCtx ctx;
  ctx.pkt = s.cur->pkt;
  ctx.tx = n;
  ctx.next = s.cur->next;
  ctx.broadcast = s.cur->next == kBroadcast;
  ctx.is_ack = false;
  ++s.cur->attempts;
  transmit(n, ctx, frame_bits(ctx.pkt));
}

void CsmaMac::transmit(NodeId n, const FrameCtx& ctx, std::uint64_t bits) {
  double now = queue_.now();
  double dur = frame_duration(bits);
  std::uint64_t id = channel_.begin_frame(n, now, dur);
  ctx_.emplace(id, ctx);
  ++frames_sent_;
  if (is_control(ctx.pkt.kind)) metrics_.control_packet();
  // Debit after the frame is on air: a battery that dies paying for this
  // transmission still emits it.
  energy_.debit_tx(n, bits);
  queue_.schedule(now + dur, [this, id] { on_frame_end(id); });
}

void CsmaMac::on_frame_end(std::uint64_t id) {
  FrameCtx ctx = std::move(ctx_.at(id));
  ctx_.erase(id);
  const Channel::Frame* f = channel_.frame(id);
  std::uint64_t bits = frame_bits(ctx.pkt);
  int n_nodes = channel_.nodes();

  // The transmitter's head-of-line slot, unless it died mid-frame.
  Outgoing* tx_cur = nullptr;
  {
    NodeState& ts = st(ctx.tx);
    if (!ctx.is_ack && ts.cur.has_value() && ts.cur->pkt.uid == ctx.pkt.uid) {
      tx_cur = &*ts.cur;
    }
  }

  for (NodeId u = 0; u < n_nodes; ++u) {
    if (u == ctx.tx) continue;
    bool addressed_data = !ctx.is_ack && !ctx.broadcast && u == ctx.next;
    if (!energy_.alive(u)) continue;
    double p = f->power_w[static_cast<std::size_t>(u)];
    if (p < channel_.radio().rx_thresh_w) {
      if (addressed_data && tx_cur) tx_cur->last_fail = DropReason::BelowThresh;
      continue;
    }
    if (channel_.own_tx_overlaps(u, f->start, f->end)) {
      if (addressed_data && tx_cur) tx_cur->last_fail = DropReason::Collision;
      continue;
    }
    double interf = channel_.interference_w(u, id);
    if (p < cfg_.capture_ratio * interf) {
      metrics_.mac_collision();
      if (addressed_data && tx_cur) tx_cur->last_fail = DropReason::Collision;
      continue;
    }
    // Decoded at u.
    bool addressed = ctx.broadcast || u == ctx.next;
    if (addressed || !cfg_.rx_addressed_only) energy_.debit_rx(u, bits);
    if (ctx.is_ack) {
      if (u == ctx.next) on_ack(u, ctx.pkt.acked_uid);
      continue;
    }
    if (addressed_data) {
      // The sender keeps retrying until an ack arrives; if none ever
      // does even though the data got through, the loss is an ack loss.
      if (tx_cur) tx_cur->last_fail = DropReason::RetryLimit;
      NodeId tx = ctx.tx;
      std::uint64_t acked = ctx.pkt.uid;
      queue_.schedule(f->end + cfg_.sifs_s,
                      [this, u, tx, acked] { send_ack(u, tx, acked); });
    }
    if (addressed && cb_ != nullptr) cb_->mac_deliver(u, ctx.pkt, ctx.tx, true);
  }

  if (!ctx.is_ack) {
    NodeState& s = st(ctx.tx);
    if (s.cur.has_value() && s.cur->pkt.uid == ctx.pkt.uid) {
      if (ctx.broadcast) {
        finish_current(ctx.tx);  // fire and forget
      } else {
        s.waiting_ack = true;
        double ack_dur =
            frame_duration(static_cast<std::uint64_t>(cfg_.ack_bytes) * 8);
        double deadline =
            f->end + cfg_.sifs_s + ack_dur + 2.0 * cfg_.slot_s;
        NodeId tx = ctx.tx;
        s.timer = queue_.schedule(deadline, [this, tx] {
          st(tx).timer = EventQueue::kInvalidHandle;
          ack_timeout(tx);
        });
      }
    }
  }
  channel_.end_frame(id);
}

void CsmaMac::send_ack(NodeId from, NodeId to, std::uint64_t acked_uid) {
  if (!energy_.alive(from)) return;
  double ack_dur =
      frame_duration(static_cast<std::uint64_t>(cfg_.ack_bytes) * 8);
  double now = queue_.now();
  // Half-duplex: a node that started transmitting meanwhile skips the ack.
  if (channel_.own_tx_overlaps(from, now, now + ack_dur)) return;
  FrameCtx ctx;
  ctx.pkt.kind = PacketKind::MacAck;
  ctx.pkt.src = from;
  ctx.pkt.dst = to;
  ctx.pkt.acked_uid = acked_uid;
  ctx.tx = from;
  ctx.next = to;
  ctx.is_ack = true;
  transmit(from, ctx, static_cast<std::uint64_t>(cfg_.ack_bytes) * 8);
}

void CsmaMac::on_ack(NodeId n, std::uint64_t acked_uid) {
  NodeState& s = st(n);
  if (!s.cur.has_value() || !s.waiting_ack) return;
  if (s.cur->pkt.uid != acked_uid) return;
  queue_.cancel(s.timer);
  s.timer = EventQueue::kInvalidHandle;
  s.waiting_ack = false;
  if (cb_ != nullptr) cb_->mac_link_result(n, s.cur->next, s.cur->pkt, true);
  finish_current(n);
}

void CsmaMac::ack_timeout(NodeId n) {
  NodeState& s = st(n);
  if (!s.cur.has_value()) return;
  s.waiting_ack = false;
  if (s.cur->attempts > cfg_.retry_limit) {
    give_up(n);
    return;
  }
  s.cur->cw = std::min(s.cur->cw * 2, cfg_.cw_max);
  access(n);
}

void CsmaMac::give_up(NodeId n) {
  NodeState& s = st(n);
  drop_packet(s.cur->pkt, s.cur->last_fail);
  if (cb_ != nullptr) cb_->mac_link_result(n, s.cur->next, s.cur->pkt, false);
  finish_current(n);
}

void CsmaMac::finish_current(NodeId n) {
  NodeState& s = st(n);
  s.cur.reset();
  kick(n);
}

void CsmaMac::node_died(NodeId n) {
  NodeState& s = st(n);
  if (s.timer != EventQueue::kInvalidHandle) {
    queue_.cancel(s.timer);
    s.timer = EventQueue::kInvalidHandle;
  }
  s.waiting_ack = false;
  if (s.cur.has_value()) {
    drop_packet(s.cur->pkt, DropReason::Energy);
    s.cur.reset();
  }
  for (auto& o : s.q_ctrl) drop_packet(o.pkt, DropReason::Energy);
  for (auto& o : s.q_data) drop_packet(o.pkt, DropReason::Energy);
  s.q_ctrl.clear();
  s.q_data.clear();
}

}  // namespace manet
