#include "manet/aodv.hpp"

#include <algorithm>

namespace manet {

Aodv::Aodv(ProtoEnv env, const ProtoConfig& cfg)
    : env_(std::move(env)), cfg_(cfg) {}

void Aodv::start() {
  double jitter = env_.rng->uniform(0.75, 1.25);
  env_.queue->schedule(now() + jitter * cfg_.hello_interval_s,
                       [this] { send_hello(); });
  env_.queue->schedule(now() + cfg_.hello_interval_s,
                       [this] { liveness_check(); });
}

void Aodv::send_hello() {
  if (self_alive(env_)) {
    Packet p;
    p.kind = PacketKind::AodvHello;
    p.uid = env_.next_uid();
    p.src = env_.self;
    p.dst = kBroadcast;
    p.ttl = 1;
    p.body = AodvHelloBody{own_seq_};
    env_.send(std::move(p), kBroadcast);
  }
  double jitter = env_.rng->uniform(0.75, 1.25);
  env_.queue->schedule(now() + jitter * cfg_.hello_interval_s,
                       [this] { send_hello(); });
}

void Aodv::liveness_check() {
  double deadline =
      static_cast<double>(cfg_.allowed_hello_loss) * cfg_.hello_interval_s;
  std::vector<NodeId> lost;
  for (const auto& [nb, t] : last_heard_) {
    if (now() - t > deadline) lost.push_back(nb);
  }
  for (NodeId nb : lost) link_break(nb);
  env_.queue->schedule(now() + cfg_.hello_interval_s,
                       [this] { liveness_check(); });
}

Aodv::Rt* Aodv::find_valid(NodeId dest) {
  auto it = table_.find(dest);
  if (it == table_.end()) return nullptr;
  if (!it->second.valid || it->second.expiry <= now()) return nullptr;
  return &it->second;
}

bool Aodv::update_route(NodeId dest, NodeId next, std::uint32_t hops,
                        std::uint32_t seq, bool seq_valid, double lifetime) {
  auto it = table_.find(dest);
  bool accept;
  if (it == table_.end()) {
    accept = true;
  } else {
    Rt& cur = it->second;
    bool expired = !cur.valid || cur.expiry <= now();
    if (!seq_valid) {
      accept = expired;
    } else if (!cur.seq_valid) {
      accept = true;
    } else if (seq > cur.seq) {
      accept = true;
    } else if (seq == cur.seq) {
      accept = hops < cur.hops || expired;
    } else {
      accept = false;
    }
  }
  if (!accept) {
    // A confirming advertisement for the installed route still refreshes.
    if (it != table_.end() && it->second.valid && it->second.next == next &&
        it->second.hops == hops) {
      it->second.expiry = std::max(it->second.expiry, now() + lifetime);
    }
    return false;
  }
  Rt& rt = table_[dest];
  // Stored sequence numbers never move backwards.
  if (rt.seq_valid && seq_valid && seq < rt.seq) seq = rt.seq;
  rt.next = next;
  rt.hops = hops;
  if (seq_valid) {
    rt.seq = seq;
    rt.seq_valid = true;
  }
  rt.valid = true;
  rt.expiry = now() + lifetime;
  return true;
}

void Aodv::refresh(NodeId dest) {
  auto it = table_.find(dest);
  if (it != table_.end() && it->second.valid) {
    it->second.expiry =
        std::max(it->second.expiry, now() + cfg_.active_route_timeout_s);
  }
}

void Aodv::neighbor_heard(NodeId nb) {
  last_heard_[nb] = now();
  // Any decoded frame proves a working 1-hop link.
  update_route(nb, nb, 1, 0, false,
               static_cast<double>(cfg_.allowed_hello_loss + 1) *
                   cfg_.hello_interval_s);
}

void Aodv::buffer_packet(Packet pkt) {
  if (buffer_.size() >= static_cast<std::size_t>(cfg_.send_buffer_size)) {
    env_.drop(buffer_.front().pkt.uid, DropReason::QueueOverflow);
    buffer_.pop_front();
  }
  buffer_.push_back(Buffered{std::move(pkt), now()});
}

void Aodv::on_app_data(Packet pkt) {
  NodeId dest = pkt.dst;
  if (dest == env_.self) {
    env_.deliver_up(pkt);
    return;
  }
  pkt.ttl = cfg_.ttl;
  if (Rt* rt = find_valid(dest)) {
    refresh(dest);
    refresh(rt->next);
    env_.send(std::move(pkt), rt->next);
    return;
  }
  buffer_packet(std::move(pkt));
  start_discovery(dest);
}

void Aodv::start_discovery(NodeId dest) {
  if (pending_.count(dest) != 0) return;
  ++own_seq_;
  std::uint32_t id = next_rreq_id_++;
  auto it = table_.find(dest);
  AodvRreqBody b;
  b.origin = env_.self;
  b.dest = dest;
  b.rreq_id = id;
  b.origin_seq = own_seq_;
  if (it != table_.end() && it->second.seq_valid) {
    b.dest_seq = it->second.seq;
    b.dest_seq_known = true;
  }
  Packet p;
  p.kind = PacketKind::AodvRreq;
  p.uid = env_.next_uid();
  p.src = env_.self;
  p.dst = kBroadcast;
  p.ttl = cfg_.ttl;
  p.body = b;
  env_.send(std::move(p), kBroadcast);
  Pending& pd = pending_[dest];
  pd.tries = 0;
  pd.timer = env_.queue->schedule(now() + cfg_.rreq_timeout_s,
                                  [this, dest] { discovery_retry(dest); });
}

void Aodv::discovery_retry(NodeId dest) {
  auto it = pending_.find(dest);
  if (it == pending_.end()) return;
  Pending& pd = it->second;
  if (pd.tries >= cfg_.rreq_retries) {
    pending_.erase(it);
    // Discovery failed; everything waiting on this destination dies.
    for (auto bi = buffer_.begin(); bi != buffer_.end();) {
      if (bi->pkt.dst == dest) {
        env_.drop(bi->pkt.uid, DropReason::NoRoute);
        bi = buffer_.erase(bi);
      } else {
        ++bi;
      }
    }
    return;
  }
  ++pd.tries;
  std::uint32_t id = next_rreq_id_++;
  auto rt = table_.find(dest);
  AodvRreqBody b;
  b.origin = env_.self;
  b.dest = dest;
  b.rreq_id = id;
  b.origin_seq = own_seq_;
  if (rt != table_.end() && rt->second.seq_valid) {
    b.dest_seq = rt->second.seq;
    b.dest_seq_known = true;
  }
  Packet p;
  p.kind = PacketKind::AodvRreq;
  p.uid = env_.next_uid();
  p.src = env_.self;
  p.dst = kBroadcast;
  p.ttl = cfg_.ttl;
  p.body = b;
  env_.send(std::move(p), kBroadcast);
  double wait = cfg_.rreq_timeout_s * static_cast<double>(1u << pd.tries);
  pd.timer = env_.queue->schedule(now() + wait,
                                  [this, dest] { discovery_retry(dest); });
}

void Aodv::flush_buffer(NodeId dest) {
  for (auto bi = buffer_.begin(); bi != buffer_.end();) {
    Rt* rt = find_valid(dest);
    if (rt == nullptr) break;
    if (bi->pkt.dst == dest) {
      Packet pkt = std::move(bi->pkt);
      bi = buffer_.erase(bi);
      refresh(dest);
      refresh(rt->next);
      env_.send(std::move(pkt), rt->next);
    } else {
      ++bi;
    }
  }
}

void Aodv::on_receive(const Packet& pkt, NodeId from) {
  neighbor_heard(from);
  switch (pkt.kind) {
    case PacketKind::AodvHello: {
      const auto& b = std::get<AodvHelloBody>(pkt.body);
      update_route(from, from, 1, b.seq, true,
                   static_cast<double>(cfg_.allowed_hello_loss + 1) *
                       cfg_.hello_interval_s);
      return;
    }
    case PacketKind::AodvRreq:
      handle_rreq(pkt, from);
      return;
    case PacketKind::AodvRrep:
      handle_rrep(pkt, from);
      return;
    case PacketKind::AodvRerr:
      handle_rerr(pkt, from);
      return;
    case PacketKind::Data: {
      if (pkt.dst == env_.self) {
        refresh(pkt.src);
        env_.deliver_up(pkt);
        return;
      }
      Packet fwd = pkt;
      --fwd.ttl;
      if (fwd.ttl <= 0) {
        env_.drop(fwd.uid, DropReason::NoRoute);
        return;
      }
      if (Rt* rt = find_valid(fwd.dst)) {
        refresh(fwd.dst);
        refresh(rt->next);
        refresh(pkt.src);
        env_.send(std::move(fwd), rt->next);
        return;
      }
      // Forwarding hole: report and drop.
      auto it = table_.find(fwd.dst);
      std::uint32_t seq = it != table_.end() ? it->second.seq + 1 : 1;
      send_rerr({{fwd.dst, seq}});
      env_.drop(fwd.uid, DropReason::NoRoute);
      return;
    }
    default:
      return;
  }
}

void Aodv::handle_rreq(Packet pkt, NodeId from) {
  auto b = std::get<AodvRreqBody>(pkt.body);
  if (b.origin == env_.self) return;  // echo of our own flood

  // Reverse route toward the origin through the sender.
  update_route(b.origin, from, b.hop_count + 1, b.origin_seq, true,
               cfg_.active_route_timeout_s);

  auto key = std::make_pair(b.origin, b.rreq_id);
  auto seen = seen_.find(key);
  bool improved = false;
  if (seen != seen_.end()) {
    if (b.hop_count + 1 >= seen->second.best_hops) return;  // duplicate
    seen->second.best_hops = b.hop_count + 1;
    improved = true;  // better copy: update state, reply if we are the
                      // destination, but never re-flood
  } else {
    seen_.emplace(key, Seen{now(), b.hop_count + 1});
  }

  if (b.dest == env_.self) {
    if (b.dest_seq_known && b.dest_seq > own_seq_) own_seq_ = b.dest_seq;
    ++own_seq_;
    AodvRrepBody r;
    r.origin = b.origin;
    r.dest = env_.self;
    r.dest_seq = own_seq_;
    r.hop_count = 0;
    r.lifetime_s = cfg_.active_route_timeout_s;
    Packet rp;
    rp.kind = PacketKind::AodvRrep;
    rp.uid = env_.next_uid();
    rp.src = env_.self;
    rp.dst = b.origin;
    rp.ttl = cfg_.ttl;
    rp.body = r;
    if (Rt* rev = find_valid(b.origin)) {
      env_.send(std::move(rp), rev->next);
    } else {
      env_.discard();
    }
    return;
  }
  if (improved) return;

  // Intermediate reply when our cached route is at least as fresh.
  Rt* rt = find_valid(b.dest);
  if (rt != nullptr && rt->seq_valid &&
      (!b.dest_seq_known || rt->seq >= b.dest_seq)) {
    AodvRrepBody r;
    r.origin = b.origin;
    r.dest = b.dest;
    r.dest_seq = rt->seq;
    r.hop_count = rt->hops;
    r.lifetime_s = std::max(0.0, rt->expiry - now());
    Packet rp;
    rp.kind = PacketKind::AodvRrep;
    rp.uid = env_.next_uid();
    rp.src = env_.self;
    rp.dst = b.origin;
    rp.ttl = cfg_.ttl;
    rp.body = r;
    if (Rt* rev = find_valid(b.origin)) {
      rt->precursors.insert(rev->next);
      env_.send(std::move(rp), rev->next);
      return;
    }
  }

  if (pkt.ttl <= 1) return;
  Packet fwd = std::move(pkt);
  --fwd.ttl;
  ++b.hop_count;
  fwd.body = b;
  env_.send(std::move(fwd), kBroadcast);
}

void Aodv::handle_rrep(Packet pkt, NodeId from) {
  auto b = std::get<AodvRrepBody>(pkt.body);
  update_route(b.dest, from, b.hop_count + 1, b.dest_seq, true,
               b.lifetime_s > 0.0 ? b.lifetime_s
                                  : cfg_.active_route_timeout_s);
  if (b.origin == env_.self) {
    auto pd = pending_.find(b.dest);
    if (pd != pending_.end()) {
      env_.queue->cancel(pd->second.timer);
      pending_.erase(pd);
    }
    flush_buffer(b.dest);
    return;
  }
  Rt* rev = find_valid(b.origin);
  if (rev == nullptr) {
    env_.discard();  // nobody to hand the reply to
    return;
  }
  Packet fwd = std::move(pkt);
  --fwd.ttl;
  if (fwd.ttl <= 0) {
    env_.discard();
    return;
  }
  ++b.hop_count;
  fwd.body = b;
  auto fr = table_.find(b.dest);
  if (fr != table_.end()) fr->second.precursors.insert(rev->next);
  auto rr = table_.find(b.origin);
  if (rr != table_.end()) rr->second.precursors.insert(from);
  env_.send(std::move(fwd), rev->next);
}

void Aodv::handle_rerr(const Packet& pkt, NodeId from) {
  const auto& b = std::get<AodvRerrBody>(pkt.body);
  std::vector<std::pair<NodeId, std::uint32_t>> propagate;
  for (const auto& [dest, seq] : b.unreachable) {
    auto it = table_.find(dest);
    if (it == table_.end()) continue;
    Rt& rt = it->second;
    if (!rt.valid || rt.next != from) continue;
    rt.valid = false;
    rt.seq = std::max(rt.seq, seq);
    rt.seq_valid = true;
    if (!rt.precursors.empty()) propagate.emplace_back(dest, rt.seq);
  }
  if (!propagate.empty()) send_rerr(propagate);
}

void Aodv::send_rerr(
    const std::vector<std::pair<NodeId, std::uint32_t>>& unreachable) {
  Packet p;
  p.kind = PacketKind::AodvRerr;
  p.uid = env_.next_uid();
  p.src = env_.self;
  p.dst = kBroadcast;
  p.ttl = 1;
  p.body = AodvRerrBody{unreachable};
  env_.send(std::move(p), kBroadcast);
}

void Aodv::link_break(NodeId nb) {
  last_heard_.erase(nb);
  std::vector<std::pair<NodeId, std::uint32_t>> lost;
  for (auto& [dest, rt] : table_) {
    if (rt.valid && rt.next == nb) {
      rt.valid = false;
      if (rt.seq_valid) ++rt.seq;
      if (!rt.precursors.empty() || dest == nb) {
        lost.emplace_back(dest, rt.seq);
      }
    }
  }
  if (!lost.empty()) send_rerr(lost);
}

void Aodv::on_link_result(NodeId next, const Packet& pkt, bool success) {
  if (success) {
    last_heard_[next] = now();
    return;
  }
  // The packet itself was already written off by the link layer; route
  // state through this neighbor is now suspect.
  (void)pkt;
  link_break(next);
}

bool Aodv::route_known(NodeId dest) const {
  return const_cast<Aodv*>(this)->find_valid(dest) != nullptr;
}

int Aodv::route_hops(NodeId dest) const {
  Rt* rt = const_cast<Aodv*>(this)->find_valid(dest);
  return rt != nullptr ? static_cast<int>(rt->hops) : -1;
}

NodeId Aodv::route_next(NodeId dest) const {
  Rt* rt = const_cast<Aodv*>(this)->find_valid(dest);
  return rt != nullptr ? rt->next : -1;
}

}  // namespace manet
