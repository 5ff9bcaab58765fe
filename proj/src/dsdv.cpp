#include "manet/dsdv.hpp"

namespace manet {

Dsdv::Dsdv(ProtoEnv env, const ProtoConfig& cfg)
    : env_(std::move(env)), cfg_(cfg) {
  table_[env_.self] = Rt{env_.self, 0, 0};
}

void Dsdv::start() {
  // Stagger the first dump so colocated nodes do not advertise in lockstep.
  double first = now() + env_.rng->uniform();
  env_.queue->schedule(first, [this] { full_dump(); });
}

void Dsdv::full_dump() {
  own_seq_ += 2;
  table_[env_.self].seq = own_seq_;

  // Age out neighbors that have gone silent for two dump periods.
  std::vector<NodeId> stale;
  for (const auto& [nb, t] : last_heard_) {
    if (now() - t > 2.0 * cfg_.dump_interval_s) stale.push_back(nb);
  }
  for (NodeId nb : stale) {
    last_heard_.erase(nb);
    link_break(nb);
  }

  std::vector<DsdvEntry> entries;
  entries.reserve(table_.size());
  for (const auto& [dest, rt] : table_) {
    entries.push_back(DsdvEntry{dest, rt.seq, rt.hops});
  }
  send_update(entries);
  changed_.clear();

  // Fresh jitter each cycle keeps the per-node dump phases from locking
  // into a repeating burst.
  double wait = cfg_.dump_interval_s - 0.5 + env_.rng->uniform();
  env_.queue->schedule(now() + wait, [this] { full_dump(); });
}

void Dsdv::send_update(const std::vector<DsdvEntry>& entries) {
  if (entries.empty() || !self_alive(env_)) return;
  DsdvUpdateBody b;
  b.entries = entries;
  Packet p;
  p.kind = PacketKind::DsdvUpdate;
  p.uid = env_.next_uid();
  p.src = env_.self;
  p.dst = kBroadcast;
  p.ttl = 1;
  p.body = std::move(b);
  env_.send(std::move(p), kBroadcast);
  last_sent_ = now();
}

void Dsdv::schedule_trigger() {
  if (!cfg_.triggered_updates) return;
  if (trigger_handle_ != EventQueue::kInvalidHandle) return;
  double at = now() + 0.5 * env_.rng->uniform();
  double gap_ok = last_sent_ + cfg_.min_update_gap_s;
  if (at < gap_ok) at = gap_ok;
  trigger_handle_ = env_.queue->schedule(at, [this] { trigger_fire(); });
}

void Dsdv::trigger_fire() {
  trigger_handle_ = EventQueue::kInvalidHandle;
  if (changed_.empty()) return;
  std::vector<DsdvEntry> entries;
  // Lead with our own entry: receivers treat any update as proof that the
  // sender is a one-hop neighbor, so new links surface at trigger speed
  // instead of waiting for the next full dump.
  const Rt& self_rt = table_[env_.self];
  entries.push_back(DsdvEntry{env_.self, self_rt.seq, 0});
  for (NodeId dest : changed_) {
    if (dest == env_.self) continue;
    auto it = table_.find(dest);
    if (it == table_.end()) continue;
    entries.push_back(DsdvEntry{dest, it->second.seq, it->second.hops});
  }
  changed_.clear();
  send_update(entries);
}

void Dsdv::handle_update(const DsdvUpdateBody& b, NodeId from) {
  last_heard_[from] = now();
  for (const DsdvEntry& e : b.entries) {
    if (e.dest == env_.self) {
      // Someone is advertising our demise; supersede with a fresher even seq.
      if (e.hops == kDsdvInfinity && (e.seq & 1u) && e.seq > own_seq_) {
        own_seq_ = e.seq + 1;
        table_[env_.self].seq = own_seq_;
        changed_.insert(env_.self);
        schedule_trigger();
      }
      continue;
    }
    std::uint32_t nh = e.hops == kDsdvInfinity ? kDsdvInfinity : e.hops + 1;
    auto it = table_.find(e.dest);
    if (it == table_.end()) {
      if (nh == kDsdvInfinity) continue;  // nothing to forget
      table_[e.dest] = Rt{from, nh, e.seq};
      changed_.insert(e.dest);
      schedule_trigger();
      continue;
    }
    Rt& cur = it->second;
    bool accept =
        e.seq > cur.seq || (e.seq == cur.seq && nh < cur.hops);
    if (!accept) {
      // The sender is advertising a detour at least two hops longer than
      // a route we hold at the same or fresher sequence number: a renewal
      // that raced around the long way.  Re-advertising our route now
      // heals the neighborhood within the trigger gap instead of leaving
      // the detour in place until the next full dump.
      if (cur.hops != kDsdvInfinity &&
          (e.hops == kDsdvInfinity || e.hops > cur.hops + 1)) {
        changed_.insert(e.dest);
        schedule_trigger();
      }
      continue;
    }
    bool material = cur.next != from || cur.hops != nh;
    cur.next = from;
    cur.hops = nh;
    cur.seq = e.seq;
    if (material) {
      changed_.insert(e.dest);
      schedule_trigger();
    }
  }
}

void Dsdv::link_break(NodeId nb) {
  bool any = false;
  for (auto& [dest, rt] : table_) {
    if (dest == env_.self) continue;
    if (rt.next != nb || rt.hops == kDsdvInfinity) continue;
    rt.hops = kDsdvInfinity;
    rt.seq += 1;  // odd: break marker, fresher than the last even
    changed_.insert(dest);
    any = true;
  }
  if (any) schedule_trigger();
}

void Dsdv::forward_data(Packet pkt) {
  auto it = table_.find(pkt.dst);
  if (it == table_.end() || it->second.hops == kDsdvInfinity) {
    env_.drop(pkt.uid, DropReason::NoRoute);
    return;
  }
  env_.send(std::move(pkt), it->second.next);
}

void Dsdv::on_app_data(Packet pkt) {
  if (pkt.dst == env_.self) {
    env_.deliver_up(pkt);
    return;
  }
  pkt.ttl = cfg_.ttl;
  forward_data(std::move(pkt));
}

void Dsdv::on_receive(const Packet& pkt, NodeId from) {
  last_heard_[from] = now();  // any frame heard proves the link is up
  switch (pkt.kind) {
    case PacketKind::DsdvUpdate:
      handle_update(std::get<DsdvUpdateBody>(pkt.body), from);
      return;
    case PacketKind::Data: {
      if (pkt.dst == env_.self) {
        env_.deliver_up(pkt);
        return;
      }
      Packet fwd = pkt;
      --fwd.ttl;
      if (fwd.ttl <= 0) {
        env_.drop(fwd.uid, DropReason::NoRoute);
        return;
      }
      forward_data(std::move(fwd));
      return;
    }
    default:
      return;
  }
}

void Dsdv::on_link_result(NodeId next, const Packet& pkt, bool success) {
  (void)pkt;
  if (success) {
    last_heard_[next] = now();
    return;
  }
  link_break(next);
}

bool Dsdv::route_known(NodeId dest) const {
  auto it = table_.find(dest);
  return it != table_.end() && it->second.hops != kDsdvInfinity;
}

int Dsdv::route_hops(NodeId dest) const {
  auto it = table_.find(dest);
  if (it == table_.end() || it->second.hops == kDsdvInfinity) return -1;
  return static_cast<int>(it->second.hops);
}

NodeId Dsdv::route_next(NodeId dest) const {
  auto it = table_.find(dest);
  if (it == table_.end() || it->second.hops == kDsdvInfinity) return -1;
  return it->second.next;
}

}  // namespace manet
