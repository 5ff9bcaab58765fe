#include "manet/dsr.hpp"

#include <algorithm>
#include <set>

namespace manet {

Dsr::Dsr(ProtoEnv env, const ProtoConfig& cfg)
    : env_(std::move(env)), cfg_(cfg) {}

void Dsr::start() {
  env_.queue->schedule(now() + 1.0, [this] { buffer_sweep(); });
}

bool Dsr::has_duplicate(const std::vector<NodeId>& path) {
  std::set<NodeId> seen;
  for (NodeId n : path) {
    if (!seen.insert(n).second) return true;
  }
  return false;
}

void Dsr::cache_add(std::vector<NodeId> path) {
  if (path.size() < 2 || path.front() != env_.self) return;
  if (has_duplicate(path)) return;
  for (CacheEntry& e : cache_) {
    if (e.path == path) {
      e.last_used = now();
      return;
    }
  }
  if (cache_.size() >= static_cast<std::size_t>(cfg_.cache_size)) {
    // Evict the least recently used entry (first of equals).
    auto victim = cache_.begin();
    for (auto it = cache_.begin(); it != cache_.end(); ++it) {
      if (it->last_used < victim->last_used) victim = it;
    }
    cache_.erase(victim);
  }
  cache_.push_back(CacheEntry{std::move(path), now()});
}

std::vector<NodeId> Dsr::cache_lookup(NodeId dest, bool touch) const {
  const CacheEntry* best = nullptr;
  std::size_t best_len = 0;
  for (const CacheEntry& e : cache_) {
    auto it = std::find(e.path.begin(), e.path.end(), dest);
    if (it == e.path.end()) continue;
    auto len = static_cast<std::size_t>(it - e.path.begin()) + 1;
    if (best == nullptr || len < best_len ||
        (len == best_len && e.last_used > best->last_used)) {
      best = &e;
      best_len = len;
    }
  }
  if (best == nullptr) return {};
  if (touch) best->last_used = now();
  return std::vector<NodeId>(best->path.begin(),
                             best->path.begin() + static_cast<long>(best_len));
}

void Dsr::cache_purge_link(NodeId a, NodeId b) {
  std::erase_if(cache_, [&](const CacheEntry& e) {
    for (std::size_t i = 0; i + 1 < e.path.size(); ++i) {
      if ((e.path[i] == a && e.path[i + 1] == b) ||
          (e.path[i] == b && e.path[i + 1] == a)) {
        return true;
      }
    }
    return false;
  });
}

void Dsr::buffer_packet(Packet pkt) {
  if (buffer_.size() >= static_cast<std::size_t>(cfg_.send_buffer_size)) {
    env_.drop(buffer_.front().pkt.uid, DropReason::QueueOverflow);
    buffer_.pop_front();
  }
  buffer_.push_back(Buffered{std::move(pkt), now()});
}

void Dsr::buffer_sweep() {
  while (!buffer_.empty() &&
         now() - buffer_.front().queued_at > cfg_.send_buffer_timeout_s) {
    env_.drop(buffer_.front().pkt.uid, DropReason::NoRoute);
    buffer_.pop_front();
  }
  env_.queue->schedule(now() + 1.0, [this] { buffer_sweep(); });
}

void Dsr::send_along(Packet pkt) {
  auto idx = static_cast<std::size_t>(pkt.sr_index);
  if (idx + 1 >= pkt.sr_hops.size()) {
    if (pkt.kind == PacketKind::Data) {
      env_.drop(pkt.uid, DropReason::NoRoute);
    } else {
      env_.discard();
    }
    return;
  }
  NodeId next = pkt.sr_hops[idx + 1];
  pkt.sr_index = static_cast<int>(idx + 1);
  env_.send(std::move(pkt), next);
}

void Dsr::on_app_data(Packet pkt) {
  if (pkt.dst == env_.self) {
    env_.deliver_up(pkt);
    return;
  }
  std::vector<NodeId> route = cache_lookup(pkt.dst, true);
  if (!route.empty()) {
    pkt.ttl = cfg_.ttl;
    pkt.sr_hops = std::move(route);
    pkt.sr_index = 0;
    send_along(std::move(pkt));
    return;
  }
  NodeId dest = pkt.dst;
  buffer_packet(std::move(pkt));
  start_discovery(dest);
}

void Dsr::start_discovery(NodeId dest) {
  if (pending_.count(dest) != 0) return;
  std::uint32_t id = next_rreq_id_++;
  DsrRreqBody b;
  b.origin = env_.self;
  b.dest = dest;
  b.rreq_id = id;
  b.path = {env_.self};
  Packet p;
  p.kind = PacketKind::DsrRreq;
  p.uid = env_.next_uid();
  p.src = env_.self;
  p.dst = kBroadcast;
  p.ttl = cfg_.ttl;
  p.body = std::move(b);
  env_.send(std::move(p), kBroadcast);
  Pending& pd = pending_[dest];
  pd.tries = 0;
  pd.timer = env_.queue->schedule(now() + cfg_.rreq_timeout_s,
                                  [this, dest] { discovery_retry(dest); });
}

void Dsr::discovery_retry(NodeId dest) {
  auto it = pending_.find(dest);
  if (it == pending_.end()) return;
  Pending& pd = it->second;
  if (pd.tries >= cfg_.rreq_retries) {
    pending_.erase(it);
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
  DsrRreqBody b;
  b.origin = env_.self;
  b.dest = dest;
  b.rreq_id = next_rreq_id_++;
  b.path = {env_.self};
  Packet p;
  p.kind = PacketKind::DsrRreq;
  p.uid = env_.next_uid();
  p.src = env_.self;
  p.dst = kBroadcast;
  p.ttl = cfg_.ttl;
  p.body = std::move(b);
  env_.send(std::move(p), kBroadcast);
  double wait = cfg_.rreq_timeout_s * static_cast<double>(1u << pd.tries);
  pd.timer = env_.queue->schedule(now() + wait,
                                  [this, dest] { discovery_retry(dest); });
}

void Dsr::flush_buffer(NodeId dest) {
  for (auto bi = buffer_.begin(); bi != buffer_.end();) {
    if (bi->pkt.dst != dest) {
      ++bi;
      continue;
    }
    std::vector<NodeId> route = cache_lookup(dest, true);
    if (route.empty()) break;
    Packet pkt = std::move(bi->pkt);
    bi = buffer_.erase(bi);
    pkt.ttl = cfg_.ttl;
    pkt.sr_hops = std::move(route);
    pkt.sr_index = 0;
    send_along(std::move(pkt));
  }
}

void Dsr::on_receive(const Packet& pkt, NodeId from) {
  (void)from;
  switch (pkt.kind) {
    case PacketKind::DsrRreq:
      handle_rreq(pkt, from);
      return;
    case PacketKind::DsrRrep:
      handle_rrep(pkt);
      return;
    case PacketKind::DsrRerr:
      handle_rerr(pkt);
      return;
    case PacketKind::Data:
      handle_data(pkt);
      return;
    default:
      return;
  }
}

void Dsr::send_rrep(std::vector<NodeId> full_route,
                    std::vector<NodeId> back_route) {
  DsrRrepBody r;
  r.route = std::move(full_route);
  Packet rp;
  rp.kind = PacketKind::DsrRrep;
  rp.uid = env_.next_uid();
  rp.src = env_.self;
  rp.dst = back_route.back();
  rp.ttl = cfg_.ttl;
  rp.sr_hops = std::move(back_route);
  rp.sr_index = 0;
  rp.body = std::move(r);
  send_along(std::move(rp));
}

void Dsr::handle_rreq(Packet pkt, NodeId from) {
  (void)from;
  auto b = std::get<DsrRreqBody>(pkt.body);
  if (b.origin == env_.self) return;
  if (std::find(b.path.begin(), b.path.end(), env_.self) != b.path.end()) {
    return;  // already traversed us
  }
  auto key = std::make_pair(b.origin, b.rreq_id);
  if (seen_.count(key) != 0) return;
  seen_.emplace(key, now());

  std::vector<NodeId> here = b.path;
  here.push_back(env_.self);

  // The reversed accumulated path is a working route back to the origin.
  std::vector<NodeId> back(here.rbegin(), here.rend());
  cache_add(back);

  if (b.dest == env_.self) {
    send_rrep(here, back);
    return;
  }

  if (cfg_.reply_from_cache) {
    std::vector<NodeId> tail = cache_lookup(b.dest, false);
    if (!tail.empty()) {
      std::vector<NodeId> full = here;
      full.insert(full.end(), tail.begin() + 1, tail.end());
      if (!has_duplicate(full)) {
        send_rrep(std::move(full), std::move(back));
        return;
      }
    }
  }

  if (pkt.ttl <= 1) return;
  Packet fwd = std::move(pkt);
  --fwd.ttl;
  b.path = std::move(here);
  fwd.body = std::move(b);
  env_.send(std::move(fwd), kBroadcast);
}

void Dsr::handle_rrep(const Packet& pkt) {
  const auto& b = std::get<DsrRrepBody>(pkt.body);
  if (pkt.sr_hops.empty() ||
      pkt.sr_hops[static_cast<std::size_t>(pkt.sr_index)] != env_.self) {
    env_.discard();
    return;
  }
  // Cache our suffix of the discovered route.
  auto self_at = std::find(b.route.begin(), b.route.end(), env_.self);
  if (self_at != b.route.end()) {
    cache_add(std::vector<NodeId>(self_at, b.route.end()));
  }
  if (pkt.dst == env_.self) {
    NodeId dest = b.route.back();
    auto pd = pending_.find(dest);
    if (pd != pending_.end()) {
      env_.queue->cancel(pd->second.timer);
      pending_.erase(pd);
    }
    flush_buffer(dest);
    return;
  }
  Packet fwd = pkt;
  --fwd.ttl;
  if (fwd.ttl <= 0) {
    env_.discard();
    return;
  }
  send_along(std::move(fwd));
}

void Dsr::handle_rerr(const Packet& pkt) {
  const auto& b = std::get<DsrRerrBody>(pkt.body);
  cache_purge_link(b.from, b.to);
  if (pkt.dst == env_.self) return;
  if (pkt.sr_hops.empty() ||
      pkt.sr_hops[static_cast<std::size_t>(pkt.sr_index)] != env_.self) {
    env_.discard();
    return;
  }
  Packet fwd = pkt;
  --fwd.ttl;
  if (fwd.ttl <= 0) {
    env_.discard();
    return;
  }
  send_along(std::move(fwd));
}

void Dsr::handle_data(const Packet& pkt) {
  if (pkt.dst == env_.self) {
    env_.deliver_up(pkt);
    return;
  }
  if (pkt.sr_hops.empty() ||
      static_cast<std::size_t>(pkt.sr_index) >= pkt.sr_hops.size() ||
      pkt.sr_hops[static_cast<std::size_t>(pkt.sr_index)] != env_.self) {
    env_.drop(pkt.uid, DropReason::NoRoute);  // malformed source route
    return;
  }
  Packet fwd = pkt;
  --fwd.ttl;
  if (fwd.ttl <= 0) {
    env_.drop(fwd.uid, DropReason::NoRoute);
    return;
  }
  send_along(std::move(fwd));
}

void Dsr::on_link_result(NodeId next, const Packet& pkt, bool success) {
  if (success) return;
  cache_purge_link(env_.self, next);
  if (pkt.kind != PacketKind::Data) return;
  if (pkt.src == env_.self) return;  // we are the source; purge suffices
  // Tell the source which link died, back along the traversed prefix.
  auto idx = static_cast<std::size_t>(pkt.sr_index);
  if (pkt.sr_hops.empty() || idx >= pkt.sr_hops.size()) return;
  // sr_index was advanced at our send; the node before it is us.
  if (idx == 0 || pkt.sr_hops[idx - 1] != env_.self) return;
  std::vector<NodeId> back(pkt.sr_hops.begin(),
                           pkt.sr_hops.begin() + static_cast<long>(idx));
  std::reverse(back.begin(), back.end());
  if (back.size() < 2) return;
  DsrRerrBody e;
  e.from = env_.self;
  e.to = next;
  Packet rp;
  rp.kind = PacketKind::DsrRerr;
  rp.uid = env_.next_uid();
  rp.src = env_.self;
  rp.dst = back.back();
  rp.ttl = cfg_.ttl;
  rp.sr_hops = std::move(back);
  rp.sr_index = 0;
  rp.body = e;
  send_along(std::move(rp));
}

bool Dsr::route_known(NodeId dest) const {
  return !cache_lookup(dest, false).empty();
}

int Dsr::route_hops(NodeId dest) const {
  auto r = cache_lookup(dest, false);
  return r.empty() ? -1 : static_cast<int>(r.size()) - 1;
}

NodeId Dsr::route_next(NodeId dest) const {
  auto r = cache_lookup(dest, false);
  return r.size() >= 2 ? r[1] : -1;
}

std::vector<NodeId> Dsr::source_route(NodeId dest) const {
  return cache_lookup(dest, false);
}

}  // namespace manet
