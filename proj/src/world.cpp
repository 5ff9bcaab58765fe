#include "manet/world.hpp"

#include <cstdio>

namespace manet {

World::World(const ScenarioConfig& cfg)
    : cfg_(cfg),
      mobility_(cfg.nodes, cfg.mobility, cfg.seed),
      channel_(cfg.radio, cfg.fading, &mobility_, cfg.seed),
      energy_(cfg.nodes, cfg.energy),
      mac_(queue_, channel_, energy_, metrics_, cfg.mac, cfg.seed) {
  mac_.set_callbacks(this);
  energy_.on_death = [this](NodeId n) { mac_.node_died(n); };
  proto_rngs_.reserve(static_cast<std::size_t>(cfg.nodes));
  protocols_.reserve(static_cast<std::size_t>(cfg.nodes));
  for (NodeId i = 0; i < cfg.nodes; ++i) {
    proto_rngs_.push_back(std::make_unique<RngStream>(
        cfg.seed, "proto/" + std::to_string(i)));
    protocols_.push_back(make_protocol(cfg.protocol, make_env(i), cfg.proto));
  }
  conns_ = build_connections(cfg.nodes, cfg.connections, cfg.seed,
                             cfg.start_stagger_s);
  conn_seq_.assign(conns_.size(), 0);
}

ProtoEnv World::make_env(NodeId i) {
  ProtoEnv env;
  env.self = i;
  env.n_nodes = cfg_.nodes;
  env.queue = &queue_;
  env.rng = proto_rngs_[static_cast<std::size_t>(i)].get();
  env.alive = [this, i] { return energy_.alive(i); };
  env.send = [this, i](Packet pkt, NodeId next) {
    mac_.send(i, std::move(pkt), next);
  };
  env.deliver_up = [this](const Packet& pkt) {
    metrics_.data_delivered(pkt.uid, pkt.origin_time, queue_.now(),
                            static_cast<std::uint64_t>(pkt.payload_bytes) * 8);
    if (trace_ != nullptr) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "r %.6f %u %llu\n", queue_.now(),
                    pkt.conn_id, static_cast<unsigned long long>(pkt.uid));
      *trace_ << buf;
    }
  };
  env.next_uid = [this] { return next_uid_++; };
  env.drop = [this](std::uint64_t uid, DropReason r) {
    metrics_.data_dropped(uid, r);
  };
  env.discard = [this] { metrics_.proto_discard(); };
  return env;
}

void World::mac_deliver(NodeId at, const Packet& pkt, NodeId from,
                        bool addressed) {
  (void)addressed;
  protocols_[static_cast<std::size_t>(at)]->on_receive(pkt, from);
}

void World::mac_link_result(NodeId at, NodeId next_hop, const Packet& pkt,
                            bool success) {
  protocols_[static_cast<std::size_t>(at)]->on_link_result(next_hop, pkt,
                                                           success);
}

void World::emit(std::size_t ci, int k) {
  const Connection& c = conns_[ci];
  Packet p;
  p.kind = PacketKind::Data;
  p.uid = next_uid_++;
  p.src = c.src;
  p.dst = c.dst;
  p.ttl = cfg_.proto.ttl;
  p.origin_time = queue_.now();
  p.conn_id = static_cast<std::uint32_t>(c.id);
  p.seq = conn_seq_[ci]++;
  p.payload_bytes = cfg_.payload_bytes;
  metrics_.data_originated(p.uid);
  if (trace_ != nullptr) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "s %.6f %d %d %d %llu\n", queue_.now(),
                  c.id, c.src, c.dst, static_cast<unsigned long long>(p.uid));
    *trace_ << buf;
  }
  if (energy_.alive(c.src)) {
    protocols_[static_cast<std::size_t>(c.src)]->on_app_data(std::move(p));
  } else {
    metrics_.data_dropped(p.uid, DropReason::Energy);
  }
  double t_next = c.start_s + static_cast<double>(k + 1) / cfg_.rate_pps;
  if (t_next < cfg_.sim_time_s) {
    queue_.schedule(t_next, [this, ci, k] { emit(ci, k + 1); });
  }
}

void World::trace_positions() {
  char buf[128];
  for (NodeId i = 0; i < cfg_.nodes; ++i) {
    auto [x, y] = mobility_.position_at(i, queue_.now());
    std::snprintf(buf, sizeof buf, "%.6f %d %.6f %.6f\n", queue_.now(), i, x,
                  y);
    *trace_ << buf;
  }
  double t_next = queue_.now() + cfg_.trace_interval_s;
  if (t_next <= cfg_.sim_time_s) {
    queue_.schedule(t_next, [this] { trace_positions(); });
  }
}

void World::run() {
  for (auto& proto : protocols_) proto->start();
  for (std::size_t ci = 0; ci < conns_.size(); ++ci) {
    if (conns_[ci].start_s < cfg_.sim_time_s) {
      queue_.schedule(conns_[ci].start_s, [this, ci] { emit(ci, 0); });
    }
  }
  if (trace_ != nullptr) {
    queue_.schedule(0.0, [this] { trace_positions(); });
  }
  queue_.run_until(cfg_.sim_time_s);
  metrics_.set_horizon(cfg_.sim_time_s);
  std::vector<double> remaining(static_cast<std::size_t>(cfg_.nodes));
  for (NodeId i = 0; i < cfg_.nodes; ++i) {
    remaining[static_cast<std::size_t>(i)] = energy_.remaining(i);
  }
  metrics_.set_energy(energy_.initial_j(), remaining);
}

std::string World::csv() const {
  return csv_row(cfg_.protocol, prop_kind_name(cfg_.propagation), cfg_.nodes,
                 cfg_.connections, cfg_.seed, cfg_.sim_time_s, metrics_);
}

std::string run_scenario_csv(const ScenarioConfig& cfg) {
  World w(cfg);
  w.run();
  return w.csv();
}

}  // namespace manet
