#include <cstdint>
#include <memory>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "manet/event_queue.hpp"
#include "manet/ideal_link.hpp"
#include "manet/packet.hpp"
#include "manet/rng.hpp"
#include "manet/routing.hpp"

using namespace manet;

namespace {

using Pos = std::vector<std::pair<double, double>>;

Packet app_data(std::uint64_t uid, NodeId src, NodeId dst) {
  Packet p;
  p.kind = PacketKind::Data;
  p.uid = uid;
  p.src = src;
  p.dst = dst;
  p.payload_bytes = 512;
  return p;
}

// All nodes of one protocol wired through the lossless fixed-latency link,
// so floods fan out in breadth-first order and every unicast succeeds.
struct MiniNet : MacCallbacks {
  EventQueue q;
  IdealLink link;
  std::vector<std::unique_ptr<RngStream>> rngs;
  std::vector<std::unique_ptr<RoutingProtocol>> nodes;
  std::vector<std::vector<Packet>> delivered;
  std::vector<std::pair<std::uint64_t, DropReason>> drops;
  std::vector<std::pair<NodeId, PacketKind>> sent_log;
  int discards = 0;
  std::uint64_t uid_src = 1000;

  MiniNet(const std::string& proto, Pos pos, double range = 250.0,
          const ProtoConfig& cfg = ProtoConfig{})
      : link(q, std::move(pos), range) {
    int n = link.nodes();
    link.set_callbacks(this);
    delivered.resize(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) {
      rngs.push_back(
          std::make_unique<RngStream>(1, "proto/" + std::to_string(i)));
    }
    for (NodeId i = 0; i < n; ++i) {
      ProtoEnv env;
      env.self = i;
      env.n_nodes = n;
      env.queue = &q;
      env.rng = rngs[static_cast<std::size_t>(i)].get();
      env.send = [this, i](Packet p, NodeId next_hop) {
        sent_log.emplace_back(i, p.kind);
        link.send(i, std::move(p), next_hop);
      };
      env.deliver_up = [this, i](const Packet& p) {
        delivered[static_cast<std::size_t>(i)].push_back(p);
      };
      env.next_uid = [this] { return uid_src++; };
      env.drop = [this](std::uint64_t uid, DropReason r) {
        drops.emplace_back(uid, r);
      };
      env.discard = [this] { ++discards; };
      nodes.push_back(make_protocol(proto, std::move(env), cfg));
    }
  }

  void mac_deliver(NodeId at, const Packet& pkt, NodeId from, bool) override {
    nodes[static_cast<std::size_t>(at)]->on_receive(pkt, from);
  }
  void mac_link_result(NodeId at, NodeId next, const Packet& pkt,
                       bool ok) override {
    nodes[static_cast<std::size_t>(at)]->on_link_result(next, pkt, ok);
  }

  void start_all() {
    for (auto& n : nodes) n->start();
  }
  RoutingProtocol& at(NodeId i) {
    return *nodes[static_cast<std::size_t>(i)];
  }
  std::size_t count_sent(PacketKind k) const {
    std::size_t c = 0;
    for (const auto& [node, kind] : sent_log) {
      if (kind == k) ++c;
    }
    return c;
  }
};

// One protocol instance under direct stimulus; sends are captured, nothing
// is wired back.
struct Solo {
  EventQueue q;
  RngStream rng{1, "proto/0"};
  std::vector<std::pair<Packet, NodeId>> out;  // packet, next hop
  std::vector<Packet> up;
  std::vector<std::pair<std::uint64_t, DropReason>> drops;
  int discards = 0;
  std::uint64_t uid_src = 5000;
  std::unique_ptr<RoutingProtocol> node;

  explicit Solo(const std::string& proto,
                const ProtoConfig& cfg = ProtoConfig{}) {
    ProtoEnv env;
    env.self = 0;
    env.n_nodes = 8;
    env.queue = &q;
    env.rng = &rng;
    env.send = [this](Packet p, NodeId next_hop) {
      out.emplace_back(std::move(p), next_hop);
    };
    env.deliver_up = [this](const Packet& p) { up.push_back(p); };
    env.next_uid = [this] { return uid_src++; };
    env.drop = [this](std::uint64_t uid, DropReason r) {
      drops.emplace_back(uid, r);
    };
    env.discard = [this] { ++discards; };
    node = make_protocol(proto, std::move(env), cfg);
  }
};

std::vector<int> bfs_hops(const IdealLink& link, NodeId src) {
  int n = link.nodes();
  std::vector<int> d(static_cast<std::size_t>(n), -1);
  std::queue<NodeId> frontier;
  d[static_cast<std::size_t>(src)] = 0;
  frontier.push(src);
  while (!frontier.empty()) {
    NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v = 0; v < n; ++v) {
      if (v == u || d[static_cast<std::size_t>(v)] != -1 ||
          !link.in_range(u, v)) {
        continue;
      }
      d[static_cast<std::size_t>(v)] = d[static_cast<std::size_t>(u)] + 1;
      frontier.push(v);
    }
  }
  return d;
}

// Following next-hops from a must reach b over real links in exactly the
// advertised number of hops; anything else indicates a loop or a shortcut.
void check_walk(MiniNet& net, NodeId a, NodeId b) {
  int want = net.at(a).route_hops(b);
  REQUIRE(want >= 0);
  NodeId cur = a;
  int steps = 0;
  while (cur != b && steps <= net.link.nodes()) {
    NodeId nx = net.at(cur).route_next(b);
    REQUIRE(nx >= 0);
    CHECK(net.link.in_range(cur, nx));
    cur = nx;
    ++steps;
  }
  CHECK(cur == b);
  CHECK(steps == want);
}

}  // namespace

TEST_CASE("the protocol factory knows exactly three names") {
  CHECK(Solo("aodv").node->name() == std::string("aodv"));
  CHECK(Solo("dsr").node->name() == std::string("dsr"));
  CHECK(Solo("dsdv").node->name() == std::string("dsdv"));
  CHECK_THROWS_AS(Solo("olsr"), std::invalid_argument);
}

TEST_CASE("aodv discovers a two-hop route through a chain") {
  MiniNet net("aodv", Pos{{0, 0}, {200, 0}, {400, 0}});
  net.at(0).on_app_data(app_data(1, 0, 2));
  net.q.run_until(1.0);

  REQUIRE(net.delivered[2].size() == 1);
  CHECK(net.delivered[2][0].uid == 1);
  CHECK(net.at(0).route_known(2));
  CHECK(net.at(0).route_hops(2) == 2);
  CHECK(net.at(0).route_next(2) == 1);
  CHECK(net.at(1).route_hops(2) == 1);
  CHECK(net.at(1).route_hops(0) == 1);
  CHECK(net.at(2).route_hops(0) == 2);  // reverse path from the flood
  CHECK(net.drops.empty());
  CHECK(net.discards == 0);
  // One flood from the origin, one forward by the middle node; the reply
  // retraces the reverse path hop by hop.
  CHECK(net.count_sent(PacketKind::AodvRreq) == 2);
  CHECK(net.count_sent(PacketKind::AodvRrep) == 2);

  // A second packet rides the installed route without a new discovery.
  net.at(0).on_app_data(app_data(2, 0, 2));
  net.q.run_until(1.1);
  CHECK(net.delivered[2].size() == 2);
  CHECK(net.count_sent(PacketKind::AodvRreq) == 2);
}

TEST_CASE("aodv keeps the freshest route and breaks ties on hops") {
  Solo s("aodv");
  auto rrep = [&](NodeId from, std::uint32_t seq, std::uint32_t hops) {
    Packet p;
    p.kind = PacketKind::AodvRrep;
    p.uid = s.uid_src++;
    p.src = from;
    p.dst = 0;
    p.ttl = 8;
    p.body = AodvRrepBody{0, 5, seq, hops, 10.0};
    s.node->on_receive(p, from);
  };

  rrep(1, 10, 1);  // install: dest 5 via 1, two hops
  CHECK(s.node->route_hops(5) == 2);
  CHECK(s.node->route_next(5) == 1);

  rrep(2, 9, 0);  // staler sequence: ignored no matter how short
  CHECK(s.node->route_next(5) == 1);
  CHECK(s.node->route_hops(5) == 2);

  rrep(3, 10, 2);  // same freshness, longer: ignored
  CHECK(s.node->route_next(5) == 1);

  rrep(2, 10, 0);  // same freshness, shorter: adopted
  CHECK(s.node->route_hops(5) == 1);
  CHECK(s.node->route_next(5) == 2);

  rrep(3, 12, 3);  // fresher always wins, even when longer
  CHECK(s.node->route_hops(5) == 4);
  CHECK(s.node->route_next(5) == 3);
}

TEST_CASE("aodv forwards each request id once") {
  Solo s("aodv");
  auto rreq = [&](NodeId from, std::uint32_t hop_count) {
    Packet p;
    p.kind = PacketKind::AodvRreq;
    p.uid = s.uid_src++;
    p.src = from;
    p.dst = kBroadcast;
    p.ttl = 8;
    AodvRreqBody b;
    b.origin = 5;
    b.dest = 6;
    b.rreq_id = 77;
    b.origin_seq = 3;
    b.hop_count = hop_count;
    p.body = b;
    s.node->on_receive(p, from);
  };

  rreq(1, 2);  // first copy: re-broadcast one hop longer
  REQUIRE(s.out.size() == 1);
  CHECK(s.out[0].first.kind == PacketKind::AodvRreq);
  CHECK(s.out[0].second == kBroadcast);
  CHECK(std::get<AodvRreqBody>(s.out[0].first.body).hop_count == 3);
  CHECK(s.node->route_hops(5) == 3);

  rreq(2, 2);  // same id, no better: suppressed
  CHECK(s.out.size() == 1);
  CHECK(s.node->route_next(5) == 1);

  rreq(3, 0);  // better copy improves the reverse route but never re-floods
  CHECK(s.out.size() == 1);
  CHECK(s.node->route_hops(5) == 1);
  CHECK(s.node->route_next(5) == 3);
}

TEST_CASE("aodv writes off routes through a failed neighbor") {
  Solo s("aodv");

  // Reverse route to 7 via 2 (a flood passing through) ...
  Packet q;
  q.kind = PacketKind::AodvRreq;
  q.uid = s.uid_src++;
  q.src = 2;
  q.dst = kBroadcast;
  q.ttl = 8;
  AodvRreqBody qb;
  qb.origin = 7;
  qb.dest = 9;
  qb.rreq_id = 1;
  qb.origin_seq = 3;
  qb.hop_count = 0;
  q.body = qb;
  s.node->on_receive(q, 2);
  REQUIRE(s.out.size() == 1);  // flood forwarded

  // ... then a reply for 5 arriving from 1, relayed onward via 2.
  Packet r;
  r.kind = PacketKind::AodvRrep;
  r.uid = s.uid_src++;
  r.src = 1;
  r.dst = 7;
  r.ttl = 8;
  r.body = AodvRrepBody{7, 5, 4, 0, 10.0};
  s.node->on_receive(r, 1);
  REQUIRE(s.out.size() == 2);
  CHECK(s.out[1].first.kind == PacketKind::AodvRrep);
  CHECK(s.out[1].second == 2);
  CHECK(s.node->route_hops(5) == 1);

  // The link to 1 dies: everything routed through it is invalidated and
  // announced, with sequence numbers stepped past the stale state.
  s.node->on_link_result(1, app_data(30, 0, 5), false);
  CHECK_FALSE(s.node->route_known(5));
  CHECK_FALSE(s.node->route_known(1));
  CHECK(s.node->route_known(7));  // unaffected, still via 2
  REQUIRE(s.out.size() == 3);
  CHECK(s.out[2].first.kind == PacketKind::AodvRerr);
  CHECK(s.out[2].second == kBroadcast);
  {
    const auto& e = std::get<AodvRerrBody>(s.out[2].first.body);
    REQUIRE(e.unreachable.size() == 2);  // the neighbor and the 5-route
    CHECK(e.unreachable[0] == std::make_pair(NodeId{1}, std::uint32_t{0}));
    CHECK(e.unreachable[1] == std::make_pair(NodeId{5}, std::uint32_t{5}));
  }

  // A neighbor reporting a loss upstream invalidates our route through it
  // and propagates, because the route had a precursor.
  Packet err;
  err.kind = PacketKind::AodvRerr;
  err.uid = s.uid_src++;
  err.src = 2;
  err.dst = kBroadcast;
  err.ttl = 1;
  AodvRerrBody eb;
  eb.unreachable = {{NodeId{7}, std::uint32_t{9}}};
  err.body = eb;
  s.node->on_receive(err, 2);
  CHECK_FALSE(s.node->route_known(7));
  REQUIRE(s.out.size() == 4);
  CHECK(s.out[3].first.kind == PacketKind::AodvRerr);
  {
    const auto& e = std::get<AodvRerrBody>(s.out[3].first.body);
    REQUIRE(e.unreachable.size() == 1);
    CHECK(e.unreachable[0] == std::make_pair(NodeId{7}, std::uint32_t{9}));
  }
}

TEST_CASE("dsr discovers a source route and reuses it from cache") {
  MiniNet net("dsr", Pos{{0, 0}, {200, 0}, {400, 0}});
  net.at(0).on_app_data(app_data(1, 0, 2));
  net.q.run_until(1.0);

  REQUIRE(net.delivered[2].size() == 1);
  CHECK(net.delivered[2][0].uid == 1);
  CHECK(net.at(0).source_route(2) == std::vector<NodeId>{0, 1, 2});
  CHECK(net.at(0).route_hops(2) == 2);
  CHECK(net.at(0).route_next(2) == 1);
  CHECK(net.at(1).route_hops(0) == 1);  // reversed flood path
  CHECK(net.at(1).route_hops(2) == 1);  // suffix of the forwarded reply
  CHECK(net.count_sent(PacketKind::DsrRreq) == 2);
  CHECK(net.count_sent(PacketKind::DsrRrep) == 2);

  net.at(0).on_app_data(app_data(2, 0, 2));
  net.q.run_until(1.1);
  CHECK(net.delivered[2].size() == 2);
  CHECK(net.count_sent(PacketKind::DsrRreq) == 2);  // cache hit, no flood
  CHECK(net.drops.empty());
  CHECK(net.discards == 0);
}

TEST_CASE("dsr ignores request copies that already crossed the node") {
  Solo s("dsr");
  auto rreq = [&](NodeId from, std::vector<NodeId> path) {
    Packet p;
    p.kind = PacketKind::DsrRreq;
    p.uid = s.uid_src++;
    p.src = from;
    p.dst = kBroadcast;
    p.ttl = 8;
    DsrRreqBody b;
    b.origin = path.front();
    b.dest = 9;
    b.rreq_id = 4;
    b.path = std::move(path);
    p.body = std::move(b);
    s.node->on_receive(p, from);
  };

  rreq(2, {5, 0, 2});  // we are already in the accumulated path
  CHECK(s.out.empty());

  // The looping copy did not poison the request id: a clean copy of the
  // same id still forwards, with us appended.
  rreq(2, {5, 2});
  REQUIRE(s.out.size() == 1);
  CHECK(s.out[0].first.kind == PacketKind::DsrRreq);
  CHECK(std::get<DsrRreqBody>(s.out[0].first.body).path ==
        std::vector<NodeId>{5, 2, 0});
  CHECK(s.node->route_hops(5) == 2);  // reversed path entered the cache
  CHECK(s.node->route_next(5) == 2);

  rreq(3, {5, 3});  // now a duplicate: suppressed
  CHECK(s.out.size() == 1);
}

TEST_CASE("dsr answers requests from cache on behalf of the destination") {
  Solo s("dsr");
  auto rreq = [&](NodeId from, NodeId dest, std::uint32_t id,
                  std::vector<NodeId> path) {
    Packet p;
    p.kind = PacketKind::DsrRreq;
    p.uid = s.uid_src++;
    p.src = from;
    p.dst = kBroadcast;
    p.ttl = 8;
    DsrRreqBody b;
    b.origin = path.front();
    b.dest = dest;
    b.rreq_id = id;
    b.path = std::move(path);
    p.body = std::move(b);
    s.node->on_receive(p, from);
  };

  // A passing flood seeds the cache with a route to 5 via 4.
  rreq(4, 9, 1, {5, 4});
  REQUIRE(s.out.size() == 1);
  REQUIRE(s.node->source_route(5) == std::vector<NodeId>{0, 4, 5});

  // A later search for 5 is answered by splicing our cached tail onto the
  // accumulated path instead of re-flooding.
  rreq(2, 5, 8, {7, 2});
  REQUIRE(s.out.size() == 2);
  CHECK(s.out[1].first.kind == PacketKind::DsrRrep);
  CHECK(s.out[1].second == 2);  // first hop of the reversed path back to 7
  CHECK(std::get<DsrRrepBody>(s.out[1].first.body).route ==
        std::vector<NodeId>{7, 2, 0, 4, 5});
}

TEST_CASE("dsr purges cached routes over a dead link and warns the source") {
  MiniNet net("dsr", Pos{{0, 0}, {200, 0}, {400, 0}});
  net.at(0).on_app_data(app_data(1, 0, 2));
  net.q.run_until(1.0);
  REQUIRE(net.at(0).route_known(2));
  REQUIRE(net.at(1).route_known(2));

  // Replay the forwarding state of a packet at the middle node the moment
  // the 1 -> 2 hop fails.
  Packet inflight = app_data(9, 0, 2);
  inflight.ttl = 30;
  inflight.sr_hops = {0, 1, 2};
  inflight.sr_index = 2;  // already advanced past us toward 2
  net.at(1).on_link_result(2, inflight, false);
  net.q.run_until(1.2);

  CHECK_FALSE(net.at(1).route_known(2));  // own cache purged
  CHECK(net.at(1).route_known(0));        // unrelated entry survives
  CHECK_FALSE(net.at(0).route_known(2));  // route error reached the source
  CHECK(net.count_sent(PacketKind::DsrRerr) == 1);
  CHECK(net.drops.empty());  // the report itself drops nothing
}

TEST_CASE("dsdv prefers fresher sequence numbers, then shorter paths") {
  Solo s("dsdv");
  auto update = [&](NodeId from, NodeId dest, std::uint32_t seq,
                    std::uint32_t hops) {
    Packet p;
    p.kind = PacketKind::DsdvUpdate;
    p.uid = s.uid_src++;
    p.src = from;
    p.dst = kBroadcast;
    p.ttl = 1;
    p.body = DsdvUpdateBody{{DsdvEntry{dest, seq, hops}}};
    s.node->on_receive(p, from);
  };

  update(1, 5, 2, 1);  // install: 5 via 1, two hops
  CHECK(s.node->route_hops(5) == 2);
  CHECK(s.node->route_next(5) == 1);

  update(2, 5, 2, 2);  // equal seq, longer: rejected
  CHECK(s.node->route_next(5) == 1);
  CHECK(s.node->route_hops(5) == 2);

  update(2, 5, 2, 0);  // equal seq, shorter: adopted
  CHECK(s.node->route_hops(5) == 1);
  CHECK(s.node->route_next(5) == 2);

  update(1, 5, 0, 0);  // older seq: rejected outright
  CHECK(s.node->route_next(5) == 2);

  update(3, 5, 4, 6);  // fresher seq wins regardless of length
  CHECK(s.node->route_hops(5) == 7);
  CHECK(s.node->route_next(5) == 3);
}

TEST_CASE("dsdv treats odd infinite-hop entries as break markers") {
  Solo s("dsdv");
  auto update = [&](NodeId from, NodeId dest, std::uint32_t seq,
                    std::uint32_t hops) {
    Packet p;
    p.kind = PacketKind::DsdvUpdate;
    p.uid = s.uid_src++;
    p.src = from;
    p.dst = kBroadcast;
    p.ttl = 1;
    p.body = DsdvUpdateBody{{DsdvEntry{dest, seq, hops}}};
    s.node->on_receive(p, from);
  };

  update(1, 5, 2, 1);
  REQUIRE(s.node->route_known(5));

  update(1, 5, 3, kDsdvInfinity);  // break marker supersedes the even state
  CHECK_FALSE(s.node->route_known(5));
  CHECK(s.node->route_hops(5) == -1);

  update(2, 5, 4, 3);  // the next even advertisement restores reachability
  CHECK(s.node->route_hops(5) == 4);
  CHECK(s.node->route_next(5) == 2);

  update(1, 8, 7, kDsdvInfinity);  // unknown and unreachable: nothing to do
  CHECK(s.node->route_hops(8) == -1);
}

TEST_CASE("dsdv supersedes reports of its own demise") {
  Solo s("dsdv");
  Packet p;
  p.kind = PacketKind::DsdvUpdate;
  p.uid = s.uid_src++;
  p.src = 1;
  p.dst = kBroadcast;
  p.ttl = 1;
  p.body = DsdvUpdateBody{{DsdvEntry{0, 5, kDsdvInfinity}}};
  s.node->on_receive(p, 1);

  s.q.run_until(kNever);  // let the triggered update fire
  double first_sent = s.q.now();
  REQUIRE(s.out.size() == 1);
  {
    const auto& b = std::get<DsdvUpdateBody>(s.out[0].first.body);
    REQUIRE(b.entries.size() == 1);
    CHECK(b.entries[0].dest == 0);
    CHECK(b.entries[0].seq == 6);  // odd 5 outbid by the next even value
    CHECK(b.entries[0].hops == 0);
  }

  // Subsequent triggered updates respect the minimum gap and lead with the
  // sender's own entry.
  Packet p2;
  p2.kind = PacketKind::DsdvUpdate;
  p2.uid = s.uid_src++;
  p2.src = 2;
  p2.dst = kBroadcast;
  p2.ttl = 1;
  p2.body = DsdvUpdateBody{{DsdvEntry{7, 2, 0}}};
  s.node->on_receive(p2, 2);
  s.q.run_until(kNever);
  CHECK(s.q.now() == first_sent + ProtoConfig{}.min_update_gap_s);
  REQUIRE(s.out.size() == 2);
  {
    const auto& b = std::get<DsdvUpdateBody>(s.out[1].first.body);
    REQUIRE(b.entries.size() == 2);
    CHECK(b.entries[0].dest == 0);  // self first
    CHECK(b.entries[0].seq == 6);
    CHECK(b.entries[1].dest == 7);
    CHECK(b.entries[1].seq == 2);
    CHECK(b.entries[1].hops == 1);
  }
}

TEST_CASE("dsdv forwards data only along live table entries") {
  Solo s("dsdv");
  Packet stray = app_data(40, 3, 5);
  stray.ttl = 6;
  s.node->on_receive(stray, 3);
  REQUIRE(s.drops.size() == 1);
  CHECK(s.drops[0] == std::make_pair(std::uint64_t{40}, DropReason::NoRoute));

  Packet upd;
  upd.kind = PacketKind::DsdvUpdate;
  upd.uid = s.uid_src++;
  upd.src = 1;
  upd.dst = kBroadcast;
  upd.ttl = 1;
  upd.body = DsdvUpdateBody{{DsdvEntry{5, 2, 1}}};
  s.node->on_receive(upd, 1);

  Packet transit = app_data(41, 3, 5);
  transit.ttl = 6;
  s.node->on_receive(transit, 3);
  REQUIRE(!s.out.empty());
  CHECK(s.out.back().first.kind == PacketKind::Data);
  CHECK(s.out.back().first.ttl == 5);  // decremented in transit
  CHECK(s.out.back().second == 1);

  s.node->on_app_data(app_data(42, 0, 5));
  CHECK(s.out.back().first.uid == 42);
  CHECK(s.out.back().first.ttl == ProtoConfig{}.ttl);

  Packet dying = app_data(43, 3, 5);
  dying.ttl = 1;
  s.node->on_receive(dying, 3);
  CHECK(s.drops.back() ==
        std::make_pair(std::uint64_t{43}, DropReason::NoRoute));

  s.node->on_app_data(app_data(44, 3, 0));  // addressed to us
  REQUIRE(s.up.size() == 1);
  CHECK(s.up[0].uid == 44);
}

TEST_CASE("dsdv converges to shortest hop counts on a static chain") {
  MiniNet net("dsdv", Pos{{0, 0}, {200, 0}, {400, 0}, {600, 0}});
  net.start_all();
  net.q.run_until(3.0 * ProtoConfig{}.dump_interval_s + 1.0);

  for (NodeId a = 0; a < 4; ++a) {
    std::vector<int> want = bfs_hops(net.link, a);
    for (NodeId b = 0; b < 4; ++b) {
      CHECK(net.at(a).route_hops(b) == want[static_cast<std::size_t>(b)]);
      if (a != b) check_walk(net, a, b);
    }
  }
}

TEST_CASE("dsdv matches breadth-first hop counts on random connected maps") {
  RngStream rng(7, "map-sampler");
  int built = 0;
  for (int attempt = 0; attempt < 200 && built < 3; ++attempt) {
    int n = 4 + static_cast<int>(rng.below(3));  // 4 to 6 nodes
    Pos pos;
    for (int i = 0; i < n; ++i) {
      pos.emplace_back(rng.uniform() * 500.0, rng.uniform() * 500.0);
    }
    {
      EventQueue probe_q;
      IdealLink probe(probe_q, pos, 250.0);
      std::vector<int> d = bfs_hops(probe, 0);
      bool connected = true;
      for (int h : d) connected = connected && h >= 0;
      if (!connected) continue;
    }
    ++built;

    MiniNet net("dsdv", pos, 250.0);
    net.start_all();
    net.q.run_until(3.0 * ProtoConfig{}.dump_interval_s + 5.0);
    for (NodeId a = 0; a < n; ++a) {
      std::vector<int> want = bfs_hops(net.link, a);
      for (NodeId b = 0; b < n; ++b) {
        CHECK(net.at(a).route_hops(b) == want[static_cast<std::size_t>(b)]);
        if (a != b) check_walk(net, a, b);
      }
    }
  }
  CHECK(built == 3);
}
