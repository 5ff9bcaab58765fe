#include <string>

#include "doctest.h"
#include "manet/packet.hpp"

using namespace manet;

TEST_CASE("data wire size is payload plus transport header") {
  Packet p;
  p.kind = PacketKind::Data;
  p.payload_bytes = 512;
  CHECK(p.size_bytes() == 540);

  p.sr_hops = {0, 1, 2};  // source-routed data carries the hop list
  CHECK(p.size_bytes() == 540 + 8 + 12);
}

TEST_CASE("control packet sizes") {
  Packet p;
  p.kind = PacketKind::AodvRreq;
  p.body = AodvRreqBody{};
  CHECK(p.size_bytes() == 24);

  p.kind = PacketKind::AodvRrep;
  p.body = AodvRrepBody{};
  CHECK(p.size_bytes() == 20);

  p.kind = PacketKind::AodvHello;
  p.body = AodvHelloBody{};
  CHECK(p.size_bytes() == 20);

  AodvRerrBody rerr;
  rerr.unreachable = {{3, 10}, {7, 12}};
  p.kind = PacketKind::AodvRerr;
  p.body = rerr;
  CHECK(p.size_bytes() == 4 + 16);

  DsrRreqBody dreq;
  dreq.path = {0, 4, 9};
  p.kind = PacketKind::DsrRreq;
  p.body = dreq;
  p.sr_hops.clear();
  CHECK(p.size_bytes() == 12 + 12);

  DsrRrepBody drep;
  drep.route = {0, 4, 9, 11};
  p.kind = PacketKind::DsrRrep;
  p.body = drep;
  p.sr_hops = {9, 4, 0};
  CHECK(p.size_bytes() == 12 + 4 * 7);

  p.kind = PacketKind::DsrRerr;
  p.body = DsrRerrBody{};
  p.sr_hops = {5, 2};
  CHECK(p.size_bytes() == 16 + 8);

  DsdvUpdateBody dump;
  dump.entries.resize(25);
  p.kind = PacketKind::DsdvUpdate;
  p.body = dump;
  p.sr_hops.clear();
  CHECK(p.size_bytes() == 4 + 300);

  p.kind = PacketKind::MacAck;
  p.body = std::monostate{};
  CHECK(p.size_bytes() == 14);
}

TEST_CASE("control classification excludes data and acks") {
  CHECK_FALSE(is_control(PacketKind::Data));
  CHECK_FALSE(is_control(PacketKind::MacAck));
  for (PacketKind k : {PacketKind::AodvRreq, PacketKind::AodvRrep,
                       PacketKind::AodvRerr, PacketKind::AodvHello,
                       PacketKind::DsrRreq, PacketKind::DsrRrep,
                       PacketKind::DsrRerr, PacketKind::DsdvUpdate}) {
    CHECK(is_control(k));
  }
}

TEST_CASE("packet kind names") {
  CHECK(std::string(packet_kind_name(PacketKind::Data)) == "DATA");
  CHECK(std::string(packet_kind_name(PacketKind::DsdvUpdate)) == "UPDATE");
  CHECK(std::string(packet_kind_name(PacketKind::MacAck)) == "ACK");
}
