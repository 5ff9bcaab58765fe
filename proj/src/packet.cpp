#include "manet/packet.hpp"

namespace manet {

const char* packet_kind_name(PacketKind k) {
  switch (k) {
    case PacketKind::Data: return "DATA";
    case PacketKind::AodvRreq: return "RREQ";
    case PacketKind::AodvRrep: return "RREP";
    case PacketKind::AodvRerr: return "RERR";
    case PacketKind::AodvHello: return "HELLO";
    case PacketKind::DsrRreq: return "RREQ";
    case PacketKind::DsrRrep: return "RREP";
    case PacketKind::DsrRerr: return "RERR";
    case PacketKind::DsdvUpdate: return "UPDATE";
    case PacketKind::MacAck: return "ACK";
  }
  return "?";
}

bool is_control(PacketKind k) {
  return k != PacketKind::Data && k != PacketKind::MacAck;
}

int Packet::size_bytes() const {
  constexpr int kTransportHeader = 28;  // UDP + IP equivalent
  switch (kind) {
    case PacketKind::Data: {
      int n = payload_bytes + kTransportHeader;
      // Source-routed data carries the hop list: fixed option header
      // plus 4 bytes per listed node.
      if (!sr_hops.empty()) n += 8 + 4 * static_cast<int>(sr_hops.size());
      return n;
    }
    case PacketKind::AodvRreq:
      return 24;
    case PacketKind::AodvRrep:
    case PacketKind::AodvHello:
      return 20;
    case PacketKind::AodvRerr: {
      const auto& b = std::get<AodvRerrBody>(body);
      return 4 + 8 * static_cast<int>(b.unreachable.size());
    }
    case PacketKind::DsrRreq: {
      const auto& b = std::get<DsrRreqBody>(body);
      return 12 + 4 * static_cast<int>(b.path.size());
    }
    case PacketKind::DsrRrep: {
      const auto& b = std::get<DsrRrepBody>(body);
      return 12 + 4 * static_cast<int>(b.route.size() + sr_hops.size());
    }
    case PacketKind::DsrRerr:
      return 16 + 4 * static_cast<int>(sr_hops.size());
    case PacketKind::DsdvUpdate: {
      const auto& b = std::get<DsdvUpdateBody>(body);
      return 4 + 12 * static_cast<int>(b.entries.size());
    }
    case PacketKind::MacAck:
      return 14;
  }
  return 0;
}

}  // namespace manet
