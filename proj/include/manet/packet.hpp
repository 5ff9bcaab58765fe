#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "manet/types.hpp"

namespace manet {

enum class PacketKind : std::uint8_t {
  Data,
  AodvRreq,
  AodvRrep,
  AodvRerr,
  AodvHello,
  DsrRreq,
  DsrRrep,
  DsrRerr,
  DsdvUpdate,
  MacAck,
};

const char* packet_kind_name(PacketKind k);
bool is_control(PacketKind k);  // routing control, i.e. not Data / MacAck

struct AodvRreqBody {
  NodeId origin = -1, dest = -1;
  std::uint32_t rreq_id = 0;
  std::uint32_t origin_seq = 0;
  std::uint32_t dest_seq = 0;
  bool dest_seq_known = false;
  std::uint32_t hop_count = 0;
};

struct AodvRrepBody {
  NodeId origin = -1, dest = -1;  // origin = discovery initiator
  std::uint32_t dest_seq = 0;
  std::uint32_t hop_count = 0;
  double lifetime_s = 0.0;
};

struct AodvRerrBody {
  // (destination, invalidated sequence number)
  std::vector<std::pair<NodeId, std::uint32_t>> unreachable;
};

struct AodvHelloBody {
  std::uint32_t seq = 0;
};

struct DsrRreqBody {
  NodeId origin = -1, dest = -1;
  std::uint32_t rreq_id = 0;
  std::vector<NodeId> path;  // accumulated, starts at origin
};

struct DsrRrepBody {
  std::vector<NodeId> route;  // full origin..dest hop list
};

struct DsrRerrBody {
  NodeId from = -1, to = -1;  // the broken link
};

struct DsdvEntry {
  NodeId dest = -1;
  std::uint32_t seq = 0;
  std::uint32_t hops = 0;  // kDsdvInfinity = unreachable
};

inline constexpr std::uint32_t kDsdvInfinity = 0xFFFFFFFFu;

struct DsdvUpdateBody {
  std::vector<DsdvEntry> entries;
};

using PacketBody =
    std::variant<std::monostate, AodvRreqBody, AodvRrepBody, AodvRerrBody,
                 AodvHelloBody, DsrRreqBody, DsrRrepBody, DsrRerrBody,
                 DsdvUpdateBody>;

struct Packet {
  PacketKind kind = PacketKind::Data;
  std::uint64_t uid = 0;
  NodeId src = -1;            // end-to-end source
  NodeId dst = kBroadcast;    // end-to-end destination
  int ttl = 0;
  double origin_time = 0.0;   // DATA: application emission time
  std::uint32_t conn_id = 0;  // DATA
  std::uint32_t seq = 0;      // DATA per-connection sequence
  int payload_bytes = 0;      // DATA application payload

  // Source-route carriage (DSR data / route reply / route error):
  // sr_hops[sr_index] is the node currently holding the packet.
  std::vector<NodeId> sr_hops;
  int sr_index = 0;

  std::uint64_t acked_uid = 0;  // MacAck

  PacketBody body;

  // Wire size excluding the MAC header (added per frame by the link).
  int size_bytes() const;
};

}  // namespace manet
