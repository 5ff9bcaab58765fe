#pragma once

// Run-level accounting.  Every originated DATA packet ends in exactly one
// bucket: delivered, one of the drop reasons, or in-flight at the end of
// the run.  A drop recorded for a packet that is later delivered (possible
// when a retransmitted copy survives downstream) is reclassified as
// delivered, keeping the partition exact.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "manet/types.hpp"

namespace manet {

enum class DropReason {
  Collision,     // lost to interference on the last MAC attempt
  BelowThresh,   // under rx_thresh on the last MAC attempt
  NoRoute,       // no route / discovery failure / TTL / bad source route
  RetryLimit,    // MAC retries exhausted with the data getting through
                 // but acknowledgments lost
  QueueOverflow, // interface or routing buffer overflow
  Energy,        // dead node flushed or refused the packet
};
inline constexpr int kDropReasonCount = 6;

const char* drop_reason_name(DropReason r);

class MetricsLedger {
 public:
  void data_originated(std::uint64_t uid);
  // Deduplicates by uid; duplicate arrivals only bump duplicates().
  void data_delivered(std::uint64_t uid, double origin_time, double recv_time,
                      std::uint64_t payload_bits);
  // First reason wins; ignored once the uid is delivered.
  void data_dropped(std::uint64_t uid, DropReason r);

  void control_packet() { ++control_packets_; }
  void mac_collision() { ++mac_collisions_; }
  void proto_discard() { ++proto_discards_; }

  void set_energy(double initial_j, const std::vector<double>& remaining_j);
  void set_horizon(double seconds) { horizon_s_ = seconds; }

  // Headline metrics; absent when undefined (nothing sent / received).
  std::optional<double> pdf_percent() const;
  std::optional<double> avg_e2e_delay_s() const;
  double throughput_bps() const;
  double mrre_percent() const;
  double total_energy_j() const;

  std::uint64_t sent() const { return sent_; }
  std::uint64_t received() const { return received_; }
  std::uint64_t duplicates() const { return duplicates_; }
  std::uint64_t control_packets() const { return control_packets_; }
  std::uint64_t mac_collisions() const { return mac_collisions_; }
  std::uint64_t proto_discards() const { return proto_discards_; }
  std::uint64_t dropped(DropReason r) const {
    return drop_counts_[static_cast<int>(r)];
  }
  std::uint64_t dropped_total() const;
  std::uint64_t in_flight() const;

  double horizon_s() const { return horizon_s_; }

 private:
  std::uint64_t sent_ = 0;
  std::uint64_t received_ = 0;
  std::uint64_t duplicates_ = 0;
  std::uint64_t control_packets_ = 0;
  std::uint64_t mac_collisions_ = 0;
  std::uint64_t proto_discards_ = 0;
  std::uint64_t drop_counts_[kDropReasonCount] = {};
  double delay_sum_s_ = 0.0;
  std::uint64_t received_bits_ = 0;
  double horizon_s_ = 0.0;
  double initial_j_ = 0.0;
  std::vector<double> remaining_j_;
  // uid -> fate; absent = in flight.  Never iterated, so hashing is safe.
  std::unordered_map<std::uint64_t, int> fate_;  // -1 delivered, else reason
};

// The fixed CSV schema shared by run and sweep output.
std::string csv_header();
std::string csv_row(const std::string& protocol, const std::string& model,
                    int nodes, int connections, std::uint64_t seed,
                    double sim_time_s, const MetricsLedger& m);

}  // namespace manet
