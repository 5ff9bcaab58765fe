#pragma once

// Per-node battery accounting.  Charge = radio power * airtime, where
// airtime = frame bits / link rate.  A node dies when its battery hits
// zero; deaths are reported through the callback exactly once.

#include <cstdint>
#include <functional>
#include <vector>

#include "manet/types.hpp"

namespace manet {

struct EnergyParams {
  double initial_j = 100.0;
  double tx_power_w = 0.660;
  double rx_power_w = 0.395;
  double rate_bps = 2.0e6;
};

class EnergyModel {
 public:
  EnergyModel(int n, const EnergyParams& p);

  bool alive(NodeId node) const { return remaining_[idx(node)] > 0.0; }
  double remaining(NodeId node) const { return remaining_[idx(node)]; }
  double initial_j() const { return params_.initial_j; }
  int size() const { return static_cast<int>(remaining_.size()); }

  // Returns the charge applied.  Dead nodes are not charged; the attempt
  // is counted in rejected().
  double debit_tx(NodeId node, std::uint64_t frame_bits);
  double debit_rx(NodeId node, std::uint64_t frame_bits);

  double total_consumed(NodeId node) const {
    return params_.initial_j - remaining_[idx(node)];
  }
  double total_consumed() const;

  // Sum of all charges as computed (pre-floor); equals total_consumed()
  // exactly when floor_events() == 0.
  double total_debited() const { return debited_sum_; }
  int floor_events() const { return floor_events_; }
  int rejected() const { return rejected_; }

  std::function<void(NodeId)> on_death;

 private:
  double debit(NodeId node, double power_w, std::uint64_t frame_bits);
  static std::size_t idx(NodeId n) { return static_cast<std::size_t>(n); }

  EnergyParams params_;
  std::vector<double> remaining_;
  double debited_sum_ = 0.0;
  int floor_events_ = 0;
  int rejected_ = 0;
};

}  // namespace manet
