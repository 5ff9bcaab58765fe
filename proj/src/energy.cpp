#include "manet/energy.hpp"

namespace manet {

EnergyModel::EnergyModel(int n, const EnergyParams& p)
    : params_(p), remaining_(static_cast<std::size_t>(n), p.initial_j) {}

double EnergyModel::debit(NodeId node, double power_w,
                          std::uint64_t frame_bits) {
  std::size_t i = idx(node);
  if (remaining_[i] <= 0.0) {
    ++rejected_;
    return 0.0;
  }
  double charge = power_w * static_cast<double>(frame_bits) / params_.rate_bps;
  debited_sum_ += charge;
  if (charge >= remaining_[i]) {
    if (charge > remaining_[i]) ++floor_events_;
    remaining_[i] = 0.0;
    if (on_death) on_death(node);
  } else {
    remaining_[i] -= charge;
  }
  return charge;
}

double EnergyModel::debit_tx(NodeId node, std::uint64_t frame_bits) {
  return debit(node, params_.tx_power_w, frame_bits);
}

double EnergyModel::debit_rx(NodeId node, std::uint64_t frame_bits) {
  return debit(node, params_.rx_power_w, frame_bits);
}

double EnergyModel::total_consumed() const {
  double sum = 0.0;
  for (double r : remaining_) sum += params_.initial_j - r;
  return sum;
}

}  // namespace manet
