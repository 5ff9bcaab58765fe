#include "manet/metrics.hpp"

#include <algorithm>
#include <cstdio>

namespace manet {

const char* drop_reason_name(DropReason r) {
  switch (r) {
    case DropReason::Collision: return "collision";
    case DropReason::BelowThresh: return "below_thresh";
    case DropReason::NoRoute: return "no_route";
    case DropReason::RetryLimit: return "retry";
    case DropReason::QueueOverflow: return "queue";
    case DropReason::Energy: return "energy";
  }
  return "?";
}

void MetricsLedger::data_originated(std::uint64_t uid) {
  ++sent_;
  (void)uid;
}

void MetricsLedger::data_delivered(std::uint64_t uid, double origin_time,
                                   double recv_time,
                                   std::uint64_t payload_bits) {
  auto it = fate_.find(uid);
  if (it != fate_.end()) {
    if (it->second < 0) {
      ++duplicates_;
      return;
    }
    // A copy already written off as dropped made it through after all.
    --drop_counts_[it->second];
    it->second = -1;
  } else {
    fate_.emplace(uid, -1);
  }
  ++received_;
  delay_sum_s_ += recv_time - origin_time;
  received_bits_ += payload_bits;
}

void MetricsLedger::data_dropped(std::uint64_t uid, DropReason r) {
  auto it = fate_.find(uid);
  if (it != fate_.end()) return;  // delivered or already assigned
  fate_.emplace(uid, static_cast<int>(r));
  ++drop_counts_[static_cast<int>(r)];
}

void MetricsLedger::set_energy(double initial_j,
                               const std::vector<double>& remaining_j) {
  initial_j_ = initial_j;
  remaining_j_ = remaining_j;
}

std::optional<double> MetricsLedger::pdf_percent() const {
  if (sent_ == 0) return std::nullopt;
  return 100.0 * static_cast<double>(received_) / static_cast<double>(sent_);
}

std::optional<double> MetricsLedger::avg_e2e_delay_s() const {
  if (received_ == 0) return std::nullopt;
  return delay_sum_s_ / static_cast<double>(received_);
}

double MetricsLedger::throughput_bps() const {
  if (horizon_s_ <= 0.0) return 0.0;
  return static_cast<double>(received_bits_) / horizon_s_;
}

double MetricsLedger::mrre_percent() const {
  if (remaining_j_.empty() || initial_j_ <= 0.0) return 100.0;
  double worst = 1.0;
  for (double r : remaining_j_) worst = std::min(worst, r / initial_j_);
  return 100.0 * worst;
}

double MetricsLedger::total_energy_j() const {
  double sum = 0.0;
  for (double r : remaining_j_) sum += initial_j_ - r;
  return sum;
}

std::uint64_t MetricsLedger::dropped_total() const {
  std::uint64_t sum = 0;
  for (std::uint64_t c : drop_counts_) sum += c;
  return sum;
}

std::uint64_t MetricsLedger::in_flight() const {
  return sent_ - received_ - dropped_total();
}

std::string csv_header() {
  return "protocol,propagation,nodes,connections,seed,sim_time_s,"
         "pdf_percent,avg_e2e_delay_s,throughput_bps,mrre_percent,"
         "total_energy_j,ctrl_packets,sent,received,drop_collision,"
         "drop_no_route,drop_retry,drop_queue";
}

static void append_g(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  out += buf;
}

static void append_opt(std::string& out, std::optional<double> v) {
  if (v.has_value()) {
    append_g(out, *v);
  } else {
    out += "nan";
  }
}

std::string csv_row(const std::string& protocol, const std::string& model,
                    int nodes, int connections, std::uint64_t seed,
                    double sim_time_s, const MetricsLedger& m) {
  std::string out;
  out.reserve(256);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s,%s,%d,%d,%llu,", protocol.c_str(),
                model.c_str(), nodes, connections,
                static_cast<unsigned long long>(seed));
  out += buf;
  append_g(out, sim_time_s);
  out += ',';
  append_opt(out, m.pdf_percent());
  out += ',';
  append_opt(out, m.avg_e2e_delay_s());
  out += ',';
  append_g(out, m.throughput_bps());
  out += ',';
  append_g(out, m.mrre_percent());
  out += ',';
  append_g(out, m.total_energy_j());
  std::snprintf(buf, sizeof buf, ",%llu,%llu,%llu,%llu,%llu,%llu,%llu",
                static_cast<unsigned long long>(m.control_packets()),
                static_cast<unsigned long long>(m.sent()),
                static_cast<unsigned long long>(m.received()),
                static_cast<unsigned long long>(m.dropped(DropReason::Collision)),
                static_cast<unsigned long long>(m.dropped(DropReason::NoRoute)),
                static_cast<unsigned long long>(m.dropped(DropReason::RetryLimit)),
                static_cast<unsigned long long>(m.dropped(DropReason::QueueOverflow)));
  out += buf;
  return out;
}

}  // namespace manet
