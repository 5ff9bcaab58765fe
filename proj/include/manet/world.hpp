#pragma once

// One complete simulation: mobility, radio, MAC, routing, traffic, energy
// and metrics wired over a single event queue.  Construction is cheap;
// run() executes the scenario to its horizon and finalizes the ledger.

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "manet/channel.hpp"
#include "manet/config.hpp"
#include "manet/energy.hpp"
#include "manet/event_queue.hpp"
#include "manet/mac.hpp"
#include "manet/metrics.hpp"
#include "manet/mobility.hpp"
#include "manet/routing.hpp"
#include "manet/traffic.hpp"

namespace manet {

class World : public MacCallbacks {
 public:
  explicit World(const ScenarioConfig& cfg);

  void set_trace(std::ostream* os) { trace_ = os; }
  void run();

  const MetricsLedger& ledger() const { return metrics_; }
  const EnergyModel& energy() const { return energy_; }
  const std::vector<Connection>& connections() const { return conns_; }
  std::string csv() const;

 private:
  void mac_deliver(NodeId at, const Packet& pkt, NodeId from,
                   bool addressed) override;
  void mac_link_result(NodeId at, NodeId next_hop, const Packet& pkt,
                       bool success) override;

  ProtoEnv make_env(NodeId i);
  void emit(std::size_t ci, int k);
  void trace_positions();

  ScenarioConfig cfg_;
  EventQueue queue_;
  Mobility mobility_;
  Channel channel_;
  EnergyModel energy_;
  MetricsLedger metrics_;
  CsmaMac mac_;
  std::vector<std::unique_ptr<RngStream>> proto_rngs_;
  std::vector<std::unique_ptr<RoutingProtocol>> protocols_;
  std::vector<Connection> conns_;
  std::vector<std::uint32_t> conn_seq_;
  std::uint64_t next_uid_ = 1;
  std::ostream* trace_ = nullptr;
};

// Parses, runs, and renders one scenario to a CSV row.  Exists so the
// sweep can execute cells without touching the CLI.
std::string run_scenario_csv(const ScenarioConfig& cfg);

}  // namespace manet
