#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>

#include "manet/energy.hpp"
#include "manet/mac.hpp"
#include "manet/mobility.hpp"
#include "manet/propagation.hpp"
#include "manet/routing.hpp"

namespace manet {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  int nodes = 50;
  double sim_time_s = 200.0;
  std::string protocol = "aodv";
  PropKind propagation = PropKind::TwoRay;
  int connections = 10;
  std::uint64_t seed = 1;

  MobilityParams mobility;
  RadioParams radio;
  FadingSpec fading;
  MacConfig mac;
  EnergyParams energy;
  ProtoConfig proto;

  std::string queue_policy = "auto";  // auto | control_first | fifo
  bool rx_charge_all = true;          // promiscuous receive charging
  double capture_db = 10.0;

  double rate_pps = 8.0;
  int payload_bytes = 512;
  double start_stagger_s = 10.0;

  double trace_interval_s = 1.0;

  // Keys the user set explicitly (file or flag); drives cross-field checks.
  std::set<std::string> set_keys;

  bool was_set(const std::string& key) const { return set_keys.count(key) != 0; }
};

// Single `key = value` assignment; throws ConfigError on unknown key or
// malformed value.  Records the key in set_keys.
void apply_key(ScenarioConfig& cfg, const std::string& key,
               const std::string& value);

// Cross-field checks (model params vs propagation, ranges spanning keys).
void validate_scenario(const ScenarioConfig& cfg);

// Resolves derived fields: fading.kind, queue discipline, linked rates.
void finalize_scenario(ScenarioConfig& cfg);

// Full pipeline over `key = value` lines with # comments.
ScenarioConfig parse_scenario_text(const std::string& text);
ScenarioConfig parse_scenario_file(const std::string& path);

}  // namespace manet
