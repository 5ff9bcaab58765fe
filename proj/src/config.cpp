#include "manet/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "manet/presets.hpp"

namespace manet {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const char* want) {
  throw ConfigError("key '" + key + "': expected " + want + ", got '" +
                    value + "'");
}

double as_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (trim(value.substr(pos)).empty() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  bad_value(key, value, "a number");
}

long long as_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(value, &pos);
    if (trim(value.substr(pos)).empty()) return v;
  } catch (const std::exception&) {
  }
  bad_value(key, value, "an integer");
}

std::uint64_t as_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(value, &pos);
    if (trim(value.substr(pos)).empty() && value.find('-') == std::string::npos)
      return v;
  } catch (const std::exception&) {
  }
  bad_value(key, value, "an unsigned integer");
}

bool as_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes")
    return true;
  if (value == "false" || value == "0" || value == "off" || value == "no")
    return false;
  bad_value(key, value, "a boolean");
}

double positive(const std::string& key, const std::string& value) {
  double v = as_double(key, value);
  if (v <= 0.0) bad_value(key, value, "a positive number");
  return v;
}

double non_negative(const std::string& key, const std::string& value) {
  double v = as_double(key, value);
  if (v < 0.0) bad_value(key, value, "a non-negative number");
  return v;
}

int positive_int(const std::string& key, const std::string& value) {
  long long v = as_int(key, value);
  if (v <= 0 || v > 1000000000LL) bad_value(key, value, "a positive count");
  return static_cast<int>(v);
}

int non_negative_int(const std::string& key, const std::string& value) {
  long long v = as_int(key, value);
  if (v < 0 || v > 1000000000LL) bad_value(key, value, "a non-negative count");
  return static_cast<int>(v);
}

}  // namespace

void apply_key(ScenarioConfig& cfg, const std::string& key,
               const std::string& value) {
  const std::string& k = key;
  const std::string& v = value;
  if (k == "nodes") {
    cfg.nodes = positive_int(k, v);
  } else if (k == "width") {
    cfg.mobility.width = positive(k, v);
  } else if (k == "height") {
    cfg.mobility.height = positive(k, v);
  } else if (k == "sim_time") {
    cfg.sim_time_s = positive(k, v);
  } else if (k == "v_min") {
    cfg.mobility.v_min = positive(k, v);
  } else if (k == "v_max") {
    cfg.mobility.v_max = positive(k, v);
  } else if (k == "pause") {
    cfg.mobility.pause_s = non_negative(k, v);
  } else if (k == "protocol") {
    if (v != "aodv" && v != "dsr" && v != "dsdv")
      bad_value(k, v, "aodv, dsr, or dsdv");
    cfg.protocol = v;
  } else if (k == "propagation") {
    PropKind pk;
    if (!parse_prop_kind(v.c_str(), pk))
      bad_value(k, v, "freespace, tworay, shadowing, rayleigh, rice, or nakagami");
    cfg.propagation = pk;
  } else if (k == "connections") {
    cfg.connections = non_negative_int(k, v);
  } else if (k == "seed") {
    cfg.seed = as_u64(k, v);
  } else if (k == "shadowing_beta") {
    cfg.fading.beta = positive(k, v);
  } else if (k == "shadowing_beta_preset") {
    const Preset* p = find_beta_preset(v);
    if (p == nullptr) bad_value(k, v, "a named path-loss preset");
    cfg.fading.beta = p->lo;
  } else if (k == "shadowing_sigma_db") {
    cfg.fading.sigma_db = non_negative(k, v);
  } else if (k == "shadowing_sigma_preset") {
    const Preset* p = find_sigma_db_preset(v);
    if (p == nullptr) bad_value(k, v, "a named deviation preset");
    cfg.fading.sigma_db = p->lo;
  } else if (k == "shadowing_d0") {
    cfg.fading.ref_dist_m = positive(k, v);
  } else if (k == "rice_k") {
    cfg.fading.rice_k = non_negative(k, v);
  } else if (k == "nakagami_m") {
    double m = as_double(k, v);
    if (m < 0.5) bad_value(k, v, "a shape >= 0.5");
    cfg.fading.nakagami_m = m;
  } else if (k == "fading_mean") {
    if (v == "freespace") {
      cfg.fading.mean_kind = PropKind::FreeSpace;
    } else if (v == "tworay") {
      cfg.fading.mean_kind = PropKind::TwoRay;
    } else {
      bad_value(k, v, "freespace or tworay");
    }
  } else if (k == "tx_power") {
    cfg.radio.tx_power_w = positive(k, v);
  } else if (k == "gain_tx") {
    cfg.radio.gain_tx = positive(k, v);
  } else if (k == "gain_rx") {
    cfg.radio.gain_rx = positive(k, v);
  } else if (k == "sys_loss") {
    double l = as_double(k, v);
    if (l < 1.0) bad_value(k, v, "a loss factor >= 1");
    cfg.radio.sys_loss = l;
  } else if (k == "wavelength") {
    cfg.radio.wavelength_m = positive(k, v);
  } else if (k == "ant_height_tx") {
    cfg.radio.ant_height_tx_m = positive(k, v);
  } else if (k == "ant_height_rx") {
    cfg.radio.ant_height_rx_m = positive(k, v);
  } else if (k == "rx_thresh") {
    cfg.radio.rx_thresh_w = positive(k, v);
  } else if (k == "cs_thresh") {
    cfg.radio.cs_thresh_w = positive(k, v);
  } else if (k == "mac_slot") {
    cfg.mac.slot_s = positive(k, v);
  } else if (k == "mac_sifs") {
    cfg.mac.sifs_s = positive(k, v);
  } else if (k == "mac_cw_min") {
    cfg.mac.cw_min = positive_int(k, v);
  } else if (k == "mac_cw_max") {
    cfg.mac.cw_max = positive_int(k, v);
  } else if (k == "mac_retry_limit") {
    cfg.mac.retry_limit = non_negative_int(k, v);
  } else if (k == "mac_header_bytes") {
    cfg.mac.header_bytes = non_negative_int(k, v);
  } else if (k == "mac_ack_bytes") {
    cfg.mac.ack_bytes = positive_int(k, v);
  } else if (k == "ifq_capacity") {
    cfg.mac.ifq_capacity = positive_int(k, v);
  } else if (k == "capture_db") {
    cfg.capture_db = non_negative(k, v);
  } else if (k == "link_rate") {
    cfg.mac.rate_bps = positive(k, v);
  } else if (k == "queue_policy") {
    if (v != "auto" && v != "control_first" && v != "fifo")
      bad_value(k, v, "auto, control_first, or fifo");
    cfg.queue_policy = v;
  } else if (k == "rx_charge") {
    if (v == "all") {
      cfg.rx_charge_all = true;
    } else if (v == "addressed") {
      cfg.rx_charge_all = false;
    } else {
      bad_value(k, v, "all or addressed");
    }
  } else if (k == "energy_initial") {
    cfg.energy.initial_j = positive(k, v);
  } else if (k == "energy_tx_w") {
    cfg.energy.tx_power_w = positive(k, v);
  } else if (k == "energy_rx_w") {
    cfg.energy.rx_power_w = positive(k, v);
  } else if (k == "rate_pps") {
    cfg.rate_pps = positive(k, v);
  } else if (k == "payload_bytes") {
    cfg.payload_bytes = positive_int(k, v);
  } else if (k == "start_stagger") {
    cfg.start_stagger_s = non_negative(k, v);
  } else if (k == "hello_interval") {
    cfg.proto.hello_interval_s = positive(k, v);
  } else if (k == "allowed_hello_loss") {
    cfg.proto.allowed_hello_loss = positive_int(k, v);
  } else if (k == "active_route_timeout") {
    cfg.proto.active_route_timeout_s = positive(k, v);
  } else if (k == "rreq_retries") {
    cfg.proto.rreq_retries = non_negative_int(k, v);
  } else if (k == "rreq_timeout") {
    cfg.proto.rreq_timeout_s = positive(k, v);
  } else if (k == "cache_size") {
    cfg.proto.cache_size = positive_int(k, v);
  } else if (k == "reply_from_cache") {
    cfg.proto.reply_from_cache = as_bool(k, v);
  } else if (k == "send_buffer_size") {
    cfg.proto.send_buffer_size = positive_int(k, v);
  } else if (k == "send_buffer_timeout") {
    cfg.proto.send_buffer_timeout_s = positive(k, v);
  } else if (k == "dump_interval") {
    cfg.proto.dump_interval_s = positive(k, v);
  } else if (k == "triggered_updates") {
    cfg.proto.triggered_updates = as_bool(k, v);
  } else if (k == "min_update_gap") {
    cfg.proto.min_update_gap_s = non_negative(k, v);
  } else if (k == "ttl") {
    cfg.proto.ttl = positive_int(k, v);
  } else if (k == "trace_interval") {
    cfg.trace_interval_s = positive(k, v);
  } else {
    throw ConfigError("unknown key '" + k + "'");
  }
  cfg.set_keys.insert(k);
}

void validate_scenario(const ScenarioConfig& cfg) {
  auto require = [&](const char* key, bool ok, const std::string& why) {
    if (cfg.was_set(key) && !ok) {
      throw ConfigError(std::string("key '") + key + "': " + why);
    }
  };
  bool shadowing = cfg.propagation == PropKind::Shadowing;
  bool fading = cfg.propagation == PropKind::Rayleigh ||
                cfg.propagation == PropKind::Rice ||
                cfg.propagation == PropKind::Nakagami;
  require("rice_k", cfg.propagation == PropKind::Rice,
          "only meaningful with propagation = rice");
  require("nakagami_m", cfg.propagation == PropKind::Nakagami,
          "only meaningful with propagation = nakagami");
  require("shadowing_beta", shadowing,
          "only meaningful with propagation = shadowing");
  require("shadowing_beta_preset", shadowing,
          "only meaningful with propagation = shadowing");
  require("shadowing_sigma_db", shadowing,
          "only meaningful with propagation = shadowing");
  require("shadowing_sigma_preset", shadowing,
          "only meaningful with propagation = shadowing");
  require("shadowing_d0", shadowing,
          "only meaningful with propagation = shadowing");
  require("fading_mean", fading,
          "only meaningful with a fading propagation model");
  if (cfg.mobility.v_max < cfg.mobility.v_min) {
    throw ConfigError("key 'v_max': must be >= v_min");
  }
  if (cfg.mac.cw_max < cfg.mac.cw_min) {
    throw ConfigError("key 'mac_cw_max': must be >= mac_cw_min");
  }
  auto max_pairs = static_cast<long long>(cfg.nodes) * (cfg.nodes - 1);
  if (cfg.connections > max_pairs) {
    throw ConfigError("key 'connections': more than distinct ordered pairs");
  }
}

void finalize_scenario(ScenarioConfig& cfg) {
  cfg.fading.kind = cfg.propagation;
  cfg.mac.capture_ratio = std::pow(10.0, cfg.capture_db / 10.0);
  if (cfg.queue_policy == "auto") {
    cfg.mac.control_first = cfg.protocol != "dsdv";
  } else {
    cfg.mac.control_first = cfg.queue_policy == "control_first";
  }
  cfg.mac.rx_addressed_only = !cfg.rx_charge_all;
  cfg.energy.rate_bps = cfg.mac.rate_bps;
}

ScenarioConfig parse_scenario_text(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string stripped = trim(line);
    if (stripped.empty()) continue;
    auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": missing key");
    }
    try {
      apply_key(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  validate_scenario(cfg);
  finalize_scenario(cfg);
  return cfg;
}

ScenarioConfig parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str());
}

}  // namespace manet
