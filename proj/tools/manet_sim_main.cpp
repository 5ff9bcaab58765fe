#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "manet/config.hpp"
#include "manet/metrics.hpp"
#include "manet/sweep.hpp"
#include "manet/world.hpp"

namespace {

void apply_sets(manet::ScenarioConfig& cfg,
                const std::vector<std::string>& sets) {
  for (const std::string& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw manet::ConfigError("--set expects key=value, got '" + kv + "'");
    }
    manet::apply_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  manet::validate_scenario(cfg);
  manet::finalize_scenario(cfg);
}

// Accepts plain integers and inclusive lo-hi ranges, e.g. "1,4,7-9".
std::vector<std::uint64_t> expand_seeds(const std::vector<std::string>& toks) {
  std::vector<std::uint64_t> out;
  for (const std::string& t : toks) {
    auto dash = t.find('-');
    if (dash == std::string::npos) {
      out.push_back(std::stoull(t));
      continue;
    }
    std::uint64_t lo = std::stoull(t.substr(0, dash));
    std::uint64_t hi = std::stoull(t.substr(dash + 1));
    if (hi < lo) throw manet::ConfigError("bad seed range '" + t + "'");
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
  }
  return out;
}

int cmd_run(const std::string& config_path, const std::string& out_path,
            const std::string& trace_path,
            const std::vector<std::string>& sets) {
  manet::ScenarioConfig cfg = manet::parse_scenario_file(config_path);
  apply_sets(cfg, sets);
  manet::World world(cfg);
  std::ofstream trace;
  if (!trace_path.empty()) {
    trace.open(trace_path);
    if (!trace) {
      std::cerr << "error: cannot open trace file " << trace_path << "\n";
      return 1;
    }
    world.set_trace(&trace);
  }
  world.run();
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot open output file " << out_path << "\n";
      return 1;
    }
    out = &file;
  }
  *out << manet::csv_header() << "\n" << world.csv() << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              const std::vector<std::string>& protocols,
              const std::vector<std::string>& model_names,
              const std::vector<int>& connections,
              const std::vector<std::string>& seed_toks, int jobs,
              const std::vector<std::string>& sets) {
  manet::SweepSpec spec;
  spec.base = manet::parse_scenario_file(config_path);
  apply_sets(spec.base, sets);
  spec.protocols = protocols;
  for (const std::string& p : protocols) {
    if (p != "aodv" && p != "dsr" && p != "dsdv") {
      throw manet::ConfigError("unknown protocol '" + p + "'");
    }
  }
  for (const std::string& m : model_names) {
    manet::PropKind pk;
    if (!manet::parse_prop_kind(m.c_str(), pk)) {
      throw manet::ConfigError("unknown propagation model '" + m + "'");
    }
    spec.models.push_back(pk);
  }
  spec.connections = connections;
  spec.seeds = expand_seeds(seed_toks);
  spec.jobs = jobs;

  manet::SweepOutput result = manet::run_sweep(spec);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot open output file " << out_path << "\n";
      return 1;
    }
    out = &file;
  }
  *out << manet::csv_header() << "\n";
  for (const std::string& row : result.csv_rows) *out << row << "\n";
  if (!out_path.empty()) {
    std::ofstream gp(out_path + ".dat");
    if (gp) gp << result.gnuplot;
  }
  return result.all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MANET routing and propagation simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path, trace_path;
  std::vector<std::string> sets;

  auto* run = app.add_subcommand("run", "Run one scenario, print one CSV row");
  run->add_option("--config", config_path, "scenario config file")->required();
  run->add_option("--out", out_path, "write CSV here instead of stdout");
  run->add_option("--trace", trace_path, "write mobility/packet trace here");
  run->add_option("--set", sets, "override a config key (key=value)");

  std::vector<std::string> protocols, model_names, seed_toks;
  std::vector<int> connections;
  int jobs = 1;

  auto* sweep = app.add_subcommand("sweep", "Run a scenario grid");
  sweep->add_option("--config", config_path, "base scenario config file")
      ->required();
  sweep->add_option("--protocols", protocols, "protocol list")
      ->required()
      ->delimiter(',');
  sweep->add_option("--models", model_names, "propagation model list")
      ->required()
      ->delimiter(',');
  sweep->add_option("--connections", connections, "connection count list")
      ->required()
      ->delimiter(',');
  sweep
      ->add_option("--seeds", seed_toks,
                   "seed list; ranges like 1-10 are accepted")
      ->required()
      ->delimiter(',');
  sweep->add_option("--jobs", jobs, "concurrent simulations");
  sweep->add_option("--out", out_path,
                    "write CSV here (plus a gnuplot layout at <out>.dat)");
  sweep->add_option("--set", sets, "override a config key (key=value)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(run)) {
      return cmd_run(config_path, out_path, trace_path, sets);
    }
    return cmd_sweep(config_path, out_path, protocols, model_names,
                     connections, seed_toks, jobs, sets);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
