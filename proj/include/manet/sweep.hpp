#pragma once

// Cartesian sweep over {protocol} x {propagation} x {connections} x {seeds}.
// Cells may run on a small thread pool; each cell is an independent
// single-threaded simulation and rows are assembled in grid order after
// the fact, so the output does not depend on scheduling.

#include <cstdint>
#include <string>
#include <vector>

#include "manet/config.hpp"

namespace manet {

struct SweepSpec {
  ScenarioConfig base;
  std::vector<std::string> protocols;
  std::vector<PropKind> models;
  std::vector<int> connections;
  std::vector<std::uint64_t> seeds;
  int jobs = 1;
};

struct SweepOutput {
  std::vector<std::string> csv_rows;  // one per cell, grid order
  std::string gnuplot;                // per protocol x model mean blocks
  bool all_ok = true;
};

SweepOutput run_sweep(const SweepSpec& spec);

}  // namespace manet
