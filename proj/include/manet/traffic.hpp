#pragma once

#include <cstdint>
#include <vector>

#include "manet/rng.hpp"
#include "manet/types.hpp"

namespace manet {

struct Connection {
  int id = 0;
  NodeId src = -1;
  NodeId dst = -1;
  double start_s = 0.0;
};

// Distinct ordered (src, dst) pairs with staggered starts, drawn from the
// dedicated traffic stream so the set depends only on (seed, nodes, count).
std::vector<Connection> build_connections(int n_nodes, int count,
                                          std::uint64_t master_seed,
                                          double start_stagger_s);

// Emission times are start + k/rate for k = 0,1,... strictly before stop.
int emission_count(double start_s, double stop_s, double rate_pps);

}  // namespace manet
