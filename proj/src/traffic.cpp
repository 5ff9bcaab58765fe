#include "manet/traffic.hpp"

#include <set>
#include <stdexcept>
#include <utility>

namespace manet {

std::vector<Connection> build_connections(int n_nodes, int count,
                                          std::uint64_t master_seed,
                                          double start_stagger_s) {
  if (n_nodes < 2 && count > 0) {
    throw std::invalid_argument("need at least two nodes for traffic");
  }
  auto max_pairs =
      static_cast<long long>(n_nodes) * (n_nodes - 1);
  if (count > max_pairs) {
    throw std::invalid_argument("more connections than distinct node pairs");
  }
  RngStream rng(master_seed, "traffic");
  std::set<std::pair<NodeId, NodeId>> used;
  std::vector<Connection> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    NodeId src = 0, dst = 0;
    do {
      src = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n_nodes)));
      dst = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n_nodes)));
    } while (src == dst || used.count({src, dst}) != 0);
    used.insert({src, dst});
    out.push_back(Connection{i, src, dst, rng.uniform() * start_stagger_s});
  }
  return out;
}

int emission_count(double start_s, double stop_s, double rate_pps) {
  if (stop_s <= start_s || rate_pps <= 0.0) return 0;
  int k = 0;
  while (start_s + static_cast<double>(k) / rate_pps < stop_s) ++k;
  return k;
}

}  // namespace manet
