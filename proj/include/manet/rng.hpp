#pragma once

// Labeled pseudo-random streams on top of xoshiro256**.
//
// Every consumer of randomness (topology, each node's mobility, traffic,
// fading, each node's mac backoff, ...) owns a stream derived from
// (master_seed, label).  Streams are independent of each other and of the
// order in which other streams are consumed, so e.g. node placement is
// identical across routing protocols for the same seed.
//
// All constants are pinned here rather than relying on std::mt19937 etc.,
// because the library distributions are not guaranteed bit-identical
// across standard library implementations.

#include <cstdint>
#include <string_view>

namespace manet {

std::uint64_t fnv1a64(std::string_view s);
std::uint64_t splitmix64_next(std::uint64_t& state);

class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::string_view label);

  std::uint64_t next_u64();

  // Uniform on [0, 1): 53-bit mantissa, never returns 1.
  double uniform();
  // Uniform on (0, 1]: safe as a log() argument.
  double uniform_pos();
  double uniform(double lo, double hi);            // [lo, hi)
  std::uint64_t below(std::uint64_t bound);        // unbiased on {0..bound-1}

  double normal();                                 // standard normal
  double normal(double mean, double stddev);
  double exponential(double mean);                 // mean > 0
  // Gamma(shape, scale) with shape > 0 via Marsaglia-Tsang with the
  // standard shape<1 boost.
  double gamma(double shape, double scale);

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace manet
