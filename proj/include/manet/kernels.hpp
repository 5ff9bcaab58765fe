#pragma once

// Batch kernels for the simulator's two hot loops: per-frame received power
// at every node, and waypoint position interpolation.  A scalar reference
// implementation always exists; an AVX2 variant is selected at runtime when
// the CPU supports it.  Both variants use the same operation order and no
// fused multiply-adds, so their results are bit-identical and simulation
// output does not depend on the host CPU.

#include <cstddef>

namespace manet::kernels {

// Positions and straight-line legs in structure-of-arrays form.
// Position at time t: origin + vel * clamp(t - depart, 0, travel).
struct LegSoA {
  const double* origin_x;
  const double* origin_y;
  const double* vel_x;
  const double* vel_y;
  const double* depart;   // leg start time
  const double* travel;   // leg duration, >= 0
};

struct KernelTable {
  const char* name;

  // out[i] = (xs[i]-x0)^2 + (ys[i]-y0)^2
  void (*dist2)(const double* xs, const double* ys, double x0, double y0,
                double* out, std::size_t n);

  // out[i] = c / d2[i]
  void (*inv_d2)(const double* d2, double c, double* out, std::size_t n);

  // out[i] = d2[i] < cross_d2 ? cf/d2[i] : ct/(d2[i]*d2[i])
  // Both branches are evaluated and then selected, mirroring the vector
  // blend, so scalar and simd results match bit for bit.
  void (*two_ray)(const double* d2, double cf, double ct, double cross_d2,
                  double* out, std::size_t n);

  // xs[i], ys[i] = position of leg i at time t
  void (*leg_pos)(const LegSoA& legs, double t, double* xs, double* ys,
                  std::size_t n);
};

const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when not compiled in
bool cpu_has_avx2();

// Active table: resolved once from MANET_KERNELS (auto|scalar|avx2),
// defaulting to auto.  select() overrides it (used by tests and the CLI);
// returns false if the requested backend is unavailable.
const KernelTable& active();
bool select(const char* name);

}  // namespace manet::kernels
