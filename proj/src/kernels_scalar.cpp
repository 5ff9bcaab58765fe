#include <algorithm>

#include "manet/kernels.hpp"

namespace manet::kernels {

static void dist2_scalar(const double* xs, const double* ys, double x0,
                         double y0, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double dx = xs[i] - x0;
    double dy = ys[i] - y0;
    out[i] = dx * dx + dy * dy;
  }
}

static void inv_d2_scalar(const double* d2, double c, double* out,
                          std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = c / d2[i];
}

static void two_ray_scalar(const double* d2, double cf, double ct,
                           double cross_d2, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double near = cf / d2[i];
    double far = ct / (d2[i] * d2[i]);
    out[i] = d2[i] < cross_d2 ? near : far;
  }
}

static void leg_pos_scalar(const LegSoA& legs, double t, double* xs,
                           double* ys, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double dt = t - legs.depart[i];
    dt = std::min(std::max(dt, 0.0), legs.travel[i]);
    xs[i] = legs.origin_x[i] + legs.vel_x[i] * dt;
    ys[i] = legs.origin_y[i] + legs.vel_y[i] * dt;
  }
}

const KernelTable& scalar_table() {
  static const KernelTable t = {"scalar", dist2_scalar, inv_d2_scalar,
                                two_ray_scalar, leg_pos_scalar};
  return t;
}

}  // namespace manet::kernels
