// AVX2 variants of the batch kernels.  This translation unit is the only
// one compiled with -mavx2; callers reach it through the dispatch table.
// No fma intrinsics: the scalar reference multiplies then adds, and the
// two paths must agree bit for bit.

#include "manet/kernels.hpp"

#ifdef MANET_HAVE_AVX2

#include <immintrin.h>

#include <algorithm>

namespace manet::kernels {

static void dist2_avx2(const double* xs, const double* ys, double x0,
                       double y0, double* out, std::size_t n) {
  const __m256d vx0 = _mm256_set1_pd(x0);
  const __m256d vy0 = _mm256_set1_pd(y0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx0);
    __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy0);
    __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    _mm256_storeu_pd(out + i, d2);
  }
  for (; i < n; ++i) {
    double dx = xs[i] - x0;
    double dy = ys[i] - y0;
    out[i] = dx * dx + dy * dy;
  }
}

static void inv_d2_avx2(const double* d2, double c, double* out,
                        std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_div_pd(vc, _mm256_loadu_pd(d2 + i)));
  }
  for (; i < n; ++i) out[i] = c / d2[i];
}

static void two_ray_avx2(const double* d2, double cf, double ct,
                         double cross_d2, double* out, std::size_t n) {
  const __m256d vcf = _mm256_set1_pd(cf);
  const __m256d vct = _mm256_set1_pd(ct);
  const __m256d vcross = _mm256_set1_pd(cross_d2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(d2 + i);
    __m256d near = _mm256_div_pd(vcf, v);
    __m256d far = _mm256_div_pd(vct, _mm256_mul_pd(v, v));
    __m256d take_near = _mm256_cmp_pd(v, vcross, _CMP_LT_OQ);
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(far, near, take_near));
  }
  for (; i < n; ++i) {
    double near = cf / d2[i];
    double far = ct / (d2[i] * d2[i]);
    out[i] = d2[i] < cross_d2 ? near : far;
  }
}

static void leg_pos_avx2(const LegSoA& legs, double t, double* xs, double* ys,
                         std::size_t n) {
  const __m256d vt = _mm256_set1_pd(t);
  const __m256d vzero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d dt = _mm256_sub_pd(vt, _mm256_loadu_pd(legs.depart + i));
    dt = _mm256_max_pd(dt, vzero);
    dt = _mm256_min_pd(dt, _mm256_loadu_pd(legs.travel + i));
    __m256d x = _mm256_add_pd(
        _mm256_loadu_pd(legs.origin_x + i),
        _mm256_mul_pd(_mm256_loadu_pd(legs.vel_x + i), dt));
    __m256d y = _mm256_add_pd(
        _mm256_loadu_pd(legs.origin_y + i),
        _mm256_mul_pd(_mm256_loadu_pd(legs.vel_y + i), dt));
    _mm256_storeu_pd(xs + i, x);
    _mm256_storeu_pd(ys + i, y);
  }
  for (; i < n; ++i) {
    double dt = t - legs.depart[i];
    dt = std::min(std::max(dt, 0.0), legs.travel[i]);
    xs[i] = legs.origin_x[i] + legs.vel_x[i] * dt;
    ys[i] = legs.origin_y[i] + legs.vel_y[i] * dt;
  }
}

const KernelTable* avx2_table() {
  static const KernelTable t = {"avx2", dist2_avx2, inv_d2_avx2, two_ray_avx2,
                                leg_pos_avx2};
  return &t;
}

}  // namespace manet::kernels

#else

namespace manet::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace manet::kernels

#endif
