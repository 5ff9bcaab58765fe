#include "manet/specfun.hpp"

#include <cmath>

namespace manet {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

// Power series sum_k (x^2/4)^k / (k!)^2, accurate and fast up to x ~ 18
// where the largest term is ~1e6 against a sum of the same order (all
// terms positive, no cancellation).
double i0_series(double x) {
  double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// Asymptotic series I0(x) ~ e^x / sqrt(2 pi x) * sum_k a_k / x^k with
// a_0 = 1, a_k = a_{k-1} * (2k-1)^2 / (8k).  Truncated at the smallest
// term; good to ~1e-13 relative for x >= 18.
double i0_asym_factor(double x) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < 40; ++k) {
    double next = term * ((2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
    if (next >= term) break;  // series started diverging
    term = next;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

constexpr double kI0SeriesCut = 18.0;

}  // namespace

double bessel_i0(double x) {
  x = std::fabs(x);
  if (x <= kI0SeriesCut) return i0_series(x);
  return std::exp(x) / std::sqrt(2.0 * kPi * x) * i0_asym_factor(x);
}

double log_bessel_i0(double x) {
  x = std::fabs(x);
  if (x <= kI0SeriesCut) return std::log(i0_series(x));
  return x - 0.5 * std::log(2.0 * kPi * x) + std::log(i0_asym_factor(x));
}

double gamma_fn(double x) {
  // Lanczos, g = 7, 9 coefficients.
  static const double coef[9] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  }
  x -= 1.0;
  double a = coef[0];
  double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += coef[i] / (x + i);
  return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

}  // namespace manet
