#include "manet/propagation.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "manet/specfun.hpp"

namespace manet {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kLn10Over10 = 0.2302585092994045684017991454684;
}  // namespace

const char* prop_kind_name(PropKind k) {
  switch (k) {
    case PropKind::FreeSpace: return "freespace";
    case PropKind::TwoRay: return "tworay";
    case PropKind::Shadowing: return "shadowing";
    case PropKind::Rayleigh: return "rayleigh";
    case PropKind::Rice: return "rice";
    case PropKind::Nakagami: return "nakagami";
  }
  return "?";
}

bool parse_prop_kind(const char* s, PropKind& out) {
  static const PropKind kinds[] = {PropKind::FreeSpace, PropKind::TwoRay,
                                   PropKind::Shadowing, PropKind::Rayleigh,
                                   PropKind::Rice,      PropKind::Nakagami};
  for (PropKind k : kinds) {
    if (std::strcmp(s, prop_kind_name(k)) == 0) {
      out = k;
      return true;
    }
  }
  return false;
}

double friis_const(const RadioParams& rp) {
  double four_pi = 4.0 * kPi;
  return rp.tx_power_w * rp.gain_tx * rp.gain_rx * rp.wavelength_m *
         rp.wavelength_m / (four_pi * four_pi * rp.sys_loss);
}

double two_ray_const(const RadioParams& rp) {
  return rp.tx_power_w * rp.gain_tx * rp.gain_rx * rp.ant_height_tx_m *
         rp.ant_height_tx_m * rp.ant_height_rx_m * rp.ant_height_rx_m /
         rp.sys_loss;
}

double friis_power(const RadioParams& rp, double d) {
  if (!(d > 0.0)) throw std::domain_error("friis_power: d must be > 0");
  return friis_const(rp) / (d * d);
}

double crossover_distance(const RadioParams& rp) {
  return 4.0 * kPi * rp.ant_height_tx_m * rp.ant_height_rx_m /
         rp.wavelength_m;
}

double two_ray_power(const RadioParams& rp, double d) {
  if (!(d > 0.0)) throw std::domain_error("two_ray_power: d must be > 0");
  if (d < crossover_distance(rp)) return friis_power(rp, d);
  double d2 = d * d;
  return two_ray_const(rp) / (d2 * d2);
}

double shadowing_mean_db(double beta, double d, double d0) {
  if (!(d > 0.0) || !(d0 > 0.0)) {
    throw std::domain_error("shadowing_mean_db: distances must be > 0");
  }
  return -10.0 * beta * std::log10(d / d0);
}

PowerSample shadowing_sample(const FadingSpec& spec, const RadioParams& rp,
                             double d, RngStream& rng) {
  double pr_d0 = friis_power(rp, spec.ref_dist_m);
  double mean_db = shadowing_mean_db(spec.beta, d, spec.ref_dist_m);
  double x_db = spec.sigma_db > 0.0 ? rng.normal(0.0, spec.sigma_db) : 0.0;
  PowerSample s;
  s.deterministic_w = pr_d0 * std::exp(kLn10Over10 * mean_db);
  s.gain = std::exp(kLn10Over10 * x_db);
  s.received_w = s.deterministic_w * s.gain;
  return s;
}

double envelope_pdf(const FadingSpec& spec, double x) {
  if (x < 0.0) return 0.0;
  double p = spec.mean_power_w;
  switch (spec.kind) {
    case PropKind::Rayleigh:
      return (2.0 * x / p) * std::exp(-x * x / p);
    case PropKind::Rice: {
      double k = spec.rice_k;
      // The exponent is always <= 0: K + (K+1)x^2/P >= 2x sqrt(K(K+1)/P).
      double arg = 2.0 * x * std::sqrt(k * (k + 1.0) / p);
      double log_f = -k - (k + 1.0) * x * x / p + log_bessel_i0(arg);
      return (2.0 * (k + 1.0) * x / p) * std::exp(log_f);
    }
    case PropKind::Nakagami: {
      double m = spec.nakagami_m;
      if (x == 0.0) {
        // x^(2m-1) -> {0 if m>1/2, 1 if m=1/2}; avoid 0^0.
        if (m > 0.5) return 0.0;
        return 2.0 * std::pow(m / p, m) / gamma_fn(m);
      }
      double log_f = m * std::log(m / p) + (2.0 * m - 1.0) * std::log(x) -
                     m * x * x / p;
      return 2.0 * std::exp(log_f) / gamma_fn(m);
    }
    default:
      throw std::domain_error("envelope_pdf: kind has no envelope density");
  }
}

double fading_gain(const FadingSpec& spec, RngStream& rng) {
  switch (spec.kind) {
    case PropKind::Rayleigh:
      // g = x^2/P is exponential with unit mean.
      return -std::log(rng.uniform_pos());
    case PropKind::Rice: {
      // Direct path nu plus circular Gaussian scatter, normalized by P.
      double k = spec.rice_k;
      double sigma = std::sqrt(1.0 / (2.0 * (k + 1.0)));
      double nu = std::sqrt(k / (k + 1.0));
      double a = nu + sigma * rng.normal();
      double b = sigma * rng.normal();
      return a * a + b * b;
    }
    case PropKind::Nakagami:
      return rng.gamma(spec.nakagami_m, 1.0 / spec.nakagami_m);
    default:
      throw std::domain_error("fading_gain: kind has no fading gain");
  }
}

double deterministic_power(const FadingSpec& spec, const RadioParams& rp,
                           double d) {
  switch (spec.kind) {
    case PropKind::FreeSpace:
      return friis_power(rp, d);
    case PropKind::TwoRay:
      return two_ray_power(rp, d);
    case PropKind::Shadowing: {
      double pr_d0 = friis_power(rp, spec.ref_dist_m);
      double mean_db = shadowing_mean_db(spec.beta, d, spec.ref_dist_m);
      return pr_d0 * std::exp(kLn10Over10 * mean_db);
    }
    case PropKind::Rayleigh:
    case PropKind::Rice:
    case PropKind::Nakagami:
      return spec.mean_kind == PropKind::FreeSpace ? friis_power(rp, d)
                                                   : two_ray_power(rp, d);
  }
  throw std::domain_error("deterministic_power: bad kind");
}

PowerSample received_power(const FadingSpec& spec, const RadioParams& rp,
                           double d, RngStream& rng) {
  switch (spec.kind) {
    case PropKind::FreeSpace:
    case PropKind::TwoRay: {
      PowerSample s;
      s.deterministic_w = deterministic_power(spec, rp, d);
      s.gain = 1.0;
      s.received_w = s.deterministic_w;
      return s;
    }
    case PropKind::Shadowing:
      return shadowing_sample(spec, rp, d, rng);
    case PropKind::Rayleigh:
    case PropKind::Rice:
    case PropKind::Nakagami: {
      PowerSample s;
      s.deterministic_w = deterministic_power(spec, rp, d);
      s.gain = fading_gain(spec, rng);
      s.received_w = s.deterministic_w * s.gain;
      return s;
    }
  }
  throw std::domain_error("received_power: bad kind");
}

}  // namespace manet
