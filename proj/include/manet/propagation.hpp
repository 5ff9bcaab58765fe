#pragma once

// Radio propagation: deterministic path loss (free space, two-ray ground,
// log-normal shadowing mean) and stochastic per-packet gains (shadowing
// sample, Rayleigh, Rice, Nakagami envelopes).  Pure functions over value
// types plus an explicit RNG stream.

#include "manet/rng.hpp"

namespace manet {

enum class PropKind {
  FreeSpace,
  TwoRay,
  Shadowing,
  Rayleigh,
  Rice,
  Nakagami,
};

const char* prop_kind_name(PropKind k);          // "freespace", "tworay", ...
bool parse_prop_kind(const char* s, PropKind& out);

struct RadioParams {
  double tx_power_w = 0.28183815;
  double gain_tx = 1.0;
  double gain_rx = 1.0;
  double sys_loss = 1.0;       // >= 1
  double wavelength_m = 0.32823;
  double ant_height_tx_m = 1.5;
  double ant_height_rx_m = 1.5;
  double rx_thresh_w = 3.652e-10;
  double cs_thresh_w = 1.559e-11;
};

struct FadingSpec {
  PropKind kind = PropKind::TwoRay;
  double beta = 2.7;           // shadowing path-loss exponent
  double sigma_db = 4.0;       // shadowing deviation
  double ref_dist_m = 1.0;     // shadowing reference distance d0
  double rice_k = 5.0;         // >= 0
  double nakagami_m = 0.75;    // >= 0.5
  double mean_power_w = 1.0;   // P (Rayleigh/Rice) or Omega (Nakagami)
  // Deterministic mean under the three fading kinds.
  PropKind mean_kind = PropKind::TwoRay;  // FreeSpace or TwoRay
};

struct PowerSample {
  double deterministic_w;  // mean / path-loss prediction
  double gain;             // multiplicative; 1 for deterministic kinds
  double received_w;       // deterministic_w * gain
};

double friis_power(const RadioParams& rp, double d);
double two_ray_power(const RadioParams& rp, double d);
double crossover_distance(const RadioParams& rp);

// Numerator constants so that friis = friis_const/d^2 and (beyond the
// crossover) two_ray = two_ray_const/d^4; shared with the batch kernels.
double friis_const(const RadioParams& rp);
double two_ray_const(const RadioParams& rp);

// Mean of Pr(d)/Pr(d0) in dB: -10 beta log10(d/d0).
double shadowing_mean_db(double beta, double d, double d0);

PowerSample shadowing_sample(const FadingSpec& spec, const RadioParams& rp,
                             double d, RngStream& rng);

// Envelope density at x for Rayleigh/Rice/Nakagami with mean power
// spec.mean_power_w; zero for x < 0.
double envelope_pdf(const FadingSpec& spec, double x);

// Unit-mean power gain g = x^2 / E[x^2] for the three fading kinds.
double fading_gain(const FadingSpec& spec, RngStream& rng);

PowerSample received_power(const FadingSpec& spec, const RadioParams& rp,
                           double d, RngStream& rng);

// Mean received power without drawing randomness (the value the batch
// kernels produce before the per-receiver gain is applied).
double deterministic_power(const FadingSpec& spec, const RadioParams& rp,
                           double d);

}  // namespace manet
