#pragma once

// Modified Bessel function of the first kind, order zero, and the gamma
// function.  Both carry a >= 10 significant digit accuracy contract on the
// parameter ranges the fading densities use; implemented here so results
// do not depend on libm quality.

namespace manet {

double bessel_i0(double x);

// log(I0(x)); does not overflow for large x (I0(x) ~ e^x/sqrt(2*pi*x)).
double log_bessel_i0(double x);

// Gamma(x) for x > 0 (reflection handles the rest), Lanczos approximation.
double gamma_fn(double x);

}  // namespace manet
