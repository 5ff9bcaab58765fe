#include <cmath>
#include <initializer_list>

#include "doctest.h"
#include "manet/specfun.hpp"

using namespace manet;

namespace {
bool close_rel(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::abs(want);
}
}  // namespace

TEST_CASE("bessel_i0 against high-precision values") {
  // Frozen from a 30-digit arbitrary-precision evaluation.
  CHECK(bessel_i0(0.0) == 1.0);
  CHECK(close_rel(bessel_i0(0.5), 1.06348337074132352, 1e-12));
  CHECK(close_rel(bessel_i0(1.0), 1.26606587775200834, 1e-12));
  CHECK(close_rel(bessel_i0(5.0), 27.2398718236044469, 1e-12));
  CHECK(close_rel(bessel_i0(15.0), 339649.373297913880, 1e-11));
  CHECK(close_rel(bessel_i0(18.0), 6218412.42078100295, 1e-11));
  CHECK(close_rel(bessel_i0(50.0), 2.93255378384933633e20, 1e-11));
  CHECK(close_rel(bessel_i0(420.0), 4.93284226597358521e180, 1e-10));
  CHECK(bessel_i0(-3.0) == bessel_i0(3.0));  // even function
}

TEST_CASE("bessel_i0 against the standard library") {
  for (double x = 0.1; x < 30.0; x += 0.7) {
    CHECK(close_rel(bessel_i0(x), std::cyl_bessel_i(0.0, x), 1e-9));
  }
}

TEST_CASE("log_bessel_i0 tracks log(I0) and survives large arguments") {
  for (double x : {0.1, 0.5, 1.0, 5.0, 15.0, 18.0, 50.0}) {
    CHECK(close_rel(log_bessel_i0(x), std::log(bessel_i0(x)), 1e-11));
  }
  CHECK(close_rel(log_bessel_i0(50.0), 47.1275755018718046, 1e-12));
  CHECK(close_rel(log_bessel_i0(700.0), 695.805699998443449, 1e-12));
  CHECK(std::isfinite(log_bessel_i0(5e4)));
}

TEST_CASE("gamma_fn against high-precision values") {
  CHECK(close_rel(gamma_fn(0.25), 3.62560990822190831, 1e-12));
  CHECK(close_rel(gamma_fn(0.5), 1.77245385090551603, 1e-12));  // sqrt(pi)
  CHECK(close_rel(gamma_fn(0.75), 1.22541670246517765, 1e-12));
  CHECK(close_rel(gamma_fn(2.5), 1.32934038817913702, 1e-12));
  CHECK(close_rel(gamma_fn(9.5), 119292.461994609007, 1e-12));
  CHECK(close_rel(gamma_fn(1.0), 1.0, 1e-14));
  CHECK(close_rel(gamma_fn(6.0), 120.0, 1e-13));  // 5!
}

TEST_CASE("gamma_fn against the standard library") {
  for (double x = 0.1; x < 20.0; x += 0.3) {
    CHECK(close_rel(gamma_fn(x), std::tgamma(x), 1e-11));
  }
}

TEST_CASE("gamma recurrence holds") {
  for (double x : {0.3, 0.9, 1.7, 4.2, 8.8}) {
    CHECK(close_rel(gamma_fn(x + 1.0), x * gamma_fn(x), 1e-12));
  }
}
