// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#include "ipk/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ipk::quad;

TEST_CASE("adaptive Gauss-Kronrod") {
  const Result r = integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(std::numbers::e - 1).epsilon(1e-14));
  CHECK(r.rel_error() <= 1e-13);
  // Integrable endpoint singularity; the rule never touches x = 0.
  const Result s = integrate([](double x) { return 1 / std::sqrt(x); }, 0.0, 1.0, {},
                             AdaptiveOptions{1e-10, 0.0, 2000});
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-9));
  // Breakpoints at a kink.
  const double kink[] = {0.3};
  const Result k = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, kink);
  CHECK(k.value == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-14));
}

TEST_CASE("fixed rules") {
  const Rule gl = gauss_legendre(8, -1.0, 2.0);
  // Exact for degree 15.
  CHECK(gl.apply([](double x) { return std::pow(x, 15); }) ==
        doctest::Approx((std::pow(2.0, 16) - 1) / 16).epsilon(1e-13));
  const Rule graded = graded_gauss_legendre(12, 8, 1e-4, 1.0);
  CHECK(graded.size() == 96u);
  CHECK(graded.apply([](double x) { return 1 / x; }) ==
        doctest::Approx(std::log(1e4)).epsilon(1e-10));
  const Rule per = periodic_trapezoid(8);
  CHECK(per.apply([](double x) { return std::cos(3 * x) * std::cos(3 * x); }) ==
        doctest::Approx(std::numbers::pi).epsilon(1e-14));
  CHECK(std::abs(per.apply([](double x) { return std::cos(5 * x); })) < 1e-14);
}
