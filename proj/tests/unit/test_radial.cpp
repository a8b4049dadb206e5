// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#include "ipk/errors.hpp"
#include "ipk/radial.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace ipk;
using ipk::test::kPi;

TEST_CASE("Maxwellian moments and norms") {
  for (double t : {0.5, 1.0, 1.5}) {
    const auto m = maxwellian(96, 10.0, 1.0, t);
    INFO("T=" << t);
    CHECK(m.mass() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(l1k_norm(m, 0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m.energy() == doctest::Approx(3 * t).epsilon(1e-10));
    CHECK(l1k_norm(m, 2) == doctest::Approx(1 + 3 * t).epsilon(1e-10));
    // H = -3/2 log(2 pi T) - 3/2 for unit mass.
    CHECK(entropy(m) == doctest::Approx(-1.5 * std::log(2 * kPi * t) - 1.5).epsilon(1e-8));
    CHECK(llogl(m) >= std::abs(entropy(m)) - 1e-12);
  }
  // |f'| = r f / T, so the k = 0 seminorm is the mean speed over T.
  const auto fine = maxwellian(800, 10.0, 1.0, 1.0);
  CHECK(w11k_seminorm(fine, 0) == doctest::Approx(std::sqrt(8 / kPi)).epsilon(1e-4));
  CHECK(w11k_norm(fine, 0) == doctest::Approx(1 + std::sqrt(8 / kPi)).epsilon(1e-4));
}

TEST_CASE("zero density") {
  const auto z = RadialDistribution::sample(32, 8.0, [](double) { return 0.0; });
  CHECK(l1k_norm(z, 2) == 0.0);
  CHECK(w11k_seminorm(z, 2) == 0.0);
  CHECK(entropy(z) == 0.0);
  CHECK(llogl(z) == 0.0);
  CHECK(z.mass() == 0.0);
}

TEST_CASE("initial data library") {
  const auto b = bimodal(64, 8.0);
  CHECK(b.mass() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(b.energy() == doctest::Approx(3.0).epsilon(1e-6));  // tail of the T = 1.5 part beyond v_max
  CHECK(b.min_value() >= 0.0);
  // Not a Maxwellian: entropy above the equal-energy Maxwellian value.
  CHECK(entropy(b) > entropy(maxwellian(64, 8.0)) + 1e-3);
  const auto p = bump(64, 8.0, 1.5, 1.0, 2.0);
  CHECK(p.mass() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(p.values().front() == 0.0);
  CHECK(p.values().back() == 0.0);
}

TEST_CASE("interpolation") {
  const double t = 1.0;
  auto exact = [&](double r) { return maxwellian_density(r, 1.0, t); };
  const auto band = maxwellian(48, 8.0, 1.0, t, Interp::kBandLimited);
  const auto cubic = maxwellian(48, 8.0, 1.0, t, Interp::kMonotoneCubic);
  const auto lin = maxwellian(48, 8.0, 1.0, t, Interp::kLinear);
  double e_band = 0, e_cubic = 0, e_lin = 0;
  for (int i = 0; i < 1000; ++i) {
    const double r = 7.9 * (i + 0.5) / 1000;
    e_band = std::max(e_band, std::abs(band(r) - exact(r)));
    e_cubic = std::max(e_cubic, std::abs(cubic(r) - exact(r)));
    e_lin = std::max(e_lin, std::abs(lin(r) - exact(r)));
  }
  const double peak = exact(0.0);
  CHECK(e_band < 1e-9 * peak);
  CHECK(e_cubic < 2e-3 * peak);
  CHECK(e_lin < 1e-2 * peak);
  CHECK(e_band < e_cubic);
  CHECK(e_cubic < e_lin);
  // Nodal values are reproduced and the density vanishes past v_max.
  for (std::size_t i = 0; i < band.size(); ++i) {
    CHECK(band(band.r_nodes()[i]) == doctest::Approx(band.values()[i]).epsilon(1e-12));
  }
  CHECK(band(8.5) == 0.0);
}

TEST_CASE("grid validation and names") {
  CHECK_THROWS(RadialDistribution({0.1, 1.0}, {1.0, 1.0}, Interp::kLinear, 1.0));
  CHECK_THROWS(RadialDistribution({0.0, 1.0}, {1.0}, Interp::kLinear, 1.0));
  CHECK(parse_interp("band-limited") == Interp::kBandLimited);
  CHECK(parse_interp(to_string(Interp::kMonotoneCubic)) == Interp::kMonotoneCubic);
  CHECK_THROWS_AS(parse_interp("spline"), ConfigError);
}
