// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#include "ipk/errors.hpp"
#include "ipk/kernel.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace ipk;
using ipk::test::kPi;

namespace {
bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}
}  // namespace

TEST_CASE("scattering radicand endpoints and sandwich") {
  CHECK(scattering_radicand(0.3, 0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(scattering_radicand(0.3, 0.5, 1.0)) < 1e-15);
  CHECK(scattering_radicand(0.5, 0.7, 0.5) == doctest::Approx(0.75).epsilon(1e-15));
  for (double s : {0.01, 0.1, 0.3, 0.5, 0.9}) {
    for (double y : {0.0, 0.2, 0.6, 0.95, 1.0}) {
      for (int i = 0; i <= 50; ++i) {
        const double z = i / 50.0;
        const double g = scattering_radicand(s, y, z);
        const double upper = 1 - y * y * z * z;
        const double lower = upper * (1 - std::pow(z, 1 / s));
        CHECK(g >= lower - 1e-15);
        CHECK(g <= upper + 1e-15);
      }
    }
  }
  CHECK_THROWS_AS(scattering_radicand(0.3, 1.2, 0.5), DomainError);
  CHECK_THROWS_AS(scattering_radicand(0.3, 0.5, -0.1), DomainError);
  CHECK_THROWS_AS(scattering_radicand(0.0, 0.5, 0.5), DomainError);
}

TEST_CASE("impact angle: closed form, endpoints and brute-force oracle") {
  CHECK(impact_angle(0.5, 0.6) == doctest::Approx(0.6 * kPi / 2).epsilon(1e-12));
  for (double s : {0.01, 0.3, 0.9}) {
    CHECK(impact_angle(s, 0.0) == 0.0);
    CHECK(impact_angle(s, 1.0) == doctest::Approx(kPi / 2).epsilon(1e-14));
  }
  const double v = impact_angle(0.01, 0.5);
  CHECK(v > std::asin(0.5));
  CHECK(v <= std::asin(0.5) + 0.01155);
  CHECK(rel_close(v, test::brute_impact_angle(0.01, 0.5), 1e-9));
  for (double s : {0.05, 0.2, 0.7}) {
    for (double y : {0.1, 0.5, 0.9}) {
      INFO("s=" << s << " y=" << y);
      CHECK(rel_close(impact_angle(s, y), test::brute_impact_angle(s, y), 1e-9));
    }
  }
}

TEST_CASE("impact angle slope: endpoint values and finite differences") {
  CHECK(impact_angle_slope(0.5, 0.3) == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(impact_angle_slope(0.25, 1.0) == doctest::Approx(3 * kPi / 4).epsilon(1e-10));
  // phi'(0) = int (1 - z^{1/s})^{-1/2} dz = s B(s, 1/2).
  for (double s : {0.1, 0.3, 0.8}) {
    const double ref = s * std::beta(s, 0.5);
    const double got = impact_angle_slope(s, 0.0);
    CHECK(rel_close(got, ref, 1e-10));
    CHECK(got >= 1.0);
    CHECK(got <= 2.0);
  }
  // phi'(1) = W_{1/s} / s.
  for (double s : {0.05, 0.2, 0.6}) {
    CHECK(rel_close(impact_angle_slope(s, 1.0), test::gamma_wallis(1 / s) / s, 1e-10));
  }
  // Central differences away from y = 1.
  for (double s : {0.02, 0.2, 0.5, 0.8}) {
    for (double y : {0.1, 0.4, 0.7, 0.9}) {
      const double h = 1e-5;
      const double fd = (impact_angle(s, y + h, 1e-13) - impact_angle(s, y - h, 1e-13)) / (2 * h);
      INFO("s=" << s << " y=" << y);
      CHECK(rel_close(fd, impact_angle_slope(s, y), 1e-6));
    }
  }
}

TEST_CASE("impact angle slope is monotone in y, in opposite directions around s = 1/2") {
  for (double s : {0.05, 0.2, 0.4, 0.6, 0.9}) {
    const auto table = build_map_table(s, 64);
    const auto& nodes = table.nodes();
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      const double d = nodes[i].dphi - nodes[i - 1].dphi;
      INFO("s=" << s << " y=" << nodes[i].y);
      if (s < 0.5) CHECK(d >= -1e-9 * nodes[i].dphi);
      else CHECK(d <= 1e-9 * nodes[i].dphi);
    }
  }
}

TEST_CASE("map table construction") {
  const auto half = build_map_table(0.5, 64, 1e-10);
  for (const auto& n : half.nodes()) CHECK(std::abs(n.phi - kPi * n.y / 2) <= 1e-10);

  const auto coarse = build_map_table(0.2, 16, 1e-8);
  CHECK(coarse.nodes().front().y == 0.0);
  CHECK(coarse.nodes().front().phi == 0.0);
  CHECK(coarse.nodes().back().y == 1.0);
  CHECK(coarse.nodes().back().phi == doctest::Approx(kPi / 2).epsilon(1e-14));

  const double s = 0.05;
  const auto t = build_map_table(s, 128, 1e-10);
  const double edge = t.nodes().back().dphi;
  CHECK(edge >= 1 / std::sqrt(s));
  CHECK(edge <= std::sqrt(kPi / 2) / std::sqrt(s));

  // Nodes are graded toward y = 1.
  const auto& n = t.nodes();
  CHECK(n[n.size() - 1].y - n[n.size() - 2].y < n[2].y - n[1].y);
  CHECK_THROWS_AS(build_map_table(0.2, 8), DomainError);
}

TEST_CASE("inverse map") {
  const auto half = build_map_table(0.5);
  CHECK(impact_parameter(half, kPi / 4) == doctest::Approx(0.5).epsilon(1e-12));
  for (int i = 1; i < 1000; ++i) {
    const double phi = kPi / 2 * i / 1000.0;
    CHECK(impact_parameter(half, phi) == doctest::Approx(2 * phi / kPi).epsilon(1e-10));
    CHECK(impact_parameter_slope(half, phi) == doctest::Approx(2 / kPi).epsilon(1e-10));
  }

  for (double s : {0.001, 0.05, 0.3, 0.9}) {
    const auto table = build_map_table(s);
    CHECK(impact_parameter(table, 0.0) == 0.0);
    CHECK(impact_parameter(table, kPi / 2) == 1.0);
    double prev = 0.0;
    for (int i = 1; i < 100; ++i) {
      const double phi = 0.01 + (kPi / 2 - 0.02) * i / 100.0;
      const double y = impact_parameter(table, phi);
      INFO("s=" << s << " phi=" << phi);
      // Round trip through the forward map.
      CHECK(std::abs(impact_angle(s, y) - phi) <= 10 * table.tol() * std::max(1.0, phi));
      CHECK(y < std::sin(phi));
      CHECK(y > prev);
      const double slope = impact_parameter_slope(table, phi);
      CHECK(slope > 0.0);
      CHECK(slope <= 1.0 + 1e-12);
      CHECK(rel_close(slope, 1.0 / impact_angle_slope(s, y), 1e-9));
      prev = y;
    }
  }

  const auto t05 = build_map_table(0.05);
  const double y = impact_parameter(t05, 1.0);
  CHECK(std::abs(y - std::sin(1.0)) <= 2 * y * 0.05);
  CHECK(std::abs(impact_angle(0.05, y) - 1.0) <= 1e-9);

  const auto t03 = build_map_table(0.3);
  const double y0 = impact_parameter_slope(t03, 0.0);
  CHECK(y0 >= 0.5);
  CHECK(y0 <= 1.0);
  CHECK(rel_close(y0, 1 / (0.3 * std::beta(0.3, 0.5)), 1e-10));

  const auto t01 = build_map_table(0.1);
  const double y12 = impact_parameter(t01, 1.2);
  const double yp = impact_parameter_slope(t01, 1.2);
  CHECK(std::abs(yp - std::cos(1.2)) <= 6 * 0.1 * yp / (1 - y12 * y12));

  CHECK_THROWS_AS(impact_parameter(t01, -0.1), DomainError);
  CHECK_THROWS_AS(impact_parameter(t01, 2.0), DomainError);
}

TEST_CASE("complement inversion keeps relative accuracy in 1 - y") {
  const double s = 0.1;
  const auto table = build_map_table(s);
  for (double c : {1e-3, 1e-5, 1e-7}) {
    const Inversion inv = invert_complement(table, c);
    const AngleValue a = impact_angle_value(s, inv.point);
    INFO("c=" << c);
    CHECK(rel_close(a.complement, c, 1e-8));
  }
}

TEST_CASE("impact factor") {
  for (double s : {0.01, 0.3, 0.9}) {
    CHECK(impact_factor(s, 0.0) == 0.0);
    CHECK(impact_factor_slope(s, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(impact_factor(0.5, 0.5) == doctest::Approx(0.5773502692).epsilon(1e-10));
  CHECK(impact_factor_slope(0.5, 0.5) == doctest::Approx(1.5396007178).epsilon(1e-10));
  CHECK(impact_factor(1e-12, 0.5) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(impact_factor_slope(1e-12, 0.5) == doctest::Approx(1.0).epsilon(1e-10));
  // Slope against a finite difference of the factor itself.
  for (double s : {0.1, 0.4}) {
    const double y = 0.6, h = 1e-6;
    const double fd = (impact_factor(s, y + h) - impact_factor(s, y - h)) / (2 * h);
    CHECK(rel_close(fd, impact_factor_slope(s, y), 1e-8));
  }
  CHECK_THROWS_AS(impact_factor(0.3, 1.0), DomainError);
  CHECK_THROWS_AS(impact_factor_slope(0.3, 1.0), DomainError);
}

TEST_CASE("angular kernel at s = 1/2 matches the closed form on 1000 points") {
  const auto table = build_map_table(0.5);
  CHECK(angular_kernel(table, kPi / 2).value ==
        doctest::Approx(32.0 / (9.0 * kPi)).epsilon(1e-10));
  for (int i = 1; i < 1000; ++i) {
    const double theta = kPi * i / 1000.0;
    CHECK(rel_close(angular_kernel(table, theta).value, test::half_kernel(theta), 1e-8));
  }
  CHECK(rel_close(angular_kernel(table, kPi).value, 4 / (kPi * kPi), 1e-10));
  CHECK(symmetrized_kernel(table, kPi / 2) == doctest::Approx(64.0 / (9.0 * kPi)).epsilon(1e-10));
  CHECK(symmetrized_kernel(table, 3 * kPi / 4) == 0.0);
  CHECK_THROWS_AS(angular_kernel(table, 0.0), DomainError);
  CHECK_THROWS_AS(angular_kernel(table, 3.5), DomainError);
}

TEST_CASE("angular kernel limits") {
  // Value at pi is the limit of nearby values.
  for (double s : {0.05, 0.3, 0.8}) {
    const auto table = build_map_table(s);
    const double at_pi = angular_kernel(table, kPi).value;
    CHECK(at_pi > 0.0);
    CHECK(rel_close(angular_kernel(table, kPi - 1e-5).value, at_pi, 1e-6));
  }
  // Small-angle constant.
  for (double s : {0.1, 0.2, 0.3}) {
    const auto table = build_map_table(s);
    const double theta = 1e-3;
    const double scaled = std::pow(theta, 2 + 2 * s) * angular_kernel(table, theta).value;
    INFO("s=" << s);
    CHECK(std::abs(scaled / grazing_constant(s) - 1) <= 0.02);
  }
  // Near the hard-sphere value 1/4.
  const double s = 1e-3;
  const auto table = build_map_table(s);
  const double b = angular_kernel(table, kPi / 2).value;
  CHECK(std::abs(b - 0.25) <= 50000 * s * std::pow(kPi / 2, -2 - 2 * s));
  const auto t01 = build_map_table(0.01);
  CHECK(std::abs(symmetrized_kernel(t01, 1.0) - 0.5) <= 2 * 50000 * 0.01);
}

TEST_CASE("Wallis integrals and the grazing constant") {
  CHECK(wallis(2) == doctest::Approx(kPi / 4).epsilon(1e-14));
  // Recurrence W_n = (n-1)/n W_{n-2} from W_0 = pi/2.
  double w = kPi / 2;
  for (int n = 2; n <= 40; n += 2) {
    w *= (n - 1.0) / n;
    CHECK(std::abs(wallis(n) - w) <= 1e-12 * w);
  }
  CHECK(std::abs(wallis(4) - 3 * kPi / 16) <= 1e-12);
  for (double n : {1.0, 1.5, 3.3, 10.0, 100.0, 1000.0}) {
    const double r = std::sqrt(n) * wallis(n);
    CHECK(r >= 1.0 - 1e-15);
    CHECK(r <= std::sqrt(kPi / 2));
    CHECK(rel_close(wallis(n), test::gamma_wallis(n), 1e-12));
  }
  CHECK_THROWS_AS(wallis(0.0), DomainError);
  CHECK(std::abs(grazing_constant(0.001) / 0.001 - 1) <= 0.05);
  const double s = 0.2;
  CHECK(rel_close(grazing_constant(s),
                  std::pow(2.0, 4 * s) * s * std::pow(test::gamma_wallis(1 / s) / s, 2 * s), 1e-12));
}
