// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#include "ipk/bounds.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace ipk;
using ipk::test::kPi;

TEST_CASE("angle vs arcsin") {
  TableCache tables(kDefaultTableNodes, kDefaultQuadTol);
  const CheckPair a = check_angle_vs_arcsin(tables, {0.5}, {0.6});
  CHECK(a.first.passed);
  CHECK(a.first.worst_ratio == doctest::Approx((0.6 * kPi / 2 - std::asin(0.6)) / 0.75).epsilon(1e-9));
  const CheckPair zero = check_angle_vs_arcsin(tables, {0.1, 0.7}, {0.0});
  CHECK(zero.first.passed);
  CHECK(zero.first.worst_ratio == 0.0);
  const CheckPair near = check_angle_vs_arcsin(tables, {0.01}, {0.99});
  CHECK(near.first.passed);
  CHECK(near.second.passed);
  CHECK(near.first.worst_ratio > 0.0);
  // Independent value of the left-hand side.
  const double lhs = test::brute_impact_angle(0.01, 0.99, 400000) - std::asin(0.99);
  const double rhs = 2 * 0.01 * 0.99 / std::sqrt(1 - 0.99 * 0.99);
  CHECK(near.first.worst_ratio == doctest::Approx(lhs / rhs).epsilon(1e-6));
}

TEST_CASE("inverse vs sine") {
  TableCache tables(kDefaultTableNodes, kDefaultQuadTol);
  const CheckPair a = check_inverse_vs_sine(tables, {0.5}, {kPi / 4});
  CHECK(a.first.passed);
  CHECK(a.first.worst_ratio == doctest::Approx((std::sin(kPi / 4) - 0.5) / 0.5).epsilon(1e-9));
  const CheckPair z = check_inverse_vs_sine(tables, {0.2}, {0.0});
  CHECK(z.first.passed);
  const CheckPair b = check_inverse_vs_sine(tables, {0.05}, {1.4});
  CHECK(b.first.passed);
  CHECK(b.second.passed);
}

TEST_CASE("grazing degeneracy") {
  TableCache tables(kDefaultTableNodes, kDefaultQuadTol);
  const CheckPair end = check_grazing_degeneracy(tables, {0.5}, {kPi});
  CHECK(end.first.passed);
  CHECK(end.second.passed);
  CHECK(check_grazing_degeneracy(tables, {0.25}, {0.01}).first.passed);
  // At s = 1/2 the second left-hand side is exactly 2/theta.
  const CheckPair half = check_grazing_degeneracy(tables, {0.5}, {0.01, 0.3, 1.0, 2.5});
  CHECK(half.second.passed);
  CHECK(half.second.worst_ratio == doctest::Approx(2.0 / 18.0).epsilon(1e-8));
}

TEST_CASE("complement ratio") {
  TableCache tables(kDefaultTableNodes, kDefaultQuadTol);
  const auto half = check_complement_ratio(tables, {0.5}, {0.5});
  REQUIRE(half.size() == 3u);
  CHECK(half[0].worst_ratio == doctest::Approx(1.0 / 9.0).epsilon(1e-9));
  CHECK(half[1].worst_ratio == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(half[1].passed);
  const auto big = check_complement_ratio(tables, {0.5, 0.7, 0.9},
                                          table_y_grid(tables.get(0.7), 1 - 1e-6));
  CHECK(big[1].passed);
  const auto small = check_complement_ratio(tables, {0.05}, {0.999});
  for (const auto& c : small) CHECK(c.passed);
}

TEST_CASE("kernel rate and inverse slope") {
  TableCache tables(kDefaultTableNodes, kDefaultQuadTol);
  const InequalityCheck r = check_kernel_rate(tables, {0.5}, {kPi / 2});
  const double lhs = (32 / (9 * kPi) - 0.25) * std::pow(kPi / 2, 3) / 0.5;
  CHECK(r.empirical == doctest::Approx(lhs).epsilon(1e-9));
  CHECK(r.passed);
  CHECK(check_kernel_rate(tables, {0.3}, {kPi}).passed);
  const InequalityCheck sym = check_symmetrized_rate(tables, {0.5}, {kPi / 2, 3.0});
  CHECK(sym.n_points == 1u);  // theta = 3 lies outside the support
  CHECK(sym.empirical ==
        doctest::Approx((64 / (9 * kPi) - 0.5) * std::pow(kPi / 2, 3) / 0.5).epsilon(1e-9));
  CHECK(check_inverse_slope_bound(tables, {0.01, 0.3, 0.9}, {1e-4, 0.1, 1.0, kPi}).passed);
}

TEST_CASE("sphere moments") {
  // Constant kernel 1/2 on [0, pi/2]: 2 pi (1/2) int sin^2(t/2) sin t = pi/4 and
  // 2 pi (1/2) int sin(t/2) sin t = pi sqrt(2)/3.
  const SphereMoments c = sphere_moments([](double) { return 0.5; }, 0.0);
  CHECK(c.sin2_half == doctest::Approx(kPi / 4).epsilon(1e-8));
  CHECK(c.sin_half == doctest::Approx(kPi * std::sqrt(2.0) / 3).epsilon(1e-8));
  const SphereMoments h = hard_sphere_moments();
  CHECK(h.sin2_half == doctest::Approx(c.sin2_half).epsilon(1e-8));
  CHECK(h.sin_half == doctest::Approx(c.sin_half).epsilon(1e-8));

  TableCache tables(kDefaultTableNodes, kDefaultQuadTol);
  const InequalityCheck m = check_angular_moments(tables, {0.12, 0.05, 0.01, 0.001});
  CHECK(m.passed);
  CHECK(std::isfinite(m.empirical));
  CHECK(m.empirical <= theta_integral_uniform_bound());
  // Small s approaches the hard-sphere sum.
  const auto& t = tables.get(0.001);
  const SphereMoments soft =
      sphere_moments([&](double th) { return symmetrized_kernel(t, th); }, 0.001);
  CHECK(soft.sin2_half + soft.sin_half ==
        doctest::Approx(h.sin2_half + h.sin_half).epsilon(0.02));
}

TEST_CASE("bound suite reporting") {
  BoundGrids g;
  g.s_values = {0.05};
  g.n_theta = 1;
  g.theta_min = 1.0;
  g.table_nodes = 32;
  const auto checks = run_bound_suite(g);
  std::set<std::string> names;
  for (const auto& c : checks) {
    names.insert(c.name);
    CHECK(c.passed);
  }
  CHECK(names.size() == checks.size());
  CHECK(names.count("kernel_rate_le_50000") == 1);
  CHECK(names.count("angular_moments_uniform") == 1);
  CHECK(names.count("symmetrized_rate_le_100000") == 1);

  g.slack = -1.0;
  for (const auto& c : run_bound_suite(g)) {
    if (c.worst_ratio > 0.0) CHECK_FALSE(c.passed);
  }
}
