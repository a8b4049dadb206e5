// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#include "ipk/collision.hpp"
#include "ipk/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ipk;
using ipk::test::kPi;

namespace {
double l1_distance(const RadialDistribution& a, const RadialDistribution& b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.values()[i] - b.values()[i];
  return l1k_norm(a.with_values(d), 0);
}
}  // namespace

TEST_CASE("post-collision speeds") {
  for (double th : {0.0, 0.7, 2.0, kPi}) {
    const auto p = post_collision_speeds({1.0, 1.0, 0.0, th, 1.3});
    CHECK(p.v_prime == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.vstar_prime == doctest::Approx(1.0).epsilon(1e-14));
  }
  const auto rest = post_collision_speeds({2.0, 0.0, 0.4, kPi / 2, 5.0});
  CHECK(rest.v_prime * rest.v_prime == doctest::Approx(2.0).epsilon(1e-14));
  const auto p = post_collision_speeds({1.3, 0.7, 1.1, 0.9, 2.0});
  CHECK(p.v_prime * p.v_prime + p.vstar_prime * p.vstar_prime ==
        doctest::Approx(2.18).epsilon(1e-14));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> speed(0.0, 10.0), half(0.0, kPi), full(0.0, 2 * kPi);
  double worst = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    const CollisionGeometry g{speed(rng), speed(rng), half(rng), half(rng), full(rng)};
    const auto q = post_collision_speeds(g);
    const double before = g.v_speed * g.v_speed + g.vstar_speed * g.vstar_speed;
    const double after = q.v_prime * q.v_prime + q.vstar_prime * q.vstar_prime;
    worst = std::max(worst, std::abs(after - before));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("angular rule") {
  const AngularRule hs = make_angular_rule(Kernel::hard_sphere(), 32, 1e-3);
  CHECK(hs.theta.size() == 32u);
  // 2 pi int_{cut}^{pi/2} (1/2) sin = pi cos(cut).
  CHECK(hs.cross_section == doctest::Approx(kPi * std::cos(1e-3)).epsilon(1e-12));
  for (double t : hs.theta) {
    CHECK(t > 1e-3);
    CHECK(t < kPi / 2);
  }
  CHECK_THROWS_AS(make_angular_rule(Kernel::hard_sphere(), 32, 2.0), DomainError);
  CHECK_THROWS_AS(Kernel::inverse_power(0.0), DomainError);
  CHECK(Kernel::inverse_power(0.05).label() == "inverse-power(s=0.05)");
  CHECK(Kernel::inverse_power(0.05).gamma() == doctest::Approx(0.8));
}

TEST_CASE("Maxwellian is annihilated") {
  const auto m = maxwellian(48, 8.0);
  const SolverConfig cfg;
  for (const Kernel& k : {Kernel::hard_sphere(), Kernel::inverse_power(0.05)}) {
    const auto q = eval_Q(m, k, cfg);
    CHECK(l1k_norm(q, 0) / l1k_norm(m, 2) <= 1e-3);
  }
}

TEST_CASE("collision invariants at default resolution") {
  const auto f = bimodal(48, 8.0);
  const SolverConfig cfg;
  for (const Kernel& k : {Kernel::hard_sphere(), Kernel::inverse_power(0.1)}) {
    const CollisionOperator op(k, cfg);
    const auto res = op.apply(f);
    const InvariantDrift d = invariant_drift(res);
    INFO(k.label());
    CHECK(std::abs(d.mass) <= 1e-6);
    CHECK(std::abs(d.energy) <= 1e-6);
  }
}

TEST_CASE("cutoff consistency") {
  const auto f = bimodal(48, 8.0);
  for (double s : {0.01, 0.1}) {
    SolverConfig cfg;
    const CollisionOperator coarse(Kernel::inverse_power(s), cfg);
    cfg.theta_cut /= 2;
    const CollisionOperator fine(Kernel::inverse_power(s), cfg);
    const auto a = coarse.apply(f);
    const auto b = fine.apply(f);
    INFO("s=" << s);
    CHECK(a.remainder_l1 > 0.0);
    CHECK(l1_distance(a.q, b.q) < 4 * a.remainder_l1);
  }
  // Remainder over budget is a configuration error naming theta_cut.
  SolverConfig loose;
  loose.theta_cut = 0.1;
  const CollisionOperator op(Kernel::inverse_power(0.1), loose);
  try {
    (void)op.apply(f);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "theta_cut");
  }
}

TEST_CASE("operator regime") {
  CHECK_THROWS_AS(CollisionOperator(Kernel::inverse_power(0.2), SolverConfig{}), DomainError);
}

TEST_CASE("soft kernel near the hard sphere") {
  const auto f = bimodal(48, 8.0);
  const SolverConfig cfg;
  const auto hard = eval_Q(f, Kernel::hard_sphere(), cfg);
  const auto soft = eval_Q(f, Kernel::inverse_power(1e-4), cfg);
  CHECK(l1_distance(soft, hard) / l1k_norm(hard, 0) <= 5e-4);
}

TEST_CASE("loss frequency") {
  // For the unit Maxwellian, E|r e - X| = sqrt(2/pi) exp(-r^2/2) + (r + 1/r) erf(r/sqrt 2).
  const auto m = maxwellian(200, 10.0);
  CHECK(loss_frequency(m, 1.0, 0.0) == doctest::Approx(std::sqrt(8 / kPi)).epsilon(1e-6));
  for (double r : {0.5, 1.0, 3.0, 7.0}) {
    const double exact =
        std::sqrt(2 / kPi) * std::exp(-r * r / 2) + (r + 1 / r) * std::erf(r / std::sqrt(2.0));
    CHECK(loss_frequency(m, 1.0, r) == doctest::Approx(exact).epsilon(1e-6));
  }
  CHECK(loss_frequency(m, 1.0, 9.0) / 9.0 == doctest::Approx(1.0).epsilon(0.02));
  const auto b = bimodal(48, 8.0, 1.7);
  CHECK(loss_frequency(b, 0.0, 2.0) == doctest::Approx(b.mass()).epsilon(1e-12));
  const auto narrow = bump(96, 8.0, 1.0, 0.2);
  CHECK(loss_frequency(narrow, 1.0, 0.0) == doctest::Approx(1.0).epsilon(0.02));
  for (double nu : loss_frequency_nodes(b, 0.8)) CHECK(nu > 0.0);
}

TEST_CASE("Povzner sampling") {
  const CheckPair p = povzner_sample_check(2.0, 20000, 1);
  CHECK(std::isfinite(p.first.empirical));
  CHECK(std::isfinite(p.second.empirical));
  CHECK(p.first.passed);
  CHECK(p.first.n_points == 20000u);
  // Same seed, same answer.
  CHECK(povzner_sample_check(2.0, 20000, 1).first.empirical == p.first.empirical);
  CHECK_THROWS_AS(povzner_sample_check(1.0, 10, 1), DomainError);
}
