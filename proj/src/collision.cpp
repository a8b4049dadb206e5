// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#include "ipk/collision.hpp"

#include "ipk/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace ipk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

double clipped_sqrt(double x, double scale) {
  if (x >= 0.0) return std::sqrt(x);
  if (x >= -1e-12 * std::max(scale, 1.0)) return 0.0;
  throw std::logic_error("negative post-collision radicand");
}

// Runs body(i) for i in [0, n) on the available cores. Each index writes
// only its own outputs, so the result does not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t n, const Body& body) {
  const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(cores, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

PostCollisionSpeeds post_collision_speeds(const CollisionGeometry& g) {
  if (!(g.v_speed >= 0.0) || !(g.vstar_speed >= 0.0)) {
    throw DomainError("post_collision_speeds: speeds must be >= 0");
  }
  const double c2 = std::pow(std::cos(0.5 * g.theta), 2);
  const double s2 = std::pow(std::sin(0.5 * g.theta), 2);
  const double v2 = g.v_speed * g.v_speed;
  const double w2 = g.vstar_speed * g.vstar_speed;
  const double x = std::sin(g.theta) * std::sin(g.beta) * std::cos(g.phi_az) * g.v_speed *
                   g.vstar_speed;
  const double energy = v2 + w2;
  return {clipped_sqrt(c2 * v2 + s2 * w2 + x, energy),
          clipped_sqrt(s2 * v2 + c2 * w2 - x, energy)};
}

void SolverConfig::validate() const {
  if (n_r < 4) throw ConfigError("n_r", "must be >= 4");
  if (!(v_max > 0.0) || !std::isfinite(v_max)) throw ConfigError("V_max", "must be > 0");
  if (n_quad.n_rstar < 4) throw ConfigError("n_quad.n_rstar", "must be >= 4");
  if (n_quad.n_beta < 4) throw ConfigError("n_quad.n_beta", "must be >= 4");
  if (n_quad.n_theta < 4) throw ConfigError("n_quad.n_theta", "must be >= 4");
  if (n_quad.n_phi < 4) throw ConfigError("n_quad.n_phi", "must be >= 4");
  if (!(theta_cut > 0.0 && theta_cut <= 0.1)) {
    throw ConfigError("theta_cut", "must lie in (0, 0.1]");
  }
  if (std::isnan(dt) || !std::isfinite(dt)) throw ConfigError("dt", "must be finite");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end", "must be > 0");
  if (k_weights.empty()) throw ConfigError("k_weights", "must not be empty");
  for (double k : k_weights) {
    if (!(k >= 0.0)) throw ConfigError("k_weights", "entries must be >= 0");
  }
  if (!(cutoff_tol > 0.0)) throw ConfigError("cutoff_tol", "must be > 0");
}

Kernel Kernel::inverse_power(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("Kernel::inverse_power: s must lie in (0, 1)");
  return Kernel(s);
}

std::string Kernel::label() const {
  if (is_hard_sphere()) return "hard-sphere";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, s_);
  return "inverse-power(s=" + std::string(buf, res.ptr) + ")";
}

AngularRule make_angular_rule(const Kernel& kernel, int n_theta, double theta_cut) {
  if (n_theta < 4) throw DomainError("make_angular_rule: n_theta must be >= 4");
  if (!(theta_cut > 0.0 && theta_cut < kHalfPi)) {
    throw DomainError("make_angular_rule: theta_cut must lie in (0, pi/2)");
  }
  const int panels = std::max(1, n_theta / 8);
  const int per_panel = std::max(2, n_theta / panels);
  const quad::Rule base = quad::graded_gauss_legendre(panels, per_panel, theta_cut, kHalfPi);

  AngularRule rule;
  rule.theta_cut = theta_cut;
  rule.theta = base.nodes;
  rule.weight.resize(base.size());
  if (kernel.is_hard_sphere()) {
    for (std::size_t i = 0; i < base.size(); ++i) {
      rule.weight[i] = 0.5 * std::sin(base.nodes[i]) * base.weights[i];
    }
    rule.cutoff_moment = std::pow(theta_cut, 4) / 8.0;
  } else {
    const double s = kernel.s();
    const ImplicitMapTable table = build_map_table(s);
    for (std::size_t i = 0; i < base.size(); ++i) {
      rule.weight[i] = symmetrized_kernel(table, base.nodes[i]) * std::sin(base.nodes[i]) *
                       base.weights[i];
    }
    // b_bar ~ C theta^{-2-2s} + b(pi) near 0.
    const double at_pi = angular_kernel(table, kPi).value;
    rule.cutoff_moment = grazing_constant(s) * std::pow(theta_cut, 2.0 - 2.0 * s) / (2.0 - 2.0 * s) +
                         at_pi * std::pow(theta_cut, 4) / 4.0;
  }
  double total = 0.0;
  for (double w : rule.weight) total += w;
  rule.cross_section = kTwoPi * total;
  return rule;
}

CollisionOperator::CollisionOperator(const Kernel& kernel, const SolverConfig& cfg)
    : kernel_(kernel), cfg_(cfg) {
  cfg_.validate();
  if (!kernel_.is_hard_sphere() && !(kernel_.s() < 0.125)) {
    throw DomainError("CollisionOperator: inverse-power kernel requires s < 1/8");
  }
  angular_ = make_angular_rule(kernel_, cfg_.n_quad.n_theta, cfg_.theta_cut);
  mu_rule_ = quad::gauss_legendre(cfg_.n_quad.n_beta, -1.0, 1.0);
  // Periodic trapezoid on the full circle folded onto [0, pi].
  const int n = cfg_.n_quad.n_phi;
  const double h = kTwoPi / n;
  for (int m = 0; 2 * m <= n; ++m) {
    cos_az_.push_back(std::cos(h * m));
    w_az_.push_back((m == 0 || 2 * m == n) ? h : 2.0 * h);
  }
}

CollisionResult CollisionOperator::apply(const RadialDistribution& g,
                                         const RadialDistribution& f) const {
  if (g.r_nodes() != f.r_nodes()) throw DomainError("CollisionOperator: grids differ");
  const auto& r_nodes = f.r_nodes();
  const std::size_t n_r = r_nodes.size();
  const std::size_t n_theta = angular_.theta.size();
  const double gamma = kernel_.gamma();
  const double v_max = f.v_max();

  std::vector<double> cos_t(n_theta), sin_t(n_theta);
  for (std::size_t l = 0; l < n_theta; ++l) {
    cos_t[l] = std::cos(angular_.theta[l]);
    sin_t[l] = std::sin(angular_.theta[l]);
  }

  std::vector<double> q(n_r, 0.0), loss(n_r, 0.0), remainder(n_r, 0.0);
  parallel_for(n_r, [&](std::size_t i) {
    const double r = r_nodes[i];
    const double f_r = f.values()[i];
    const quad::Rule rho_rule = quad::gauss_legendre(cfg_.n_quad.n_rstar, 0.0, r + v_max);
    std::vector<double> per_theta(n_theta, 0.0);
    double loss_sum = 0.0;
    for (std::size_t j = 0; j < rho_rule.size(); ++j) {
      const double rho = rho_rule.nodes[j];
      const double w_rho = rho_rule.weights[j] * std::pow(rho, 2.0 + gamma);
      for (std::size_t k = 0; k < mu_rule_.size(); ++k) {
        const double mu = mu_rule_.nodes[k];
        const double w = w_rho * mu_rule_.weights[k];
        const double vstar2 = r * r + rho * rho - 2.0 * r * rho * mu;
        const double loss_term = kTwoPi * g(std::sqrt(std::max(vstar2, 0.0))) * f_r;
        // |v'|^2 = a + cos(theta) b + sin(theta) c cos(az), and |v'_*|^2
        // with the signs of b and c flipped.
        const double a = r * r - r * rho * mu + 0.5 * rho * rho;
        const double b = rho * (r * mu - 0.5 * rho);
        const double c = rho * r * std::sqrt(std::max(0.0, 1.0 - mu * mu));
        const double energy = 2.0 * a;
        for (std::size_t l = 0; l < n_theta; ++l) {
          const double p = a + cos_t[l] * b;
          const double pm = a - cos_t[l] * b;
          const double cs = c * sin_t[l];
          double gain = 0.0;
          for (std::size_t m = 0; m < cos_az_.size(); ++m) {
            const double x = cs * cos_az_[m];
            gain += w_az_[m] * f(clipped_sqrt(p + x, energy)) * g(clipped_sqrt(pm - x, energy));
          }
          per_theta[l] += w * (gain - loss_term);
        }
        loss_sum += w * loss_term;
      }
    }
    double total = 0.0;
    for (std::size_t l = 0; l < n_theta; ++l) total += angular_.weight[l] * per_theta[l];
    q[i] = kTwoPi * total;
    loss[i] = angular_.cross_section * loss_sum;
    // The azimuth-averaged integrand grows like theta^2 near 0; its
    // coefficient is read off the smallest node.
    const double t0 = angular_.theta.front();
    remainder[i] = kTwoPi * std::abs(per_theta.front()) / (t0 * t0) * angular_.cutoff_moment;
  });

  CollisionResult out{f.with_values(q), std::move(loss), std::move(remainder), 0.0, 0.0};
  const auto& w = f.weights();
  for (std::size_t i = 0; i < n_r; ++i) {
    const double r2 = r_nodes[i] * r_nodes[i];
    out.loss_l1 += kFourPi * w[i] * std::abs(out.loss[i]) * r2;
    out.remainder_l1 += kFourPi * w[i] * out.remainder[i] * r2;
  }
  if (out.loss_l1 > 0.0 && out.remainder_l1 > cfg_.cutoff_tol * out.loss_l1) {
    std::ostringstream os;
    os << "cutoff remainder " << out.remainder_l1 / out.loss_l1
       << " (relative to the loss term) exceeds cutoff_tol " << cfg_.cutoff_tol;
    throw ConfigError("theta_cut", os.str());
  }
  return out;
}

RadialDistribution eval_Q(const RadialDistribution& f, const Kernel& kernel,
                          const SolverConfig& cfg) {
  return CollisionOperator(kernel, cfg).apply(f).q;
}

double loss_frequency(const RadialDistribution& f, double gamma, double r) {
  if (!(r >= 0.0)) throw DomainError("loss_frequency: r must be >= 0");
  const auto& nodes = f.r_nodes();
  const auto& w = f.weights();
  const auto& v = f.values();
  const double p = gamma + 2.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double rs = nodes[i];
    // int_{-1}^{1} (r^2 + rs^2 - 2 r rs mu)^{gamma/2} d mu
    double angular;
    if (r == 0.0 || rs == 0.0) {
      angular = 2.0 * std::pow(r + rs, gamma);
    } else {
      angular = (std::pow(r + rs, p) - std::pow(std::abs(r - rs), p)) / (p * r * rs);
    }
    sum += w[i] * v[i] * rs * rs * angular;
  }
  return kTwoPi * sum;
}

std::vector<double> loss_frequency_nodes(const RadialDistribution& f, double gamma) {
  std::vector<double> nu(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) nu[i] = loss_frequency(f, gamma, f.r_nodes()[i]);
  return nu;
}

InvariantDrift invariant_drift(const CollisionResult& result) {
  const auto& r = result.q.r_nodes();
  const auto& w = result.q.weights();
  const auto& q = result.q.values();
  double m = 0.0, e = 0.0, m_scale = 0.0, e_scale = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double r2 = r[i] * r[i];
    m += w[i] * q[i] * r2;
    e += w[i] * q[i] * r2 * r2;
    m_scale += w[i] * std::abs(result.loss[i]) * r2;
    e_scale += w[i] * std::abs(result.loss[i]) * r2 * r2;
  }
  return {m_scale > 0.0 ? std::abs(m) / m_scale : std::abs(m),
          e_scale > 0.0 ? std::abs(e) / e_scale : std::abs(e)};
}

CheckPair povzner_sample_check(double k, std::int64_t n_samples, std::uint64_t seed,
                               double max_speed) {
  if (!(k >= 2.0)) throw DomainError("povzner_sample_check: k must be >= 2");
  if (n_samples <= 0) throw DomainError("povzner_sample_check: n_samples must be > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> speed(0.0, max_speed);
  std::uniform_real_distribution<double> half_turn(0.0, kPi);
  std::uniform_real_distribution<double> full_turn(0.0, kTwoPi);

  std::ostringstream grid;
  grid << n_samples << " uniform samples, speeds in [0," << max_speed << "], seed " << seed
       << ", k=" << k;
  CheckPair out;
  out.first.name = "povzner_v_prime";
  out.second.name = "povzner_vstar_prime";
  for (InequalityCheck* c : {&out.first, &out.second}) {
    c->param_grid = grid.str();
    c->worst_ratio = -INFINITY;
    c->n_points = static_cast<std::size_t>(n_samples);
  }
  auto bracket = [](double x) { return std::sqrt(1.0 + x * x); };
  auto record = [](InequalityCheck& c, double lhs, double rhs, const CollisionGeometry& g) {
    double ratio = (rhs > 0.0) ? lhs / rhs : (lhs <= 0.0 ? 0.0 : INFINITY);
    if (std::isnan(ratio)) ratio = INFINITY;
    if (ratio > c.worst_ratio) {
      c.worst_ratio = ratio;
      c.worst_point = {{"v", g.v_speed}, {"vstar", g.vstar_speed}, {"beta", g.beta},
                       {"theta", g.theta}, {"phi", g.phi_az}};
    }
  };
  for (std::int64_t n = 0; n < n_samples; ++n) {
    CollisionGeometry g;
    g.v_speed = speed(rng);
    g.vstar_speed = speed(rng);
    g.beta = half_turn(rng);
    g.theta = half_turn(rng);
    g.phi_az = full_turn(rng);
    const PostCollisionSpeeds post = post_collision_speeds(g);
    const double c = std::cos(0.5 * g.theta);
    const double s = std::sin(0.5 * g.theta);
    const double bv = bracket(g.v_speed);
    const double bw = bracket(g.vstar_speed);
    const double lhs1 = std::pow(bracket(post.v_prime), k) - std::pow(c * bv, k) -
                        std::pow(s * bw, k);
    const double rhs1 = std::pow(c * bv, k - 1.0) * s * bw + c * bv * std::pow(s * bw, k - 1.0);
    const double lhs2 = std::pow(bracket(post.vstar_prime), k) - std::pow(s * bv, k) -
                        std::pow(c * bw, k);
    const double rhs2 = std::pow(c * bw, k - 1.0) * s * bv + c * bw * std::pow(s * bv, k - 1.0);
    record(out.first, lhs1, rhs1, g);
    record(out.second, lhs2, rhs2, g);
  }
  for (InequalityCheck* c : {&out.first, &out.second}) {
    c->empirical = c->worst_ratio;
    c->passed = std::isfinite(c->worst_ratio);
  }
  return out;
}

}  // namespace ipk
