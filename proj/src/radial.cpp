// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#include "ipk/radial.hpp"

#include "ipk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ipk {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Fritsch-Carlson slopes; the first slope is pinned to 0 (even extension).
std::vector<double> monotone_slopes(const std::vector<double>& r, const std::vector<double>& f) {
  const std::size_t n = r.size();
  std::vector<double> d(n, 0.0);
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = r[i + 1] - r[i];
    delta[i] = (f[i + 1] - f[i]) / h[i];
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) continue;
    const double w1 = 2.0 * h[i] + h[i - 1];
    const double w2 = h[i] + 2.0 * h[i - 1];
    d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
  }
  if (n >= 3) {
    const std::size_t k = n - 1;
    double end = ((2.0 * h[k - 1] + h[k - 2]) * delta[k - 1] - h[k - 1] * delta[k - 2]) /
                 (h[k - 1] + h[k - 2]);
    if (end * delta[k - 1] <= 0.0) {
      end = 0.0;
    } else if (delta[k - 1] * delta[k - 2] <= 0.0 && std::abs(end) > 3.0 * std::abs(delta[k - 1])) {
      end = 3.0 * delta[k - 1];
    }
    d[k] = end;
  } else {
    d[n - 1] = delta[0];
  }
  return d;
}

// Samples the sinc interpolant of the even extension of f (spacing h) at
// r = m h / refinement together with its derivative.
void band_limited_table(const std::vector<double>& f, double h, int refinement,
                        std::vector<double>& value, std::vector<double>& deriv) {
  const int n = static_cast<int>(f.size());
  const int fine = (n - 1) * refinement + 1;
  value.assign(fine, 0.0);
  deriv.assign(fine, 0.0);
  for (int m = 0; m < fine; ++m) {
    if (m % refinement == 0) {
      // On a node only that node's term survives; the derivative still
      // collects every other term.
      const int i = m / refinement;
      value[m] = f[i];
      double d = 0.0;
      for (int j = -(n - 1); j <= n - 1; ++j) {
        if (j == i) continue;
        const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
        d += f[std::abs(j)] * sign / (i - j);
      }
      deriv[m] = d / h;
      continue;
    }
    const double x = static_cast<double>(m) / refinement;
    const double sx = std::sin(std::numbers::pi * x);
    const double cx = std::cos(std::numbers::pi * x);
    double v = 0.0, d = 0.0;
    for (int j = -(n - 1); j <= n - 1; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      const double t = x - j;
      const double fj = f[std::abs(j)] * sign;
      v += fj * sx / t;
      d += fj * (std::numbers::pi * cx * t - sx) / (t * t);
    }
    value[m] = v / std::numbers::pi;
    deriv[m] = d / (std::numbers::pi * h);
  }
}

}  // namespace

std::string_view to_string(Interp interp) {
  switch (interp) {
    case Interp::kLinear:
      return "linear";
    case Interp::kMonotoneCubic:
      return "monotone-cubic";
    case Interp::kBandLimited:
      return "band-limited";
  }
  return "unknown";
}

Interp parse_interp(std::string_view name) {
  if (name == "linear") return Interp::kLinear;
  if (name == "monotone-cubic") return Interp::kMonotoneCubic;
  if (name == "band-limited") return Interp::kBandLimited;
  throw ConfigError("interp", "unknown interpolation rule '" + std::string(name) + "'");
}

RadialDistribution::RadialDistribution(std::vector<double> r_nodes, std::vector<double> values,
                                       Interp interp, double v_max)
    : r_(std::move(r_nodes)), f_(std::move(values)), interp_(interp), v_max_(v_max) {
  if (r_.size() < 4) throw DomainError("RadialDistribution: need at least 4 nodes");
  if (f_.size() != r_.size()) throw DomainError("RadialDistribution: size mismatch");
  if (r_.front() != 0.0) throw DomainError("RadialDistribution: first node must be 0");
  if (!(v_max > 0.0) || std::abs(r_.back() - v_max) > 1e-12 * v_max) {
    throw DomainError("RadialDistribution: last node must equal v_max");
  }
  for (std::size_t i = 1; i < r_.size(); ++i) {
    if (!(r_[i] > r_[i - 1])) throw DomainError("RadialDistribution: nodes must increase");
  }
  for (double v : f_) {
    if (!std::isfinite(v)) throw DomainError("RadialDistribution: non-finite value");
  }
  const std::size_t n = r_.size();
  const double h = v_max_ / static_cast<double>(n - 1);
  uniform_ = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(r_[i] - h * static_cast<double>(i)) > 1e-12 * v_max_) {
      uniform_ = false;
      break;
    }
  }
  inv_h_ = uniform_ ? 1.0 / h : 0.0;
  w_.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double half = 0.5 * (r_[i + 1] - r_[i]);
    w_[i] += half;
    w_[i + 1] += half;
  }
  if (interp_ == Interp::kMonotoneCubic) slope_ = monotone_slopes(r_, f_);
  if (interp_ == Interp::kBandLimited) {
    if (!uniform_) throw DomainError("RadialDistribution: band-limited rule needs a uniform grid");
    band_limited_table(f_, h, kBandLimitedRefinement, fine_f_, fine_df_);
    inv_fine_h_ = inv_h_ * kBandLimitedRefinement;
  }
}

RadialDistribution RadialDistribution::sample(int n, double v_max,
                                              const std::function<double(double)>& f,
                                              Interp interp) {
  if (n < 4) throw DomainError("RadialDistribution::sample: need at least 4 nodes");
  std::vector<double> r(n), v(n);
  for (int i = 0; i < n; ++i) {
    r[i] = (i + 1 == n) ? v_max : v_max * i / (n - 1);
    v[i] = f(r[i]);
  }
  return RadialDistribution(std::move(r), std::move(v), interp, v_max);
}

RadialDistribution RadialDistribution::with_values(std::vector<double> values) const {
  return RadialDistribution(r_, std::move(values), interp_, v_max_);
}

std::size_t RadialDistribution::locate(double r) const {
  const std::size_t last = r_.size() - 2;
  if (uniform_) return std::min(static_cast<std::size_t>(r * inv_h_), last);
  const auto it = std::upper_bound(r_.begin(), r_.end(), r);
  return std::min(static_cast<std::size_t>(it - r_.begin()) - 1, last);
}

double RadialDistribution::operator()(double r) const {
  r = std::abs(r);
  if (r > v_max_) return 0.0;
  if (interp_ == Interp::kBandLimited) {
    const double x = r * inv_fine_h_;
    const std::size_t i = std::min(static_cast<std::size_t>(x), fine_f_.size() - 2);
    const double t = x - static_cast<double>(i);
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double hf = 1.0 / inv_fine_h_;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * fine_f_[i] + (-2.0 * t3 + 3.0 * t2) * fine_f_[i + 1] +
           hf * ((t3 - 2.0 * t2 + t) * fine_df_[i] + (t3 - t2) * fine_df_[i + 1]);
  }
  const std::size_t i = locate(r);
  const double h = r_[i + 1] - r_[i];
  const double t = (r - r_[i]) / h;
  if (interp_ == Interp::kLinear) return f_[i] + t * (f_[i + 1] - f_[i]);
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * f_[i] + h01 * f_[i + 1] + h * (h10 * slope_[i] + h11 * slope_[i + 1]);
}

double RadialDistribution::pair(const std::function<double(double)>& phi) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < r_.size(); ++i) sum += w_[i] * f_[i] * r_[i] * r_[i] * phi(r_[i]);
  return kFourPi * sum;
}

double RadialDistribution::mass() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < r_.size(); ++i) sum += w_[i] * f_[i] * r_[i] * r_[i];
  return kFourPi * sum;
}

double RadialDistribution::energy() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < r_.size(); ++i) {
    const double r2 = r_[i] * r_[i];
    sum += w_[i] * f_[i] * r2 * r2;
  }
  return kFourPi * sum;
}

double RadialDistribution::min_value() const { return *std::min_element(f_.begin(), f_.end()); }

double RadialDistribution::max_abs() const {
  double m = 0.0;
  for (double v : f_) m = std::max(m, std::abs(v));
  return m;
}

double l1k_norm(const RadialDistribution& f, double k) {
  if (!(k >= 0.0)) throw DomainError("l1k_norm: k must be >= 0");
  const auto& r = f.r_nodes();
  const auto& v = f.values();
  const auto& w = f.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double r2 = r[i] * r[i];
    sum += w[i] * std::abs(v[i]) * std::pow(1.0 + r2, 0.5 * k) * r2;
  }
  return kFourPi * sum;
}

double w11k_seminorm(const RadialDistribution& f, double k) {
  if (!(k >= 0.0)) throw DomainError("w11k_seminorm: k must be >= 0");
  const auto& r = f.r_nodes();
  const auto& v = f.values();
  const auto& w = f.weights();
  const std::size_t n = r.size();
  double sum = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = (i + 1 < n) ? (v[i + 1] - v[i - 1]) / (r[i + 1] - r[i - 1])
                                 : (v[i] - v[i - 1]) / (r[i] - r[i - 1]);
    const double r2 = r[i] * r[i];
    sum += w[i] * std::abs(d) * std::pow(1.0 + r2, 0.5 * k) * r2;
  }
  return kFourPi * sum;
}

double w11k_norm(const RadialDistribution& f, double k) {
  return l1k_norm(f, k) + w11k_seminorm(f, k);
}

double entropy(const RadialDistribution& f) {
  const auto& r = f.r_nodes();
  const auto& v = f.values();
  const auto& w = f.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (v[i] > 0.0) sum += w[i] * v[i] * std::log(v[i]) * r[i] * r[i];
  }
  return kFourPi * sum;
}

double llogl(const RadialDistribution& f) {
  const auto& r = f.r_nodes();
  const auto& v = f.values();
  const auto& w = f.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (v[i] > 0.0) sum += w[i] * v[i] * std::abs(std::log(v[i])) * r[i] * r[i];
  }
  return kFourPi * sum;
}

double maxwellian_density(double r, double mass, double temperature) {
  if (!(temperature > 0.0)) throw DomainError("maxwellian: temperature must be > 0");
  const double norm = mass * std::pow(2.0 * std::numbers::pi * temperature, -1.5);
  return norm * std::exp(-0.5 * r * r / temperature);
}

RadialDistribution maxwellian(int n, double v_max, double mass, double temperature,
                              Interp interp) {
  return RadialDistribution::sample(
      n, v_max, [&](double r) { return maxwellian_density(r, mass, temperature); }, interp);
}

RadialDistribution bimodal(int n, double v_max, double mass, double t_low, double t_high,
                           Interp interp) {
  return RadialDistribution::sample(
      n, v_max,
      [&](double r) {
        return maxwellian_density(r, 0.5 * mass, t_low) + maxwellian_density(r, 0.5 * mass, t_high);
      },
      interp);
}

RadialDistribution bump(int n, double v_max, double center, double width, double mass,
                        Interp interp) {
  if (!(width > 0.0) || !(center >= 0.0)) throw DomainError("bump: bad center or width");
  auto shape = [&](double r) {
    const double x = (r - center) / width;
    return (std::abs(x) < 1.0) ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
  };
  RadialDistribution raw = RadialDistribution::sample(n, v_max, shape, interp);
  const double m = raw.mass();
  if (!(m > 0.0)) throw DomainError("bump: support misses every grid node");
  std::vector<double> v = raw.values();
  for (double& x : v) x *= mass / m;
  return raw.with_values(std::move(v));
}

}  // namespace ipk
