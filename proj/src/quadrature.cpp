// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#include "ipk/quadrature.hpp"

#include "ipk/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace ipk::quad {

namespace {

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk21(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  static const auto& xk = gauss_kronrod<double, 21>::abscissa();
  static const auto& wk = gauss_kronrod<double, 21>::weights();
  static const auto& wg = gauss<double, 10>::weights();

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = wk[0] * fc;
  double gauss_sum = 0.0;
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double pair = f(c + h * xk[i]) + f(c - h * xk[i]);
    kronrod += wk[i] * pair;
    // Gauss nodes sit at the odd Kronrod indices.
    if (i % 2 == 1) gauss_sum += wg[(i - 1) / 2] * pair;
  }
  return {a, b, h * kronrod, std::abs(h * (kronrod - gauss_sum))};
}

}  // namespace

double Result::rel_error() const {
  if (value == 0.0) return abs_error == 0.0 ? 0.0 : INFINITY;
  return abs_error / std::abs(value);
}

Result integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints, const AdaptiveOptions& opts) {
  if (!(b > a)) throw DomainError("integrate: empty or reversed interval");

  std::vector<double> edges{a};
  std::vector<double> inner(breakpoints.begin(), breakpoints.end());
  std::sort(inner.begin(), inner.end());
  for (double x : inner) {
    if (x > edges.back() && x < b) edges.push_back(x);
  }
  edges.push_back(b);

  std::priority_queue<Panel> heap;
  Result r;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = gk21(f, edges[i], edges[i + 1]);
    r.value += p.value;
    r.abs_error += p.error;
    r.evaluations += 21;
    heap.push(p);
  }

  while (static_cast<int>(heap.size()) < opts.max_panels) {
    const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(r.value));
    if (r.abs_error <= target) break;
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // panel at roundoff width
    heap.pop();
    Panel left = gk21(f, worst.a, mid);
    Panel right = gk21(f, mid, worst.b);
    r.value += left.value + right.value - worst.value;
    r.abs_error += left.error + right.error - worst.error;
    r.evaluations += 42;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed accumulated update roundoff.
  r.value = 0.0;
  r.abs_error = 0.0;
  while (!heap.empty()) {
    r.value += heap.top().value;
    r.abs_error += heap.top().error;
    heap.pop();
  }
  return r;
}

double Rule::apply(const std::function<double(double)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
  return sum;
}

Rule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
  // zeros holds the non-negative roots, ascending, starting at 0 for odd n.
  std::vector<double> x;
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    if (*it != 0.0) x.push_back(-*it);
  }
  for (double z : zeros) x.push_back(z);

  Rule rule;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  for (double xi : x) {
    const double dp = boost::math::legendre_p_prime(n, xi);
    rule.nodes.push_back(c + h * xi);
    rule.weights.push_back(h * 2.0 / ((1.0 - xi * xi) * dp * dp));
  }
  return rule;
}

Rule graded_gauss_legendre(int panels, int points_per_panel, double a, double b) {
  if (!(a > 0.0 && b > a)) throw DomainError("graded_gauss_legendre: need 0 < a < b");
  if (panels < 1) throw DomainError("graded_gauss_legendre: need at least one panel");
  Rule rule;
  const double ratio = std::pow(b / a, 1.0 / panels);
  double lo = a;
  for (int p = 0; p < panels; ++p) {
    const double hi = (p + 1 == panels) ? b : lo * ratio;
    Rule piece = gauss_legendre(points_per_panel, lo, hi);
    rule.nodes.insert(rule.nodes.end(), piece.nodes.begin(), piece.nodes.end());
    rule.weights.insert(rule.weights.end(), piece.weights.begin(), piece.weights.end());
    lo = hi;
  }
  return rule;
}

Rule periodic_trapezoid(int n) {
  if (n < 1) throw DomainError("periodic_trapezoid: need at least one node");
  Rule rule;
  const double h = 2.0 * std::numbers::pi / n;
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back(i * h);
    rule.weights.push_back(h);
  }
  return rule;
}

}  // namespace ipk::quad
