// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ipk::quad {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;  // Kronrod-minus-Gauss estimate, summed over panels
  int evaluations = 0;

  double rel_error() const;
};

struct AdaptiveOptions {
  double rel_tol = 1e-13;
  double abs_tol = 0.0;
  int max_panels = 400;
};

/// Globally adaptive Gauss-Kronrod (G10/K21) integration of f over [a,b].
/// `breakpoints` seeds the initial panel split; points outside (a,b) are
/// ignored. Never evaluates f at a or b.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints = {},
                 const AdaptiveOptions& opts = {});

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double apply(const std::function<double(double)>& f) const;
};

/// n-point Gauss-Legendre rule mapped to [a,b].
Rule gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre over panels whose edges grow geometrically from
/// `a` to `b` (a > 0). Used for integrands concentrated near a.
Rule graded_gauss_legendre(int panels, int points_per_panel, double a, double b);

/// n equispaced points on [0, 2pi) with equal weights (exact for
/// trigonometric polynomials of degree < n).
Rule periodic_trapezoid(int n);

}  // namespace ipk::quad
