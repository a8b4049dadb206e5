// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Grid-based certification of the explicit inequalities satisfied by
// the impact-angle map, its inverse and the angular kernel. A failed inequality is reported, never thrown.
#pragma once

#include "ipk/check.hpp"
#include "ipk/kernel.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ipk {

struct BoundGrids {
  std::vector<double> s_values{0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1,
                               0.2,   0.3,   0.4,   0.5,  0.7,  0.9};
  int n_theta = 400;
  double theta_min = 1e-4;
  int table_nodes = kDefaultTableNodes;  // also the y grid of the y-indexed checks
  double quad_tol = kDefaultQuadTol;
  double slack = 1e-6;
  double y_max = 1.0 - 1e-6;

  /// Log-spaced from theta_min to pi.
  std::vector<double> theta_grid() const;
  /// Twice the density in theta and in the y grid.
  BoundGrids refined() const;
};

/// Builds one table per s once and hands them to the checks.
class TableCache {
 public:
  TableCache(int n_nodes, double tol) : n_nodes_(n_nodes), tol_(tol) {}
  const ImplicitMapTable& get(double s);

 private:
  int n_nodes_;
  double tol_;
  std::map<double, ImplicitMapTable> tables_;
};


/// |phi(y) - arcsin y| <= 2 s y (1-y^2)^{-1/2} and
/// |phi'(y) - (1-y^2)^{-1/2}| <= 2 s (1-y^2)^{-3/2}.
CheckPair check_angle_vs_arcsin(TableCache& tables, const std::vector<double>& s_grid,
                          const std::vector<double>& y_grid, double slack = 1e-6);

/// |y(phi) - sin phi| <= 2 y s and |y'(phi) - cos phi| <= 6 s y' / (1 - y^2).
CheckPair check_inverse_vs_sine(TableCache& tables, const std::vector<double>& s_grid,
                          const std::vector<double>& phi_grid, double slack = 1e-6);

/// (1-y)^{-1} <= min{4 s^{-1/2}, pi^2/theta} / theta and (1-y)^{-1} dy/dphi <= 18/theta,
/// with y = y((pi - theta)/2).
CheckPair check_grazing_degeneracy(TableCache& tables, const std::vector<double>& s_grid,
                                  const std::vector<double>& theta_grid,
                                  double slack = 1e-6);

/// y'(phi) <= 1 on the theta grid.
InequalityCheck check_inverse_slope_bound(TableCache& tables, const std::vector<double>& s_grid,
                                    const std::vector<double>& theta_grid,
                                    double slack = 1e-6);

/// (pi/2 - phi(y)) / ((1-y) phi'(y)) <= 9, plus the sharper branches
/// <= 1 for s >= 1/2 and <= 4 when 1 - y^2 <= s < 1/2.
std::vector<InequalityCheck> check_complement_ratio(TableCache& tables, const std::vector<double>& s_grid,
                                       const std::vector<double>& y_grid,
                                       double slack = 1e-6);

/// |b(theta) - 1/4| theta^{2+2s} / s <= 50000. `empirical` holds the sup
/// of the left-hand side.
InequalityCheck check_kernel_rate(TableCache& tables, const std::vector<double>& s_grid,
                                  const std::vector<double>& theta_grid,
                                  double slack = 1e-6);

/// |b_bar(theta) - 1/2| theta^{2+2s} / s <= 1e5 on theta <= pi/2. `empirical`
/// is the measured constant.
InequalityCheck check_symmetrized_rate(TableCache& tables, const std::vector<double>& s_grid,
                                       const std::vector<double>& theta_grid,
                                       double slack = 1e-6);

struct SphereMoments {
  double sin2_half = 0.0;  // int_{S^2} sin^2(theta/2) b dsigma
  double sin_half = 0.0;   // int_{S^2} sin(theta/2) b dsigma
  double rel_error = 0.0;
};

/// Angular moments of a kernel supported on [0, pi/2]. The integrand may
/// behave like theta^{-2s_sing} at 0; `s_sing` sets the change of variables
/// that regularizes it (0 for a bounded kernel).
SphereMoments sphere_moments(const std::function<double(double)>& kernel, double s_sing,
                             double rel_tol = 1e-9);

/// Explicit s-uniform bound on the sum of both moments of the symmetrized kernel for
/// 0 < s < 1/8, obtained from the 50000 s theta^{-2-2s} kernel estimate.
double theta_integral_uniform_bound();

/// Both angular moments of the symmetrized kernel are finite and bounded by
/// theta_integral_uniform_bound() for every s in the grid (all s < 1/8).
/// `empirical` holds the sup over s of the moment sum.
InequalityCheck check_angular_moments(TableCache& tables, const std::vector<double>& s_grid,
                                     double slack = 1e-6);

/// Hard-sphere values of the two moments (kernel 1/2 on [0, pi/2]).
SphereMoments hard_sphere_moments();

/// Runs every check on the given grids. The result always has one record
/// per check; failures are data.
std::vector<InequalityCheck> run_bound_suite(const BoundGrids& grids);

/// y values of a table's nodes up to y_max.
std::vector<double> table_y_grid(const ImplicitMapTable& table, double y_max);

}  // namespace ipk
