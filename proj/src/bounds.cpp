// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#include "ipk/bounds.hpp"

#include "ipk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ipk {

namespace {

constexpr double kPi = std::numbers::pi;

std::string describe(const std::vector<double>& s_grid, const char* axis,
                     const std::vector<double>& grid) {
  std::ostringstream os;
  os << "s in {";
  for (std::size_t i = 0; i < s_grid.size(); ++i) os << (i ? "," : "") << s_grid[i];
  os << "} x " << axis << " (" << grid.size() << " points";
  if (!grid.empty()) {
    const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
    os << " in [" << *lo << ", " << *hi << "]";
  }
  os << ")";
  return os.str();
}

// Max-reduction of LHS/RHS over a grid.
class Accumulator {
 public:
  Accumulator(std::string name, std::string grid, double slack) {
    check_.name = std::move(name);
    check_.param_grid = std::move(grid);
    check_.slack = slack;
  }

  void add(double lhs, double rhs, std::map<std::string, double> point) {
    double ratio;
    if (std::isnan(lhs) || std::isnan(rhs)) {
      ratio = INFINITY;
    } else if (rhs > 0.0) {
      ratio = lhs / rhs;
    } else {
      ratio = (lhs <= 0.0) ? 0.0 : INFINITY;
    }
    ++check_.n_points;
    if (check_.n_points == 1 || ratio > check_.worst_ratio) {
      check_.worst_ratio = ratio;
      check_.worst_point = std::move(point);
    }
  }

  void note_empirical(double value) {
    if (std::isnan(check_.empirical) || value > check_.empirical) check_.empirical = value;
  }

  InequalityCheck finish() {
    check_.passed = std::isfinite(check_.worst_ratio) && check_.worst_ratio <= 1.0 + check_.slack;
    return check_;
  }

 private:
  InequalityCheck check_;
};

}  // namespace

std::vector<double> BoundGrids::theta_grid() const {
  std::vector<double> grid(n_theta);
  const double span = std::log(kPi / theta_min);
  for (int i = 0; i < n_theta; ++i) {
    grid[i] = (i + 1 == n_theta) ? kPi : theta_min * std::exp(span * i / (n_theta - 1));
  }
  return grid;
}

BoundGrids BoundGrids::refined() const {
  BoundGrids r = *this;
  r.n_theta = 2 * n_theta;
  r.table_nodes = 2 * table_nodes;
  return r;
}

const ImplicitMapTable& TableCache::get(double s) {
  auto it = tables_.find(s);
  if (it == tables_.end()) {
    it = tables_.try_emplace(s, build_map_table(s, n_nodes_, tol_)).first;
  }
  return it->second;
}

std::vector<double> table_y_grid(const ImplicitMapTable& table, double y_max) {
  std::vector<double> ys;
  for (const auto& n : table.nodes()) {
    if (n.y <= y_max) ys.push_back(n.y);
  }
  return ys;
}

CheckPair check_angle_vs_arcsin(TableCache& tables, const std::vector<double>& s_grid,
                          const std::vector<double>& y_grid, double slack) {
  const std::string grid = describe(s_grid, "y", y_grid);
  Accumulator value("angle_vs_arcsin", grid, slack);
  Accumulator slope("slope_vs_arcsin_slope", grid, slack);
  for (double s : s_grid) {
    const double tol = tables.get(s).tol();
    for (double y : y_grid) {
      if (!(y >= 0.0 && y < 1.0)) throw DomainError("check_angle_vs_arcsin: y must lie in [0,1)");
      const Impact p = Impact::from_y(y);
      const double q = p.one_minus_y2();
      const AngleValue v = impact_angle_value(s, p, tol);
      // Compare against arcsin y through whichever side is free of cancellation.
      const double diff = (y < 0.5) ? v.phi - std::asin(y) : std::acos(y) - v.complement;
      value.add(std::abs(diff), 2.0 * s * y / std::sqrt(q), {{"s", s}, {"y", y}});
      const double d = impact_angle_slope_value(s, p, tol).value;
      slope.add(std::abs(d - 1.0 / std::sqrt(q)), 2.0 * s / (q * std::sqrt(q)),
                {{"s", s}, {"y", y}});
    }
  }
  return {value.finish(), slope.finish()};
}

CheckPair check_inverse_vs_sine(TableCache& tables, const std::vector<double>& s_grid,
                          const std::vector<double>& phi_grid, double slack) {
  const std::string grid = describe(s_grid, "phi", phi_grid);
  Accumulator value("inverse_vs_sine", grid, slack);
  Accumulator slope("inverse_slope_vs_cosine", grid, slack);
  for (double s : s_grid) {
    const ImplicitMapTable& table = tables.get(s);
    for (double phi : phi_grid) {
      const double c = kHalfPi - phi;
      const Inversion inv = invert(table, phi);
      const Impact p = inv.point;
      const double yp = 1.0 / inv.dphi;
      // y - sin(phi) = (1 - sin phi) - (1 - y) with 1 - sin phi = 2 sin^2(c/2).
      const double diff = (phi > 0.5 * kHalfPi)
                              ? 2.0 * std::pow(std::sin(0.5 * c), 2) - p.one_minus_y
                              : p.y - std::sin(phi);
      value.add(std::abs(diff), 2.0 * p.y * s, {{"s", s}, {"phi", phi}});
      const double q = p.one_minus_y2();
      const double rhs = (q > 0.0) ? 6.0 * s * yp / q : INFINITY;
      slope.add(std::abs(yp - std::sin(c)), rhs, {{"s", s}, {"phi", phi}});
    }
  }
  return {value.finish(), slope.finish()};
}

CheckPair check_grazing_degeneracy(TableCache& tables, const std::vector<double>& s_grid,
                                  const std::vector<double>& theta_grid, double slack) {
  const std::string grid = describe(s_grid, "theta", theta_grid);
  Accumulator degeneracy("grazing_one_minus_y", grid, slack);
  Accumulator key("grazing_slope_over_one_minus_y", grid, slack);
  for (double s : s_grid) {
    const ImplicitMapTable& table = tables.get(s);
    for (double theta : theta_grid) {
      if (!(theta > 0.0 && theta <= kPi)) throw DomainError("theta must lie in (0, pi]");
      const Inversion inv = invert_complement(table, 0.5 * theta);
      const double w = inv.point.one_minus_y;
      const double bound = std::min(4.0 / std::sqrt(s), kPi * kPi / theta) / theta;
      degeneracy.add(1.0 / w, bound, {{"s", s}, {"theta", theta}});
      key.add(1.0 / (inv.dphi * w), 18.0 / theta, {{"s", s}, {"theta", theta}});
    }
  }
  return {degeneracy.finish(), key.finish()};
}

InequalityCheck check_inverse_slope_bound(TableCache& tables, const std::vector<double>& s_grid,
                                    const std::vector<double>& theta_grid, double slack) {
  Accumulator acc("inverse_slope_le_1", describe(s_grid, "theta", theta_grid), slack);
  for (double s : s_grid) {
    const ImplicitMapTable& table = tables.get(s);
    for (double theta : theta_grid) {
      const Inversion inv = invert_complement(table, 0.5 * theta);
      acc.add(1.0 / inv.dphi, 1.0, {{"s", s}, {"theta", theta}});
    }
  }
  return acc.finish();
}

std::vector<InequalityCheck> check_complement_ratio(TableCache& tables, const std::vector<double>& s_grid,
                                       const std::vector<double>& y_grid, double slack) {
  const std::string grid = describe(s_grid, "y", y_grid);
  Accumulator all("complement_ratio_le_9", grid, slack);
  Accumulator large_s("complement_ratio_le_1_s_ge_half", grid, slack);
  Accumulator near_one("complement_ratio_le_4_near_one", grid, slack);
  for (double s : s_grid) {
    const double tol = tables.get(s).tol();
    for (double y : y_grid) {
      if (!(y >= 0.0 && y < 1.0)) throw DomainError("check_complement_ratio: y must lie in [0,1)");
      const Impact p = Impact::from_y(y);
      const double c = impact_angle_value(s, p, tol).complement;
      const double d = impact_angle_slope_value(s, p, tol).value;
      const double h = c / (p.one_minus_y * d);
      std::map<std::string, double> at{{"s", s}, {"y", y}};
      all.add(h, 9.0, at);
      if (s >= 0.5) large_s.add(h, 1.0, at);
      if (s < 0.5 && p.one_minus_y2() <= s) near_one.add(h, 4.0, at);
      all.note_empirical(h);
    }
  }
  return {all.finish(), large_s.finish(), near_one.finish()};
}

InequalityCheck check_kernel_rate(TableCache& tables, const std::vector<double>& s_grid,
                                  const std::vector<double>& theta_grid, double slack) {
  Accumulator acc("kernel_rate_le_50000", describe(s_grid, "theta", theta_grid), slack);
  for (double s : s_grid) {
    const ImplicitMapTable& table = tables.get(s);
    for (double theta : theta_grid) {
      const KernelValue k = angular_kernel(table, theta);
      const double scaled = std::abs(k.value - 0.25) * std::pow(theta, 2.0 + 2.0 * s) / s;
      acc.add(scaled, 50000.0, {{"s", s}, {"theta", theta}});
      acc.note_empirical(scaled);
    }
  }
  return acc.finish();
}

InequalityCheck check_symmetrized_rate(TableCache& tables, const std::vector<double>& s_grid,
                                       const std::vector<double>& theta_grid, double slack) {
  // From the kernel rate applied at theta and pi - theta >= theta.
  Accumulator acc("symmetrized_rate_le_100000", describe(s_grid, "theta", theta_grid), slack);
  for (double s : s_grid) {
    const ImplicitMapTable& table = tables.get(s);
    for (double theta : theta_grid) {
      if (theta > kHalfPi) continue;
      const double scaled =
          std::abs(symmetrized_kernel(table, theta) - 0.5) * std::pow(theta, 2.0 + 2.0 * s) / s;
      acc.add(scaled, 1e5, {{"s", s}, {"theta", theta}});
      acc.note_empirical(scaled);
    }
  }
  return acc.finish();
}

SphereMoments sphere_moments(const std::function<double(double)>& kernel, double s_sing,
                             double rel_tol) {
  // theta = (pi/2) t^p with p = 1/(1 - 2 s_sing) makes theta^{-2 s_sing} d theta
  // a constant multiple of dt.
  const double p = 1.0 / (1.0 - 2.0 * s_sing);
  auto moment = [&](int power) {
    auto f = [&](double t) {
      const double theta = kHalfPi * std::pow(t, p);
      const double jac = kHalfPi * p * std::pow(t, p - 1.0);
      const double half = std::sin(0.5 * theta);
      return 2.0 * kPi * std::pow(half, power) * kernel(theta) * std::sin(theta) * jac;
    };
    quad::AdaptiveOptions opts;
    opts.rel_tol = rel_tol;
    return quad::integrate(f, 0.0, 1.0, {}, opts);
  };
  const quad::Result a = moment(2);
  const quad::Result b = moment(1);
  return {a.value, b.value, std::max(a.rel_error(), b.rel_error())};
}

SphereMoments hard_sphere_moments() {
  // 2 pi * 1/2 * int_0^{pi/2} sin^k(theta/2) sin(theta) d theta
  return {kPi / 4.0, kPi * std::sqrt(2.0) / 3.0, 0.0};
}

double theta_integral_uniform_bound() {
  // symmetrized_kernel <= 1/2 + 1e5 s theta^{-2-2s} on (0, pi/2] and
  // sin(theta/2) sin(theta) <= theta^2 / 2, so each moment is at most
  // 2 pi [ (pi/2)^3 / 12 + 5e4 s (pi/2)^{1-2s} / (1-2s) ], increasing in s.
  const double s = 0.125;
  const double one = 2.0 * kPi *
                     (std::pow(kHalfPi, 3) / 12.0 +
                      5e4 * s * std::pow(kHalfPi, 1.0 - 2.0 * s) / (1.0 - 2.0 * s));
  return 2.0 * one;
}

InequalityCheck check_angular_moments(TableCache& tables, const std::vector<double>& s_grid,
                                     double slack) {
  Accumulator acc("angular_moments_uniform", describe(s_grid, "theta", {}), slack);
  const double bound = theta_integral_uniform_bound();
  for (double s : s_grid) {
    if (!(s > 0.0 && s < 0.125)) {
      throw DomainError("check_angular_moments: s must lie in (0, 1/8)");
    }
    const ImplicitMapTable& table = tables.get(s);
    const SphereMoments m =
        sphere_moments([&](double theta) { return symmetrized_kernel(table, theta); }, s);
    const double total = m.sin2_half + m.sin_half;
    acc.add(total, bound,
            {{"s", s}, {"sin2_half", m.sin2_half}, {"sin_half", m.sin_half}});
    acc.note_empirical(total);
  }
  return acc.finish();
}

std::vector<InequalityCheck> run_bound_suite(const BoundGrids& grids) {
  TableCache tables(grids.table_nodes, grids.quad_tol);
  const std::vector<double>& s_grid = grids.s_values;
  const std::vector<double> thetas = grids.theta_grid();
  std::vector<double> phis;
  for (double theta : thetas) phis.push_back(0.5 * (kPi - theta));
  std::sort(phis.begin(), phis.end());

  // The y grid is the node set of a table; it depends only on the node count.
  const std::vector<double> ys =
      table_y_grid(tables.get(s_grid.empty() ? 0.5 : s_grid.front()), grids.y_max);
  std::vector<double> small_s;
  for (double s : s_grid) {
    if (s < 0.125) small_s.push_back(s);
  }

  std::vector<InequalityCheck> out;
  auto push_pair = [&out](CheckPair p) {
    out.push_back(std::move(p.first));
    out.push_back(std::move(p.second));
  };
  const double slack = grids.slack;
  push_pair(check_angle_vs_arcsin(tables, s_grid, ys, slack));
  push_pair(check_inverse_vs_sine(tables, s_grid, phis, slack));
  push_pair(check_grazing_degeneracy(tables, s_grid, thetas, slack));
  out.push_back(check_inverse_slope_bound(tables, s_grid, thetas, slack));
  for (auto& c : check_complement_ratio(tables, s_grid, ys, slack)) out.push_back(std::move(c));
  out.push_back(check_kernel_rate(tables, s_grid, thetas, slack));
  out.push_back(check_symmetrized_rate(tables, s_grid, thetas, slack));
  out.push_back(check_angular_moments(tables, small_s, slack));
  return out;
}

}  // namespace ipk
