// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Isotropic velocity densities f(|v|) sampled on a radial grid.
#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace ipk {

enum class Interp {
  kLinear,
  kMonotoneCubic,
  /// Whittaker-Shannon (sinc) interpolant of the even extension, tabulated
  /// on a grid kBandLimitedRefinement times finer and read back by cubic
  /// Hermite interpolation. Uniform grids only.
  kBandLimited,
};

inline constexpr int kBandLimitedRefinement = 16;

std::string_view to_string(Interp interp);
/// Accepts "linear", "monotone-cubic" and "band-limited"; throws ConfigError otherwise.
Interp parse_interp(std::string_view name);

class RadialDistribution {
 public:
  /// `r_nodes` must start at 0, increase strictly and end at `v_max`.
  RadialDistribution(std::vector<double> r_nodes, std::vector<double> values, Interp interp,
                     double v_max);

  /// n nodes uniformly spaced on [0, v_max], sampled from `f`.
  static RadialDistribution sample(int n, double v_max, const std::function<double(double)>& f,
                                   Interp interp = Interp::kBandLimited);

  /// Same grid and interpolation, new nodal values.
  RadialDistribution with_values(std::vector<double> values) const;

  /// Interpolated density; 0 beyond v_max. The cubic rule is even about
  /// r = 0 (zero slope there).
  double operator()(double r) const;

  const std::vector<double>& r_nodes() const { return r_; }
  const std::vector<double>& values() const { return f_; }
  Interp interp() const { return interp_; }
  double v_max() const { return v_max_; }
  std::size_t size() const { return r_.size(); }
  bool uniform() const { return uniform_; }

  /// Weights w_i with sum_i w_i g(r_i) ~ int_0^{v_max} g(r) dr
  /// (trapezoid).
  const std::vector<double>& weights() const { return w_; }

  /// 4 pi int f(r) r^2 phi(r) dr for a radial test function phi.
  double pair(const std::function<double(double)>& phi) const;
  double mass() const;
  /// 4 pi int f r^4 dr, the second moment int |v|^2 f dv.
  double energy() const;
  double min_value() const;
  double max_abs() const;

 private:
  std::size_t locate(double r) const;

  std::vector<double> r_;
  std::vector<double> f_;
  std::vector<double> slope_;
  // Fine table of the band-limited interpolant and its derivative.
  std::vector<double> fine_f_;
  std::vector<double> fine_df_;
  double inv_fine_h_ = 0.0;
  std::vector<double> w_;
  Interp interp_;
  double v_max_;
  bool uniform_ = false;
  double inv_h_ = 0.0;
};

/// 4 pi int |f| <r>^k r^2 dr with <r> = sqrt(1 + r^2).
double l1k_norm(const RadialDistribution& f, double k);
/// 4 pi int |f'(r)| <r>^k r^2 dr, with f' by centered differences and taken
/// as 0 at r = 0.
double w11k_seminorm(const RadialDistribution& f, double k);
/// l1k_norm + w11k_seminorm.
double w11k_norm(const RadialDistribution& f, double k);
/// 4 pi int f log f r^2 dr. Nodes with f <= 0 contribute 0.
double entropy(const RadialDistribution& f);
/// 4 pi int f |log f| r^2 dr over nodes with f > 0.
double llogl(const RadialDistribution& f);

/// mass (2 pi T)^{-3/2} exp(-r^2 / 2T).
double maxwellian_density(double r, double mass, double temperature);
RadialDistribution maxwellian(int n, double v_max, double mass = 1.0,
                              double temperature = 1.0,
                              Interp interp = Interp::kBandLimited);
/// Equal-mass mixture of Maxwellians at temperatures t_low and t_high.
/// The defaults have unit mass and the energy of the unit Maxwellian.
RadialDistribution bimodal(int n, double v_max, double mass = 1.0, double t_low = 0.5,
                           double t_high = 1.5, Interp interp = Interp::kBandLimited);
/// Smooth bump exp(-1/(1 - x^2)), x = (r - center) / width, scaled so the
/// grid mass equals `mass`.
RadialDistribution bump(int n, double v_max, double center = 1.5, double width = 1.0,
                        double mass = 1.0, Interp interp = Interp::kBandLimited);

}  // namespace ipk
