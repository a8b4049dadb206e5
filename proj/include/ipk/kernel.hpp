// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Angular part b(theta) of the Boltzmann kernel for the inverse power
// potential U(r) = r^{-1/s}. The impact angle phi(y) is an integral over
// z in [0,1]; its inverse y(phi) is obtained numerically and the kernel
// is an explicit function of y, dy/dphi and theta.
//
// Every quantity that degenerates near y = 1 (theta -> 0) is carried in
// complement form, 1 - y and pi/2 - phi, so relative accuracy survives
// all the way to theta ~ 1e-8.
#pragma once

#include "ipk/potential.hpp"

#include <numbers>
#include <vector>

namespace ipk {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr double kDefaultInversionTol = 1e-12;
inline constexpr int kDefaultTableNodes = 256;
inline constexpr double kTableGrading = 0.85;

/// An impact parameter y in [0,1] stored together with 1 - y.
struct Impact {
  double y = 0.0;
  double one_minus_y = 1.0;

  static Impact from_y(double y) { return {y, 1.0 - y}; }
  static Impact from_complement(double w) { return {1.0 - w, w}; }
  /// 1 - y^2, computed without cancellation.
  double one_minus_y2() const { return one_minus_y * (1.0 + y); }
};

/// g(s,y,z) = 1 - z^{1/s} - y^2 (z^2 - z^{1/s}).
double scattering_radicand(double s, double y, double z);

struct AngleValue {
  double phi = 0.0;
  double complement = kHalfPi;  // pi/2 - phi
  double rel_error = 0.0;       // relative to the smaller of phi, complement
};

struct SlopeValue {
  double value = 0.0;
  double rel_error = 0.0;
};

/// phi(y) and pi/2 - phi(y). Throws QuadratureError if the estimated
/// relative error exceeds `tol`.
AngleValue impact_angle_value(double s, Impact p, double tol = kDefaultQuadTol);
/// phi'(y) = int_0^1 (1 - z^{1/s}) g^{-3/2} dz.
SlopeValue impact_angle_slope_value(double s, Impact p, double tol = kDefaultQuadTol);

double impact_angle(double s, double y, double tol = kDefaultQuadTol);
double impact_angle_slope(double s, double y, double tol = kDefaultQuadTol);

/// Sampled graph of phi(y) used to bracket its inversion.
/// Nodes are uniform in y on [0, 1/2) and geometrically graded in 1 - y
/// toward y = 1, where phi' grows like s^{-1/2}.
class ImplicitMapTable {
 public:
  struct Node {
    double y;
    double one_minus_y;
    double phi;
    double complement;  // pi/2 - phi
    double dphi;
  };

  ImplicitMapTable(PotentialParam param, std::vector<Node> nodes, double tol,
                   double inversion_tol);

  double s() const { return param_.s(); }
  const PotentialParam& param() const { return param_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  double tol() const { return tol_; }
  double inversion_tol() const { return inversion_tol_; }
  int max_iterations() const { return 80; }

 private:
  PotentialParam param_;
  std::vector<Node> nodes_;
  double tol_;
  double inversion_tol_;
};

ImplicitMapTable build_map_table(double s, int n_nodes = kDefaultTableNodes,
                                 double tol = kDefaultQuadTol,
                                 double inversion_tol = kDefaultInversionTol);

struct Inversion {
  Impact point;
  double dphi = 0.0;       // phi'(y) at the solution
  double rel_error = 0.0;  // combined quadrature + inversion estimate
  int iterations = 0;
};

/// y(phi) for phi in [0, pi/2].
Inversion invert(const ImplicitMapTable& table, double phi);
/// y(pi/2 - c) for c in [0, pi/2]; keeps full relative accuracy in 1 - y
/// when c is small.
Inversion invert_complement(const ImplicitMapTable& table, double c);

double impact_parameter(const ImplicitMapTable& table, double phi);
/// dy/dphi = 1 / phi'(y(phi)).
double impact_parameter_slope(const ImplicitMapTable& table, double phi);

double impact_factor(double s, double y);
double impact_factor_slope(double s, double y);

struct KernelValue {
  double theta = 0.0;
  double phi = 0.0;          // (pi - theta) / 2
  double y = 0.0;            // y(phi)
  double one_minus_y = 1.0;
  double slope = 0.0;        // d y / d phi
  double value = 0.0;        // kernel value at theta
  double quad_err = 0.0;     // estimated relative error of value
};

/// b(theta) = 2^{4s}/2 * f(y) f'(y) y'(phi) / sin(theta), f(y) = y (1-y^2)^{-s},
/// with 2 phi + theta = pi, for theta in (0, pi]. At theta = pi the removable
/// 0/0 is replaced by its limit 2^{4s-2} y'(0)^2.
KernelValue angular_kernel(const ImplicitMapTable& table, double theta);

/// b(theta) + b(pi - theta) on (0, pi/2], zero beyond (angles within 1e-9
/// relative of pi/2 count as pi/2).
double symmetrized_kernel(const ImplicitMapTable& table, double theta);

/// Wallis integral W_n = int_0^{pi/2} sin^n t dt for real n > 0.
double wallis(double n);

/// Small-angle constant C = lim theta^{2+2s} b(theta)
///                          = 2^{4s} s (W_{1/s} / s)^{2s}.
double grazing_constant(double s);

}  // namespace ipk
