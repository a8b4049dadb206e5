// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Collision operator Q(g, f) for isotropic densities on a radial grid.
//
// For an output speed r the partner velocity is written v_* = v - u with
// u the relative velocity, rho = |u| and mu the cosine between v and u.
// The sphere of outgoing directions is parametrized by the deviation theta
// from u and an azimuth measured from the (v, u) plane, so the integrand
// depends on the azimuth only through its cosine. Output values are
//
//   Q(r) = 2 pi int rho^{2+gamma} d rho int d mu int b_bar(theta) sin(theta)
//          int [g(|v'_*|) f(|v'|) - g(|v_*|) f(r)] d azimuth d theta
//
// with theta restricted to [theta_cut, pi/2].
#pragma once

#include "ipk/check.hpp"
#include "ipk/kernel.hpp"
#include "ipk/quadrature.hpp"
#include "ipk/radial.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ipk {

struct CollisionGeometry {
  double v_speed = 0.0;
  double vstar_speed = 0.0;
  double beta = 0.0;    // angle between v and v_*, in [0, pi]
  double theta = 0.0;   // deviation angle, in [0, pi]
  double phi_az = 0.0;  // azimuth of sigma, in [0, 2 pi]
};

struct PostCollisionSpeeds {
  double v_prime = 0.0;
  double vstar_prime = 0.0;
};

/// Outgoing speeds from
///   |v'|^2   = cos^2(theta/2) |v|^2 + sin^2(theta/2) |v_*|^2 + X,
///   |v'_*|^2 = sin^2(theta/2) |v|^2 + cos^2(theta/2) |v_*|^2 - X,
/// X = sin(theta) sin(beta) cos(phi) |v| |v_*|. Radicands in (-1e-12 E, 0)
/// are clipped (E the total energy); anything more negative throws.
PostCollisionSpeeds post_collision_speeds(const CollisionGeometry& geom);

struct QuadratureCounts {
  int n_rstar = 48;  // relative speed |u|
  int n_beta = 24;   // cosine between v and u
  int n_theta = 32;  // deviation angle
  int n_phi = 16;    // azimuth, full circle
};

struct SolverConfig {
  int n_r = 48;
  double v_max = 8.0;
  QuadratureCounts n_quad{};
  double theta_cut = 1e-3;
  /// Time step; a value <= 0 selects 0.25 / max_r nu(r) at t = 0.
  double dt = 0.0;
  double t_end = 1.0;
  std::vector<double> k_weights{2.0, 4.0};
  Interp interp = Interp::kBandLimited;
  /// Largest admitted cutoff remainder, relative to the L1 norm of the loss
  /// term.
  double cutoff_tol = 1e-5;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

class Kernel {
 public:
  static Kernel hard_sphere() { return Kernel(0.0); }
  /// U(r) = r^{-1/s}; 0 < s < 1/8 for the operator.
  static Kernel inverse_power(double s);

  bool is_hard_sphere() const { return s_ == 0.0; }
  double s() const { return s_; }
  double gamma() const { return 1.0 - 4.0 * s_; }
  std::string label() const;

 private:
  explicit Kernel(double s) : s_(s) {}
  double s_;
};

/// Deviation-angle nodes on [theta_cut, pi/2] with weights b_bar(theta)
/// sin(theta) w_quad.
struct AngularRule {
  std::vector<double> theta;
  std::vector<double> weight;
  double theta_cut = 0.0;
  /// int_0^{theta_cut} b_bar(theta) theta^3 d theta from the small-angle
  /// asymptotics.
  double cutoff_moment = 0.0;
  /// 2 pi int_{theta_cut}^{pi/2} b_bar sin d theta, the discrete total
  /// cross-section.
  double cross_section = 0.0;
};

AngularRule make_angular_rule(const Kernel& kernel, int n_theta, double theta_cut);

struct CollisionResult {
  RadialDistribution q;
  /// Loss part g(|v_*|) f(r) integrated alone; sets the scale of q.
  std::vector<double> loss;
  /// Pointwise estimate of the omitted theta < theta_cut contribution.
  std::vector<double> remainder;
  double loss_l1 = 0.0;
  double remainder_l1 = 0.0;
};

/// Reusable evaluator: quadrature rules and kernel values are built once.
class CollisionOperator {
 public:
  CollisionOperator(const Kernel& kernel, const SolverConfig& cfg);

  /// Q(g, f) on f's grid, with g in the partner slot. Throws ConfigError on
  /// theta_cut when the relative remainder exceeds cfg.cutoff_tol.
  CollisionResult apply(const RadialDistribution& g, const RadialDistribution& f) const;
  CollisionResult apply(const RadialDistribution& f) const { return apply(f, f); }

  const Kernel& kernel() const { return kernel_; }
  const SolverConfig& config() const { return cfg_; }
  const AngularRule& angular() const { return angular_; }

 private:
  Kernel kernel_;
  SolverConfig cfg_;
  AngularRule angular_;
  quad::Rule mu_rule_;
  std::vector<double> cos_az_;
  std::vector<double> w_az_;
};

/// Q(f, f) values per node.
RadialDistribution eval_Q(const RadialDistribution& f, const Kernel& kernel,
                          const SolverConfig& cfg);

/// nu(r) = int |v - v_*|^gamma f(v_*) dv_*, with the angular part done in
/// closed form and the radial part by the grid trapezoid rule.
double loss_frequency(const RadialDistribution& f, double gamma, double r);
std::vector<double> loss_frequency_nodes(const RadialDistribution& f, double gamma);

/// Weak pairing 4 pi int q(r) phi(r) r^2 dr, normalized by the same pairing
/// of |loss|; used for the conservation diagnostics.
struct InvariantDrift {
  double mass = 0.0;
  double energy = 0.0;
};
InvariantDrift invariant_drift(const CollisionResult& result);

/// Samples collision geometries uniformly (speeds in [0, max_speed], beta
/// in [0, pi], theta in [0, pi], azimuth in [0, 2 pi]) and reports the
/// supremum of
///   (<v'>^k - c^k <v>^k - s^k <v_*>^k) /
///   (c^{k-1} <v>^{k-1} s <v_*> + c <v> s^{k-1} <v_*>^{k-1})
/// with c = cos(theta/2), s = sin(theta/2), and of its mirror image for
/// v'_*. Both records pass when the supremum is finite.
CheckPair povzner_sample_check(double k, std::int64_t n_samples, std::uint64_t seed,
                               double max_speed = 10.0);

}  // namespace ipk
