// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#include "ipk/kernel.hpp"

#include "ipk/quadrature.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ipk {

namespace {

// Adaptive target sits three decades below the certified tolerance so the
// (pessimistic) Kronrod error estimate rarely trips the check.
double internal_target(double tol) { return std::max(1e-3 * tol, 1e-15); }

void require_softness(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("softness s must lie in (0,1)");
}

void require_impact(Impact p) {
  if (!(p.y >= 0.0 && p.y <= 1.0 && p.one_minus_y >= 0.0 && p.one_minus_y <= 1.0)) {
    throw DomainError("impact parameter y must lie in [0,1]");
  }
}

// The z-integrals are evaluated after z = 1 - u^2, which turns the
// (1 - z)^{-1/2} endpoint behaviour at z = 1 into a smooth integrand in u.
// Both 1 - z^{1/s} and 1 - z^2 are formed without cancellation.
struct UTerms {
  double one_minus_zs;  // 1 - z^{1/s}
  double one_minus_z2;  // 1 - z^2
};

inline UTerms u_terms(double s, double u) {
  const double u2 = u * u;
  return {-std::expm1(std::log1p(-u2) / s), u2 * (2.0 - u2)};
}

// g = (1 - y^2)(1 - z^{1/s}) + y^2 (1 - z^2)
inline double g_of(const UTerms& t, double q, double y2) {
  return q * t.one_minus_zs + y2 * t.one_minus_z2;
}

// Two internal length scales in u: z^{1/s} switches off at u ~ sqrt(s), and
// the (1 - y^2) term competes with y^2 u^2 at u ~ sqrt((1 - y^2)/2).
std::vector<double> breakpoints(double s, double q, double y) {
  std::vector<double> pts;
  auto add_scale = [&pts](double c) {
    for (double f : {0.25, 1.0, 4.0}) {
      const double x = c * f;
      if (x > 1e-12 && x < 1.0) pts.push_back(x);
    }
  };
  add_scale(std::sqrt(s));
  if (y > 0.0) add_scale(std::sqrt(0.5 * q) / y);
  return pts;
}

quad::Result integrate_u(const std::function<double(double)>& f, double s, double q,
                         double y, double tol) {
  const auto pts = breakpoints(s, q, y);
  quad::AdaptiveOptions opts;
  opts.rel_tol = internal_target(tol);
  return quad::integrate(f, 0.0, 1.0, pts, opts);
}

void check_tolerance(const char* what, double s, Impact p, double rel, double tol) {
  if (rel > tol) {
    std::ostringstream os;
    os << what << ": quadrature did not converge at s=" << s << ", y=" << p.y
       << " (achieved rel. error " << rel << ", requested " << tol << ")";
    throw QuadratureError(os.str(), rel);
  }
}

}  // namespace

double scattering_radicand(double s, double y, double z) {
  require_softness(s);
  if (!(y >= 0.0 && y <= 1.0)) throw DomainError("scattering_radicand: y must lie in [0,1]");
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("scattering_radicand: z must lie in [0,1]");
  const double zs = (z == 0.0) ? 0.0 : std::exp(std::log(z) / s);
  return 1.0 - zs - y * y * (z * z - zs);
}

AngleValue impact_angle_value(double s, Impact p, double tol) {
  require_softness(s);
  require_impact(p);
  if (p.y == 0.0) return {0.0, kHalfPi, 0.0};
  if (p.one_minus_y == 0.0) return {kHalfPi, 0.0, 0.0};

  const double y = p.y;
  const double y2 = y * y;
  const double q = p.one_minus_y2();

  if (y < 0.5) {
    // phi = y int_0^1 g^{-1/2} dz
    auto f = [=](double u) {
      const UTerms t = u_terms(s, u);
      return 2.0 * u / std::sqrt(g_of(t, q, y2));
    };
    const quad::Result r = integrate_u(f, s, q, y, tol);
    const double phi = y * r.value;
    const double rel = r.rel_error();
    check_tolerance("impact_angle", s, p, rel, tol);
    return {phi, kHalfPi - phi, rel};
  }

  // pi/2 - phi = int_0^1 [(1 - z^2)^{-1/2} - y g^{-1/2}] dz
  //            = (1 - y^2) int_0^1 (1 - z^{1/s}) /
  //                (sqrt(1-z^2) sqrt(g) (sqrt(g) + y sqrt(1-z^2))) dz
  auto f = [=](double u) {
    const UTerms t = u_terms(s, u);
    const double sg = std::sqrt(g_of(t, q, y2));
    const double r2 = std::sqrt(2.0 - u * u);
    return 2.0 * t.one_minus_zs / (r2 * sg * (sg + y * u * r2));
  };
  const quad::Result r = integrate_u(f, s, q, y, tol);
  const double complement = q * r.value;
  const double rel = r.rel_error();
  check_tolerance("impact_angle complement", s, p, rel, tol);
  return {kHalfPi - complement, complement, rel};
}

SlopeValue impact_angle_slope_value(double s, Impact p, double tol) {
  require_softness(s);
  require_impact(p);
  const double y = p.y;
  const double y2 = y * y;
  const double q = p.one_minus_y2();
  auto f = [=](double u) {
    const UTerms t = u_terms(s, u);
    const double g = g_of(t, q, y2);
    return 2.0 * u * t.one_minus_zs / (g * std::sqrt(g));
  };
  const quad::Result r = integrate_u(f, s, q, y, tol);
  const double rel = r.rel_error();
  check_tolerance("impact_angle'", s, p, rel, tol);
  return {r.value, rel};
}

double impact_angle(double s, double y, double tol) {
  return impact_angle_value(s, Impact::from_y(y), tol).phi;
}

double impact_angle_slope(double s, double y, double tol) {
  return impact_angle_slope_value(s, Impact::from_y(y), tol).value;
}

ImplicitMapTable::ImplicitMapTable(PotentialParam param, std::vector<Node> nodes,
                                   double tol, double inversion_tol)
    : param_(param), nodes_(std::move(nodes)), tol_(tol), inversion_tol_(inversion_tol) {
  const double s = param_.s();
  if (nodes_.size() < 2) throw DomainError("ImplicitMapTable: need at least two nodes");
  const Node& first = nodes_.front();
  const Node& last = nodes_.back();
  if (first.y != 0.0 || first.phi != 0.0 || !(first.dphi >= 1.0 && first.dphi <= 2.0)) {
    throw DomainError("ImplicitMapTable: first node must be (0, 0, dphi in [1,2])");
  }
  const double lo = 1.0 / std::sqrt(s);
  const double hi = std::sqrt(kHalfPi) / std::sqrt(s);
  const double slack = 1e-9 * hi;
  if (last.one_minus_y != 0.0 || last.complement != 0.0 || last.dphi < lo - slack ||
      last.dphi > hi + slack) {
    throw DomainError("ImplicitMapTable: last node must be (1, pi/2, dphi in [s^-1/2, sqrt(pi/2) s^-1/2])");
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    const Node& a = nodes_[i - 1];
    const Node& b = nodes_[i];
    if (!(b.y > a.y || b.one_minus_y < a.one_minus_y)) {
      throw DomainError("ImplicitMapTable: y must be strictly increasing");
    }
    if (!(b.phi > a.phi || b.complement < a.complement)) {
      throw DomainError("ImplicitMapTable: phi must be strictly increasing");
    }
  }
  for (const Node& n : nodes_) {
    if (!(n.dphi > 0.0)) throw DomainError("ImplicitMapTable: dphi must be positive");
  }
}

ImplicitMapTable build_map_table(double s, int n_nodes, double tol, double inversion_tol) {
  require_softness(s);
  if (n_nodes < 16) throw DomainError("build_map_table: need n_nodes >= 16");

  std::vector<Impact> points;
  const int n_uniform = n_nodes / 4;
  for (int i = 0; i < n_uniform; ++i) points.push_back(Impact::from_y(0.5 * i / n_uniform));
  const int n_graded = n_nodes - n_uniform - 1;
  double w = 0.5;
  for (int j = 0; j < n_graded; ++j, w *= kTableGrading) {
    points.push_back(Impact::from_complement(w));
  }
  points.push_back(Impact::from_complement(0.0));

  std::vector<ImplicitMapTable::Node> nodes;
  nodes.reserve(points.size());
  for (const Impact& p : points) {
    const AngleValue v = impact_angle_value(s, p, tol);
    const SlopeValue d = impact_angle_slope_value(s, p, tol);
    nodes.push_back({p.y, p.one_minus_y, v.phi, v.complement, d.value});
  }
  return ImplicitMapTable(PotentialParam(s), std::move(nodes), tol, inversion_tol);
}

namespace {

// Solves for the impact point either in y (phi(y) = target) or, near
// y = 1, in w = 1 - y (pi/2 - phi(1 - w) = target). In both variables the
// residual is increasing with slope phi'(y).
Inversion solve(const ImplicitMapTable& table, double target, bool complement_mode) {
  const double s = table.s();
  const double tol = table.tol();
  const auto& nodes = table.nodes();

  auto to_impact = [&](double x) {
    return complement_mode ? Impact::from_complement(x) : Impact::from_y(x);
  };
  auto residual = [&](double x, double* rel) {
    const AngleValue v = impact_angle_value(s, to_impact(x), tol);
    if (complement_mode) {
      *rel = v.rel_error * v.complement;
      return v.complement - target;
    }
    *rel = v.rel_error * v.phi;
    return v.phi - target;
  };

  // Bracket from the table: x in [lo, hi] with residual(lo) <= 0 <= residual(hi).
  double lo = 0.0, hi = 0.0, x = 0.0;
  if (complement_mode) {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), target,
                               [](const auto& n, double c) { return n.complement > c; });
    // it->complement <= target < (it-1)->complement
    const auto& b = *it;
    const auto& a = *(it - 1);
    lo = b.one_minus_y;
    hi = a.one_minus_y;
    const double t = (target - b.complement) / (a.complement - b.complement);
    x = lo + t * (hi - lo);
  } else {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), target,
                               [](const auto& n, double p) { return n.phi < p; });
    // (it-1)->phi < target <= it->phi
    const auto& b = *it;
    const auto& a = *(it - 1);
    lo = a.y;
    hi = b.y;
    const double t = (target - a.phi) / (b.phi - a.phi);
    x = lo + t * (hi - lo);
  }

  Inversion out;
  double abs_err = 0.0;
  bool converged = false;
  for (int it = 1; it <= table.max_iterations(); ++it) {
    out.iterations = it;
    const double r = residual(x, &abs_err);
    if (r == 0.0) {
      converged = true;
      break;
    }
    if (r < 0.0) lo = x; else hi = x;
    const double slope = impact_angle_slope_value(s, to_impact(x), tol).value;
    double next = x - r / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    const double scale = complement_mode ? x : 1.0;
    if (step <= table.inversion_tol() * scale || hi - lo <= table.inversion_tol() * scale) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "impact_parameter inversion did not converge at s=" << s << " (target " << target
       << ", bracket width " << hi - lo << ")";
    throw InversionError(os.str());
  }

  out.point = to_impact(x);
  const SlopeValue d = impact_angle_slope_value(s, out.point, tol);
  out.dphi = d.value;
  // Uncertainty in x implied by the residual's quadrature error.
  const double x_rel = (x > 0.0) ? abs_err / (d.value * x) : 0.0;
  out.rel_error = d.rel_error + x_rel;
  return out;
}

Inversion endpoint(const ImplicitMapTable& table, bool at_one) {
  const auto& n = at_one ? table.nodes().back() : table.nodes().front();
  Inversion out;
  out.point = {n.y, n.one_minus_y};
  out.dphi = n.dphi;
  return out;
}

}  // namespace

Inversion invert(const ImplicitMapTable& table, double phi) {
  if (!(phi >= 0.0 && phi <= kHalfPi)) throw DomainError("impact_parameter: phi must lie in [0, pi/2]");
  if (phi == 0.0) return endpoint(table, false);
  if (phi == kHalfPi) return endpoint(table, true);
  if (phi > 0.5 * kHalfPi) return solve(table, kHalfPi - phi, true);
  return solve(table, phi, false);
}

Inversion invert_complement(const ImplicitMapTable& table, double c) {
  if (!(c >= 0.0 && c <= kHalfPi)) throw DomainError("impact_parameter: complement must lie in [0, pi/2]");
  if (c == 0.0) return endpoint(table, true);
  if (c == kHalfPi) return endpoint(table, false);
  if (c < 0.5 * kHalfPi) return solve(table, c, true);
  return solve(table, kHalfPi - c, false);
}

double impact_parameter(const ImplicitMapTable& table, double phi) { return invert(table, phi).point.y; }

double impact_parameter_slope(const ImplicitMapTable& table, double phi) {
  return 1.0 / invert(table, phi).dphi;
}

double impact_factor(double s, double y) {
  require_softness(s);
  if (!(y >= 0.0 && y < 1.0)) throw DomainError("impact_factor: y must lie in [0,1)");
  return y * std::pow(1.0 - y * y, -s);
}

double impact_factor_slope(double s, double y) {
  require_softness(s);
  if (!(y >= 0.0 && y < 1.0)) throw DomainError("impact_factor': y must lie in [0,1)");
  const double q = 1.0 - y * y;
  return 2.0 * s * std::pow(q, -1.0 - s) + (1.0 - 2.0 * s) * std::pow(q, -s);
}

KernelValue angular_kernel(const ImplicitMapTable& table, double theta) {
  if (!(theta > 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("angular_kernel: theta must lie in (0, pi]");
  }
  const double s = table.s();
  const double prefactor = 0.5 * std::exp2(4.0 * s);
  KernelValue k;
  k.theta = theta;
  k.phi = 0.5 * (std::numbers::pi - theta);

  if (theta == std::numbers::pi) {
    // y ~ y'(0) phi, sin(theta) ~ 2 phi, f'(0) = 1.
    const Inversion inv = endpoint(table, false);
    k.y = 0.0;
    k.one_minus_y = 1.0;
    k.slope = 1.0 / inv.dphi;
    k.value = 0.5 * prefactor * k.slope * k.slope;
    return k;
  }

  const Inversion inv = invert_complement(table, 0.5 * theta);
  const Impact p = inv.point;
  const double q = p.one_minus_y2();
  const double qs = std::pow(q, -s);
  const double beta = p.y * qs;
  const double beta_prime = 2.0 * s * qs / q + (1.0 - 2.0 * s) * qs;
  k.y = p.y;
  k.one_minus_y = p.one_minus_y;
  k.slope = 1.0 / inv.dphi;
  k.value = prefactor * beta * beta_prime * k.slope / std::sin(theta);
  k.quad_err = inv.rel_error * (2.0 + 2.0 * s);
  return k;
}

double symmetrized_kernel(const ImplicitMapTable& table, double theta) {
  if (!(theta > 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("symmetrized_kernel: theta must lie in (0, pi]");
  }
  // Angles within 1e-9 relative of pi/2 are treated as pi/2 so that
  // decimal input of the endpoint keeps its support.
  if (theta > kHalfPi * (1.0 + 1e-9)) return 0.0;
  theta = std::min(theta, kHalfPi);
  return angular_kernel(table, theta).value + angular_kernel(table, std::numbers::pi - theta).value;
}

double wallis(double n) {
  if (!(n > 0.0)) throw DomainError("wallis: n must be positive");
  // W_n = B((n+1)/2, 1/2) / 2
  return 0.5 * std::sqrt(std::numbers::pi) *
         boost::math::tgamma_ratio(0.5 * (n + 1.0), 0.5 * n + 1.0);
}

double grazing_constant(double s) {
  require_softness(s);
  return std::exp2(4.0 * s) * s * std::pow(wallis(1.0 / s) / s, 2.0 * s);
}

}  // namespace ipk
