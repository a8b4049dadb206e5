// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Explicit time integration of df/dt = Q(f, f) and the comparison of a
// soft-potential flow with the hard-sphere flow from shared initial data.
#pragma once

#include "ipk/check.hpp"
#include "ipk/collision.hpp"
#include "ipk/radial.hpp"

#include <vector>

namespace ipk {

struct Diagnostics {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  double min_f = 0.0;
  std::vector<double> l1k;  // one entry per configured k
};

Diagnostics diagnose(const RadialDistribution& f, double t, const std::vector<double>& k_weights);

struct TimeSeries {
  std::string kernel;
  std::vector<double> k_weights;
  std::vector<double> times;
  std::vector<RadialDistribution> snapshots;
  std::vector<Diagnostics> diagnostics;

  /// max_t |mass(t) - mass(0)| / mass(0), and likewise for energy.
  double mass_drift() const;
  double energy_drift() const;
  /// Number of steps with H(t+dt) > H(t) + slack |H(t)|.
  int entropy_violations(double slack = 1e-5) const;
  /// max over steps of (H(t+dt) - H(t)) / |H(t)|.
  double worst_entropy_increase() const;
};

/// One midpoint Runge-Kutta step. Throws InstabilityError when any value
/// exceeds 1e3 * `reference_max` in magnitude.
RadialDistribution step(const RadialDistribution& f, const CollisionOperator& op, double dt,
                        double reference_max);

/// 0.25 / max_r nu(r) for the given exponent.
double stable_dt(const RadialDistribution& f, double gamma);

/// Integrates from t = 0 to t_end with n = ceil(t_end / dt) equal steps.
TimeSeries integrate_flow(const RadialDistribution& f_in, const CollisionOperator& op, double dt,
                          double t_end);

struct PairRun {
  double s = 0.0;
  double dt = 0.0;
  TimeSeries soft;
  TimeSeries hard;
  /// scaled_error[n][j] = |F(t_n)|_{L^1_{k_j}} with F = (f_soft - f_hard) / s.
  std::vector<std::vector<double>> scaled_error;
  /// sup over the horizon, per k.
  std::vector<double> sup_scaled_error;
};

/// Shared-grid run of both flows. A non-positive cfg.dt selects the smaller
/// stable_dt of the two kernels.
PairRun run_pair(const RadialDistribution& f_in, double s, const SolverConfig& cfg);

/// As run_pair, reusing an already computed hard-sphere flow on the same
/// time grid.
PairRun run_pair_with(const RadialDistribution& f_in, double s, const SolverConfig& cfg,
                      const TimeSeries& hard, double dt);

/// Scaled-error norms of two series on the same time grid.
std::vector<std::vector<double>> scaled_error_norms(const TimeSeries& soft,
                                                    const TimeSeries& hard, double s);

struct ConvergenceEntry {
  double s = 0.0;
  std::vector<double> sup_scaled_error;    // per k
  std::vector<double> final_scaled_error;  // |F(T)|, per k
  std::vector<double> floor;               // same functional on the equilibrium run
  double soft_mass_drift = 0.0;
  double soft_energy_drift = 0.0;
  int soft_entropy_violations = 0;
};

struct ConvergenceStudy {
  std::vector<double> s_values;
  std::vector<double> k_weights;
  double dt = 0.0;
  double t_end = 0.0;
  std::vector<ConvergenceEntry> entries;
  double hard_mass_drift = 0.0;
  double hard_energy_drift = 0.0;
  int hard_entropy_violations = 0;
  /// max / min over s of the sup, per k.
  std::vector<double> ratio;
  /// min over s of sup / floor, per k.
  std::vector<double> floor_margin;
  /// Consecutive entries whose sup more than doubles.
  std::vector<int> growth_flags;
  std::vector<PairRun> runs;  // kept when requested
  std::vector<PairRun> floor_runs;  // equilibrium runs, kept when requested
};

struct StudyOptions {
  /// Repeat the study on the Maxwellian with the same mass and energy to
  /// measure the discretization floor.
  bool with_floor = true;
  bool keep_runs = false;
};

/// One common time step and one hard-sphere flow serve every s.
ConvergenceStudy convergence_study(const RadialDistribution& f_in, const std::vector<double>& s_list,
                                   const SolverConfig& cfg, const StudyOptions& opts = {});

/// sup_t |f(t)|_{L^1_k} / |f(0)|_{L^1_k}; passes when finite. `empirical`
/// holds the same number.
InequalityCheck moment_propagation_check(const TimeSeries& series, double k);
/// H(t + dt) <= H(t) + slack |H(t)| along the series.
InequalityCheck entropy_check(const TimeSeries& series, double slack = 1e-5);

/// Defect of the scaled-error evolution law at interior time index n:
///   dF/dt - [Q_soft(f_soft, F) + Q_soft(F, f_hard) + (Q_soft - Q_hard)(f_hard, f_hard) / s]
/// with dF/dt by centered differences. Returns its L^1 norm over the L^1
/// norm of the bracket.
double error_equation_residual(const PairRun& run, const SolverConfig& cfg, std::size_t n);

}  // namespace ipk
