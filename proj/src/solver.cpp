// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#include "ipk/solver.hpp"

#include "ipk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

namespace ipk {

namespace {

RadialDistribution axpy(const RadialDistribution& x, double a, const RadialDistribution& y) {
  std::vector<double> v = x.values();
  const auto& w = y.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += a * w[i];
  return x.with_values(std::move(v));
}

RadialDistribution scaled_difference(const RadialDistribution& a, const RadialDistribution& b,
                                     double s) {
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.values()[i] - b.values()[i]) / s;
  return a.with_values(std::move(v));
}

double l1(const std::vector<double>& v, const RadialDistribution& grid) {
  const auto& r = grid.r_nodes();
  const auto& w = grid.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) sum += w[i] * std::abs(v[i]) * r[i] * r[i];
  return 4.0 * std::numbers::pi * sum;
}

double relative_drift(const std::vector<Diagnostics>& d, double Diagnostics::*field) {
  const double ref = d.front().*field;
  double worst = 0.0;
  for (const auto& x : d) worst = std::max(worst, std::abs(x.*field - ref));
  return ref != 0.0 ? worst / std::abs(ref) : worst;
}

}  // namespace

Diagnostics diagnose(const RadialDistribution& f, double t, const std::vector<double>& k_weights) {
  Diagnostics d;
  d.t = t;
  d.mass = f.mass();
  d.energy = f.energy();
  d.entropy = entropy(f);
  d.min_f = f.min_value();
  for (double k : k_weights) d.l1k.push_back(l1k_norm(f, k));
  return d;
}

double TimeSeries::mass_drift() const { return relative_drift(diagnostics, &Diagnostics::mass); }

double TimeSeries::energy_drift() const {
  return relative_drift(diagnostics, &Diagnostics::energy);
}

int TimeSeries::entropy_violations(double slack) const {
  int count = 0;
  for (std::size_t n = 1; n < diagnostics.size(); ++n) {
    const double prev = diagnostics[n - 1].entropy;
    if (diagnostics[n].entropy > prev + slack * std::abs(prev)) ++count;
  }
  return count;
}

double TimeSeries::worst_entropy_increase() const {
  double worst = -INFINITY;
  for (std::size_t n = 1; n < diagnostics.size(); ++n) {
    const double prev = diagnostics[n - 1].entropy;
    const double inc = diagnostics[n].entropy - prev;
    worst = std::max(worst, prev != 0.0 ? inc / std::abs(prev) : inc);
  }
  return worst;
}

RadialDistribution step(const RadialDistribution& f, const CollisionOperator& op, double dt,
                        double reference_max) {
  if (!(dt > 0.0)) throw DomainError("step: dt must be > 0");
  const RadialDistribution k1 = op.apply(f).q;
  const RadialDistribution mid = axpy(f, 0.5 * dt, k1);
  const RadialDistribution k2 = op.apply(mid).q;
  RadialDistribution next = axpy(f, dt, k2);
  const double limit = 1e3 * reference_max;
  for (double v : next.values()) {
    if (!std::isfinite(v) || std::abs(v) > limit) {
      std::ostringstream os;
      os << "step: |f| = " << std::abs(v) << " exceeds 1e3 x initial max " << reference_max
         << " (dt = " << dt << ")";
      throw InstabilityError(os.str());
    }
  }
  return next;
}

double stable_dt(const RadialDistribution& f, double gamma) {
  const std::vector<double> nu = loss_frequency_nodes(f, gamma);
  const double peak = *std::max_element(nu.begin(), nu.end());
  if (!(peak > 0.0)) throw DomainError("stable_dt: loss frequency vanishes");
  return 0.25 / peak;
}

TimeSeries integrate_flow(const RadialDistribution& f_in, const CollisionOperator& op, double dt,
                          double t_end) {
  if (!(dt > 0.0) || !(t_end > 0.0)) throw DomainError("integrate_flow: dt and t_end must be > 0");
  const int n_steps = static_cast<int>(std::ceil(t_end / dt - 1e-12));
  const double h = t_end / n_steps;
  const auto& k = op.config().k_weights;
  TimeSeries series;
  series.kernel = op.kernel().label();
  series.k_weights = k;
  series.times.push_back(0.0);
  series.snapshots.push_back(f_in);
  series.diagnostics.push_back(diagnose(f_in, 0.0, k));
  // A zero initial state stays zero; guard the instability threshold.
  const double reference = std::max(f_in.max_abs(), 1e-300);
  RadialDistribution f = f_in;
  for (int n = 1; n <= n_steps; ++n) {
    f = step(f, op, h, reference);
    const double t = (n == n_steps) ? t_end : n * h;
    series.times.push_back(t);
    series.snapshots.push_back(f);
    series.diagnostics.push_back(diagnose(f, t, k));
  }
  return series;
}

std::vector<std::vector<double>> scaled_error_norms(const TimeSeries& soft, const TimeSeries& hard,
                                                    double s) {
  if (soft.times != hard.times) throw DomainError("scaled_error_norms: time grids differ");
  std::vector<std::vector<double>> out;
  for (std::size_t n = 0; n < soft.times.size(); ++n) {
    const RadialDistribution F = scaled_difference(soft.snapshots[n], hard.snapshots[n], s);
    std::vector<double> row;
    for (double k : soft.k_weights) row.push_back(l1k_norm(F, k));
    out.push_back(std::move(row));
  }
  return out;
}

PairRun run_pair_with(const RadialDistribution& f_in, double s, const SolverConfig& cfg,
                      const TimeSeries& hard, double dt) {
  PairRun run;
  run.s = s;
  run.dt = dt;
  const CollisionOperator soft_op(Kernel::inverse_power(s), cfg);
  run.soft = integrate_flow(f_in, soft_op, dt, cfg.t_end);
  run.hard = hard;
  run.scaled_error = scaled_error_norms(run.soft, run.hard, s);
  run.sup_scaled_error.assign(cfg.k_weights.size(), 0.0);
  for (const auto& row : run.scaled_error) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      run.sup_scaled_error[j] = std::max(run.sup_scaled_error[j], row[j]);
    }
  }
  return run;
}

PairRun run_pair(const RadialDistribution& f_in, double s, const SolverConfig& cfg) {
  cfg.validate();
  if (!(s > 0.0 && s < 0.125)) throw DomainError("run_pair: s must lie in (0, 1/8)");
  const double dt =
      cfg.dt > 0.0 ? cfg.dt : std::min(stable_dt(f_in, 1.0), stable_dt(f_in, 1.0 - 4.0 * s));
  const CollisionOperator hard_op(Kernel::hard_sphere(), cfg);
  const TimeSeries hard = integrate_flow(f_in, hard_op, dt, cfg.t_end);
  return run_pair_with(f_in, s, cfg, hard, dt);
}

ConvergenceStudy convergence_study(const RadialDistribution& f_in, const std::vector<double>& s_list,
                                   const SolverConfig& cfg, const StudyOptions& opts) {
  cfg.validate();
  if (s_list.empty()) throw DomainError("convergence_study: empty s list");
  for (std::size_t i = 0; i < s_list.size(); ++i) {
    if (!(s_list[i] > 0.0 && s_list[i] < 0.125)) {
      throw DomainError("convergence_study: s values must lie in (0, 1/8)");
    }
    if (i > 0 && !(s_list[i] < s_list[i - 1])) {
      throw DomainError("convergence_study: s values must decrease");
    }
  }
  ConvergenceStudy study;
  study.s_values = s_list;
  study.k_weights = cfg.k_weights;
  study.t_end = cfg.t_end;
  double dt = cfg.dt;
  if (!(dt > 0.0)) {
    dt = stable_dt(f_in, 1.0);
    for (double s : s_list) dt = std::min(dt, stable_dt(f_in, 1.0 - 4.0 * s));
  }
  study.dt = dt;

  const CollisionOperator hard_op(Kernel::hard_sphere(), cfg);
  const TimeSeries hard = integrate_flow(f_in, hard_op, dt, cfg.t_end);
  study.hard_mass_drift = hard.mass_drift();
  study.hard_energy_drift = hard.energy_drift();
  study.hard_entropy_violations = hard.entropy_violations();

  std::optional<RadialDistribution> eq;
  std::optional<TimeSeries> eq_hard;
  if (opts.with_floor) {
    const double m = f_in.mass();
    const double temperature = f_in.energy() / (3.0 * m);
    eq = RadialDistribution::sample(
        static_cast<int>(f_in.size()), f_in.v_max(),
        [&](double r) { return maxwellian_density(r, m, temperature); }, f_in.interp());
    eq_hard = integrate_flow(*eq, hard_op, dt, cfg.t_end);
  }

  const std::size_t nk = cfg.k_weights.size();
  for (double s : s_list) {
    PairRun run = run_pair_with(f_in, s, cfg, hard, dt);
    ConvergenceEntry e;
    e.s = s;
    e.sup_scaled_error = run.sup_scaled_error;
    e.final_scaled_error = run.scaled_error.back();
    e.soft_mass_drift = run.soft.mass_drift();
    e.soft_energy_drift = run.soft.energy_drift();
    e.soft_entropy_violations = run.soft.entropy_violations();
    if (eq) {
      PairRun floor_run = run_pair_with(*eq, s, cfg, *eq_hard, dt);
      e.floor = floor_run.sup_scaled_error;
      if (opts.keep_runs) study.floor_runs.push_back(std::move(floor_run));
    } else {
      e.floor.assign(nk, std::numeric_limits<double>::quiet_NaN());
    }
    study.entries.push_back(std::move(e));
    if (opts.keep_runs) study.runs.push_back(std::move(run));
  }

  study.ratio.assign(nk, 0.0);
  study.floor_margin.assign(nk, INFINITY);
  for (std::size_t j = 0; j < nk; ++j) {
    double lo = INFINITY, hi = 0.0;
    for (const auto& e : study.entries) {
      lo = std::min(lo, e.sup_scaled_error[j]);
      hi = std::max(hi, e.sup_scaled_error[j]);
      const double margin = e.floor[j] > 0.0 ? e.sup_scaled_error[j] / e.floor[j] : INFINITY;
      study.floor_margin[j] = std::min(study.floor_margin[j], margin);
    }
    study.ratio[j] = lo > 0.0 ? hi / lo : INFINITY;
    if (!opts.with_floor) study.floor_margin[j] = std::numeric_limits<double>::quiet_NaN();
  }
  for (std::size_t i = 1; i < study.entries.size(); ++i) {
    bool grows = false;
    for (std::size_t j = 0; j < nk; ++j) {
      grows = grows || study.entries[i].sup_scaled_error[j] >
                           2.0 * study.entries[i - 1].sup_scaled_error[j];
    }
    study.growth_flags.push_back(grows ? 1 : 0);
  }
  return study;
}

InequalityCheck moment_propagation_check(const TimeSeries& series, double k) {
  InequalityCheck c;
  std::ostringstream os;
  os << series.kernel << ", k=" << k << ", " << series.times.size() << " times";
  c.name = "moment_propagation";
  c.param_grid = os.str();
  const double ref = l1k_norm(series.snapshots.front(), k);
  double worst = 0.0;
  double at = 0.0;
  for (std::size_t n = 0; n < series.snapshots.size(); ++n) {
    const double ratio = l1k_norm(series.snapshots[n], k) / ref;
    if (!(ratio <= worst)) {
      worst = ratio;
      at = series.times[n];
    }
  }
  c.worst_ratio = worst;
  c.empirical = worst;
  c.worst_point = {{"t", at}, {"k", k}};
  c.n_points = series.snapshots.size();
  c.passed = std::isfinite(worst);
  return c;
}

InequalityCheck entropy_check(const TimeSeries& series, double slack) {
  InequalityCheck c;
  c.name = "entropy_nonincreasing";
  c.param_grid = series.kernel + ", per step";
  c.slack = slack;
  const auto& d = series.diagnostics;
  c.n_points = d.size() > 0 ? d.size() - 1 : 0;
  double worst = -INFINITY;
  for (std::size_t n = 1; n < d.size(); ++n) {
    const double prev = d[n - 1].entropy;
    const double inc = (d[n].entropy - prev) / std::max(std::abs(prev), 1e-300);
    if (inc > worst) {
      worst = inc;
      c.worst_point = {{"t", d[n].t}};
    }
  }
  c.empirical = worst;
  // Ratio against the allowed relative increase.
  c.worst_ratio = d.size() > 1 ? worst / slack : 0.0;
  c.passed = d.size() <= 1 || worst <= slack;
  return c;
}

double error_equation_residual(const PairRun& run, const SolverConfig& cfg, std::size_t n) {
  const auto& soft = run.soft.snapshots;
  const auto& hard = run.hard.snapshots;
  if (n == 0 || n + 1 >= soft.size()) {
    throw DomainError("error_equation_residual: needs an interior time index");
  }
  const double s = run.s;
  const CollisionOperator soft_op(Kernel::inverse_power(s), cfg);
  const CollisionOperator hard_op(Kernel::hard_sphere(), cfg);
  const RadialDistribution F = scaled_difference(soft[n], hard[n], s);
  const RadialDistribution F_next = scaled_difference(soft[n + 1], hard[n + 1], s);
  const RadialDistribution F_prev = scaled_difference(soft[n - 1], hard[n - 1], s);
  const double span = run.soft.times[n + 1] - run.soft.times[n - 1];

  const auto a = soft_op.apply(soft[n], F).q.values();
  const auto b = soft_op.apply(F, hard[n]).q.values();
  const auto c = soft_op.apply(hard[n]).q.values();
  const auto d = hard_op.apply(hard[n]).q.values();
  std::vector<double> rhs(a.size()), defect(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    rhs[i] = a[i] + b[i] + (c[i] - d[i]) / s;
    const double dFdt = (F_next.values()[i] - F_prev.values()[i]) / span;
    defect[i] = dFdt - rhs[i];
  }
  const double scale = l1(rhs, F);
  return scale > 0.0 ? l1(defect, F) / scale : l1(defect, F);
}

}  // namespace ipk
