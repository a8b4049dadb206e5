// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#include "ipk/bounds.hpp"
#include "ipk/collision.hpp"
#include "ipk/errors.hpp"
#include "ipk/io.hpp"
#include "ipk/kernel.hpp"
#include "ipk/radial.hpp"
#include "ipk/solver.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ipk;

PYBIND11_MODULE(_ipk, m) {
  m.doc() = "Inverse-power Boltzmann kernel, inequality checks and isotropic solver";

  auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);
  py::register_exception<InversionError>(m, "InversionError", PyExc_ArithmeticError);
  py::register_exception<InstabilityError>(m, "InstabilityError", PyExc_ArithmeticError);
  (void)domain_error;

  // Kernel.
  m.def("scattering_radicand", &scattering_radicand, py::arg("s"), py::arg("y"), py::arg("z"));
  m.def("impact_angle", &impact_angle, py::arg("s"), py::arg("y"),
        py::arg("tol") = kDefaultQuadTol);
  m.def("impact_angle_slope", &impact_angle_slope, py::arg("s"), py::arg("y"),
        py::arg("tol") = kDefaultQuadTol);
  m.def("impact_factor", &impact_factor, py::arg("s"), py::arg("y"));
  m.def("impact_factor_slope", &impact_factor_slope, py::arg("s"), py::arg("y"));
  m.def("wallis", &wallis, py::arg("n"));
  m.def("grazing_constant", &grazing_constant, py::arg("s"));

  py::class_<ImplicitMapTable::Node>(m, "TableNode")
      .def_readonly("y", &ImplicitMapTable::Node::y)
      .def_readonly("one_minus_y", &ImplicitMapTable::Node::one_minus_y)
      .def_readonly("phi", &ImplicitMapTable::Node::phi)
      .def_readonly("complement", &ImplicitMapTable::Node::complement)
      .def_readonly("dphi", &ImplicitMapTable::Node::dphi);

  py::class_<ImplicitMapTable>(m, "ImplicitMapTable")
      .def_property_readonly("s", &ImplicitMapTable::s)
      .def_property_readonly("tol", &ImplicitMapTable::tol)
      .def_property_readonly("nodes", &ImplicitMapTable::nodes);
  m.def("build_map_table", &build_map_table, py::arg("s"),
        py::arg("n_nodes") = kDefaultTableNodes, py::arg("tol") = kDefaultQuadTol,
        py::arg("inversion_tol") = kDefaultInversionTol);
  m.def("impact_parameter", &impact_parameter, py::arg("table"), py::arg("phi"));
  m.def("impact_parameter_slope", &impact_parameter_slope, py::arg("table"), py::arg("phi"));

  py::class_<KernelValue>(m, "KernelValue")
      .def_readonly("theta", &KernelValue::theta)
      .def_readonly("phi", &KernelValue::phi)
      .def_readonly("y", &KernelValue::y)
      .def_readonly("one_minus_y", &KernelValue::one_minus_y)
      .def_readonly("slope", &KernelValue::slope)
      .def_readonly("value", &KernelValue::value)
      .def_readonly("quad_err", &KernelValue::quad_err);
  m.def("angular_kernel", &angular_kernel, py::arg("table"), py::arg("theta"));
  m.def("symmetrized_kernel", &symmetrized_kernel, py::arg("table"), py::arg("theta"));

  // Inequality checks.
  py::class_<InequalityCheck>(m, "InequalityCheck")
      .def_readonly("name", &InequalityCheck::name)
      .def_readonly("param_grid", &InequalityCheck::param_grid)
      .def_readonly("worst_ratio", &InequalityCheck::worst_ratio)
      .def_readonly("worst_point", &InequalityCheck::worst_point)
      .def_readonly("slack", &InequalityCheck::slack)
      .def_readonly("passed", &InequalityCheck::passed)
      .def_readonly("n_points", &InequalityCheck::n_points)
      .def_readonly("empirical", &InequalityCheck::empirical)
      .def("__repr__", [](const InequalityCheck& c) {
        return "<InequalityCheck " + c.name + (c.passed ? " passed" : " FAILED") + ">";
      });

  py::class_<BoundGrids>(m, "BoundGrids")
      .def(py::init<>())
      .def_readwrite("s_values", &BoundGrids::s_values)
      .def_readwrite("n_theta", &BoundGrids::n_theta)
      .def_readwrite("theta_min", &BoundGrids::theta_min)
      .def_readwrite("table_nodes", &BoundGrids::table_nodes)
      .def_readwrite("quad_tol", &BoundGrids::quad_tol)
      .def_readwrite("slack", &BoundGrids::slack)
      .def_readwrite("y_max", &BoundGrids::y_max)
      .def("theta_grid", &BoundGrids::theta_grid)
      .def("refined", &BoundGrids::refined);
  m.def("run_bound_suite", &run_bound_suite, py::arg("grids") = BoundGrids{},
        py::call_guard<py::gil_scoped_release>());
  m.def("theta_integral_uniform_bound", &theta_integral_uniform_bound);

  // Radial densities.
  py::enum_<Interp>(m, "Interp")
      .value("LINEAR", Interp::kLinear)
      .value("MONOTONE_CUBIC", Interp::kMonotoneCubic)
      .value("BAND_LIMITED", Interp::kBandLimited);

  py::class_<RadialDistribution>(m, "RadialDistribution")
      .def(py::init<std::vector<double>, std::vector<double>, Interp, double>(),
           py::arg("r_nodes"), py::arg("values"), py::arg("interp"), py::arg("v_max"))
      .def_property_readonly("r_nodes", &RadialDistribution::r_nodes)
      .def_property_readonly("values", &RadialDistribution::values)
      .def_property_readonly("interp", &RadialDistribution::interp)
      .def_property_readonly("v_max", &RadialDistribution::v_max)
      .def("__call__", &RadialDistribution::operator(), py::arg("r"))
      .def("__len__", &RadialDistribution::size)
      .def("with_values", &RadialDistribution::with_values, py::arg("values"))
      .def("mass", &RadialDistribution::mass)
      .def("energy", &RadialDistribution::energy)
      .def("min_value", &RadialDistribution::min_value);

  m.def("maxwellian", &maxwellian, py::arg("n"), py::arg("v_max"), py::arg("mass") = 1.0,
        py::arg("temperature") = 1.0, py::arg("interp") = Interp::kBandLimited);
  m.def("bimodal", &bimodal, py::arg("n"), py::arg("v_max"), py::arg("mass") = 1.0,
        py::arg("t_low") = 0.5, py::arg("t_high") = 1.5, py::arg("interp") = Interp::kBandLimited);
  m.def("bump", &bump, py::arg("n"), py::arg("v_max"), py::arg("center") = 1.5,
        py::arg("width") = 1.0, py::arg("mass") = 1.0, py::arg("interp") = Interp::kBandLimited);
  m.def("l1k_norm", &l1k_norm, py::arg("f"), py::arg("k"));
  m.def("w11k_seminorm", &w11k_seminorm, py::arg("f"), py::arg("k"));
  m.def("w11k_norm", &w11k_norm, py::arg("f"), py::arg("k"));
  m.def("entropy", &entropy, py::arg("f"));
  m.def("llogl", &llogl, py::arg("f"));

  // Collision operator.
  py::class_<CollisionGeometry>(m, "CollisionGeometry")
      .def(py::init([](double v, double vs, double beta, double theta, double phi) {
             return CollisionGeometry{v, vs, beta, theta, phi};
           }),
           py::arg("v_speed"), py::arg("vstar_speed"), py::arg("beta"), py::arg("theta"),
           py::arg("phi_az"));
  m.def(
      "post_collision_speeds",
      [](const CollisionGeometry& g) {
        const PostCollisionSpeeds p = post_collision_speeds(g);
        return py::make_tuple(p.v_prime, p.vstar_prime);
      },
      py::arg("geom"));

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("n_r", &SolverConfig::n_r)
      .def_readwrite("v_max", &SolverConfig::v_max)
      .def_property(
          "n_quad",
          [](const SolverConfig& c) {
            return py::make_tuple(c.n_quad.n_rstar, c.n_quad.n_beta, c.n_quad.n_theta,
                                  c.n_quad.n_phi);
          },
          [](SolverConfig& c, std::tuple<int, int, int, int> q) {
            c.n_quad = {std::get<0>(q), std::get<1>(q), std::get<2>(q), std::get<3>(q)};
          })
      .def_readwrite("theta_cut", &SolverConfig::theta_cut)
      .def_readwrite("dt", &SolverConfig::dt)
      .def_readwrite("t_end", &SolverConfig::t_end)
      .def_readwrite("k_weights", &SolverConfig::k_weights)
      .def_readwrite("interp", &SolverConfig::interp)
      .def_readwrite("cutoff_tol", &SolverConfig::cutoff_tol)
      .def("validate", &SolverConfig::validate);

  py::class_<Kernel>(m, "Kernel")
      .def_static("hard_sphere", &Kernel::hard_sphere)
      .def_static("inverse_power", &Kernel::inverse_power, py::arg("s"))
      .def_property_readonly("s", &Kernel::s)
      .def_property_readonly("gamma", &Kernel::gamma)
      .def("__repr__", &Kernel::label);

  m.def("eval_Q", &eval_Q, py::arg("f"), py::arg("kernel"), py::arg("cfg") = SolverConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("loss_frequency", &loss_frequency, py::arg("f"), py::arg("gamma"), py::arg("r"));
  m.def("povzner_sample_check",
        [](double k, std::int64_t n, std::uint64_t seed, double max_speed) {
          CheckPair p;
          {
            py::gil_scoped_release release;
            p = povzner_sample_check(k, n, seed, max_speed);
          }
          return py::make_tuple(p.first, p.second);
        },
        py::arg("k"), py::arg("n_samples"), py::arg("seed") = 0, py::arg("max_speed") = 10.0);

  // Solver.
  py::class_<Diagnostics>(m, "Diagnostics")
      .def_readonly("t", &Diagnostics::t)
      .def_readonly("mass", &Diagnostics::mass)
      .def_readonly("energy", &Diagnostics::energy)
      .def_readonly("entropy", &Diagnostics::entropy)
      .def_readonly("min_f", &Diagnostics::min_f)
      .def_readonly("l1k", &Diagnostics::l1k);

  py::class_<TimeSeries>(m, "TimeSeries")
      .def_readonly("kernel", &TimeSeries::kernel)
      .def_readonly("times", &TimeSeries::times)
      .def_readonly("snapshots", &TimeSeries::snapshots)
      .def_readonly("diagnostics", &TimeSeries::diagnostics)
      .def("mass_drift", &TimeSeries::mass_drift)
      .def("energy_drift", &TimeSeries::energy_drift)
      .def("entropy_violations", &TimeSeries::entropy_violations, py::arg("slack") = 1e-5);

  py::class_<PairRun>(m, "PairRun")
      .def_readonly("s", &PairRun::s)
      .def_readonly("dt", &PairRun::dt)
      .def_readonly("soft", &PairRun::soft)
      .def_readonly("hard", &PairRun::hard)
      .def_readonly("scaled_error", &PairRun::scaled_error)
      .def_readonly("sup_scaled_error", &PairRun::sup_scaled_error);
  m.def("run_pair", &run_pair, py::arg("f_in"), py::arg("s"), py::arg("cfg"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<ConvergenceEntry>(m, "ConvergenceEntry")
      .def_readonly("s", &ConvergenceEntry::s)
      .def_readonly("sup_scaled_error", &ConvergenceEntry::sup_scaled_error)
      .def_readonly("final_scaled_error", &ConvergenceEntry::final_scaled_error)
      .def_readonly("floor", &ConvergenceEntry::floor);
  py::class_<ConvergenceStudy>(m, "ConvergenceStudy")
      .def_readonly("s_values", &ConvergenceStudy::s_values)
      .def_readonly("dt", &ConvergenceStudy::dt)
      .def_readonly("entries", &ConvergenceStudy::entries)
      .def_readonly("ratio", &ConvergenceStudy::ratio)
      .def_readonly("floor_margin", &ConvergenceStudy::floor_margin);
  m.def(
      "convergence_study",
      [](const RadialDistribution& f, const std::vector<double>& s_list, const SolverConfig& cfg,
         bool with_floor) {
        StudyOptions opts;
        opts.with_floor = with_floor;
        return convergence_study(f, s_list, cfg, opts);
      },
      py::arg("f_in"), py::arg("s_list"), py::arg("cfg"), py::arg("with_floor") = true,
      py::call_guard<py::gil_scoped_release>());
  m.def("moment_propagation_check", &moment_propagation_check, py::arg("series"), py::arg("k"));
  m.def("entropy_check", &entropy_check, py::arg("series"), py::arg("slack") = 1e-5);

  m.attr("__version__") = io::kToolVersion;
}
