#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "elastica/buckling.hpp"
#include "elastica/closedform.hpp"
#include "elastica/core.hpp"
#include "elastica/disksolver.hpp"
#include "elastica/linesolver.hpp"

namespace py = pybind11;
using namespace elastica;

PYBIND11_MODULE(_elastica, m) {
  m.doc() = "Confined elastica: closed form, line and disk solvers, constructions and buckling thresholds";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);

  py::class_<GridFunction>(m, "GridFunction")
      .def(py::init<double, double, Eigen::VectorXd, bool>(), py::arg("lo"), py::arg("hi"), py::arg("values"),
           py::arg("nonneg") = false)
      .def_readwrite("lo", &GridFunction::lo)
      .def_readwrite("hi", &GridFunction::hi)
      .def_readwrite("values", &GridFunction::values)
      .def_readwrite("nonneg", &GridFunction::nonneg)
      .def_property_readonly("n", &GridFunction::n)
      .def_property_readonly("h", &GridFunction::h)
      .def("nodes", &GridFunction::nodes);

  py::class_<PeriodicProfile>(m, "PeriodicProfile")
      .def(py::init<Eigen::VectorXd>(), py::arg("values"))
      .def_readwrite("values", &PeriodicProfile::values)
      .def_property_readonly("n", &PeriodicProfile::n);

  py::class_<SampledCurve>(m, "SampledCurve")
      .def(py::init([](const Eigen::MatrixXd& points, bool periodic) {
             SampledCurve c;
             c.dim = static_cast<int>(points.cols());
             c.points = points;
             c.periodic = periodic;
             c.validate();
             return c;
           }),
           py::arg("points"), py::arg("periodic") = true)
      .def_readonly("dim", &SampledCurve::dim)
      .def_readonly("points", &SampledCurve::points)
      .def_readonly("periodic", &SampledCurve::periodic);

  py::class_<ClosedFormParams>(m, "ClosedFormParams")
      .def_readonly("rho", &ClosedFormParams::rho)
      .def_readonly("r", &ClosedFormParams::r)
      .def_readonly("mu", &ClosedFormParams::mu)
      .def_readonly("alpha", &ClosedFormParams::alpha)
      .def_readonly("a", &ClosedFormParams::a)
      .def_readonly("theta", &ClosedFormParams::theta);

  py::enum_<BranchSign>(m, "BranchSign")
      .value("Trigonometric", BranchSign::Trigonometric)
      .value("Hyperbolic", BranchSign::Hyperbolic);

  m.def("line_length", &line_length);
  m.def("line_energy", &line_energy);
  m.def("line_energy_alpha", &line_energy_alpha, py::arg("phi"), py::arg("alpha"), py::arg("support_tol") = 1e-12);
  m.def("rescale_profile", &rescale_profile);
  m.def("radial_length", &radial_length);
  m.def("radial_energy", &radial_energy);
  m.def("radial_curve", &radial_curve);
  m.def("radial_curvature", &radial_curvature);
  m.def("curve_length_energy", &curve_length_energy);

  m.def("solve_tan_fixed_point", &solve_tan_fixed_point);
  m.def("params", &params, py::return_value_policy::reference);
  m.def("eval_minimizer", &eval_minimizer, py::arg("x"), py::arg("order") = 0);
  m.def("sample_minimizer", &sample_minimizer, py::arg("lo"), py::arg("hi"), py::arg("n"));
  m.def("branch_length_energy", &branch_length_energy);
  m.def("el_residual", &el_residual, py::arg("phi"), py::arg("theta"), py::arg("support_tol") = 1e-12);

  py::class_<LineSolveConfig>(m, "LineSolveConfig")
      .def(py::init<>())
      .def_readwrite("domain_radius", &LineSolveConfig::domain_radius)
      .def_readwrite("n", &LineSolveConfig::n)
      .def_readwrite("max_iters", &LineSolveConfig::max_iters)
      .def_readwrite("grad_tol", &LineSolveConfig::grad_tol)
      .def_readwrite("seed", &LineSolveConfig::seed)
      .def_readwrite("randomized", &LineSolveConfig::randomized)
      .def_readwrite("initial", &LineSolveConfig::initial);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("minimizer", &SolveReport::minimizer)
      .def_readonly("objective", &SolveReport::objective)
      .def_readonly("length_constraint_residual", &SolveReport::length_constraint_residual)
      .def_readonly("positivity_violation", &SolveReport::positivity_violation)
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("converged", &SolveReport::converged)
      .def_readonly("support_half_width", &SolveReport::support_half_width)
      .def_readonly("message", &SolveReport::message);

  m.def("minimize_theta", &minimize_theta, py::arg("cfg") = LineSolveConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("minimize_theta_alpha", &minimize_theta_alpha, py::arg("alpha"), py::arg("cfg") = LineSolveConfig{},
        py::call_guard<py::gil_scoped_release>());

  py::class_<DiskSolveConfig>(m, "DiskSolveConfig")
      .def(py::init<>())
      .def_readwrite("n", &DiskSolveConfig::n)
      .def_readwrite("delta", &DiskSolveConfig::delta)
      .def_readwrite("tol_length", &DiskSolveConfig::tol_length)
      .def_readwrite("symmetrize", &DiskSolveConfig::symmetrize);

  py::class_<DiskSolveReport>(m, "DiskSolveReport")
      .def_readonly("profile", &DiskSolveReport::profile)
      .def_readonly("w", &DiskSolveReport::w)
      .def_readonly("length_residual", &DiskSolveReport::length_residual)
      .def_readonly("iterations", &DiskSolveReport::iterations)
      .def_readonly("converged", &DiskSolveReport::converged);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("delta", &SweepRow::delta)
      .def_readonly("w_min", &SweepRow::w_min)
      .def_readonly("excess", &SweepRow::excess)
      .def_readonly("ratio", &SweepRow::ratio)
      .def_readonly("iterations", &SweepRow::iterations)
      .def_readonly("length_residual", &SweepRow::length_residual);

  py::class_<SweepFit>(m, "SweepFit")
      .def_readonly("exponent", &SweepFit::exponent)
      .def_readonly("prefactor", &SweepFit::prefactor);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("rows", &SweepResult::rows)
      .def_readonly("fit", &SweepResult::fit);

  py::class_<SpiralResult>(m, "SpiralResult")
      .def_readonly("curve", &SpiralResult::curve)
      .def_readonly("length", &SpiralResult::length)
      .def_readonly("energy", &SpiralResult::energy)
      .def_readonly("windings", &SpiralResult::windings);

  m.def("minimize_disk", py::overload_cast<const DiskSolveConfig&>(&minimize_disk), py::arg("cfg"),
        py::call_guard<py::gil_scoped_release>());
  m.def("scaling_sweep", &scaling_sweep, py::arg("deltas"), py::arg("cfg") = DiskSolveConfig{}, py::arg("jobs") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("helix_construction", &helix_construction, py::arg("eta"), py::arg("m") = 3, py::arg("n") = 2048);
  m.def("spiral_construction", &spiral_construction, py::arg("length"), py::arg("c") = 2.0,
        py::arg("spacing") = 0.005);

  py::enum_<Regime>(m, "Regime")
      .value("Compress", Regime::Compress)
      .value("Buckle", Regime::Buckle)
      .value("BoundaryBand", Regime::BoundaryBand);

  py::class_<BucklingInput>(m, "BucklingInput")
      .def(py::init<>())
      .def_readwrite("chi_H", &BucklingInput::chi_H)
      .def_readwrite("c_stretch", &BucklingInput::c_stretch)
      .def_readwrite("r_o", &BucklingInput::r_o)
      .def_readwrite("h", &BucklingInput::h)
      .def_readwrite("alpha_adh", &BucklingInput::alpha_adh)
      .def_readwrite("delta", &BucklingInput::delta);

  py::class_<BucklingOutcome>(m, "BucklingOutcome")
      .def_readonly("regime", &BucklingOutcome::regime)
      .def_readonly("lambda_", &BucklingOutcome::lambda)
      .def_readonly("s_star", &BucklingOutcome::s_star)
      .def_readonly("t_star", &BucklingOutcome::t_star)
      .def_readonly("delta_crit", &BucklingOutcome::delta_crit);

  m.def("e_lambda_min", &e_lambda_min);
  m.def("lambda_critical", &lambda_critical);
  m.def("outer_radius", &outer_radius);
  m.def("delta_crit", &delta_crit);
  m.def("decide", &decide);
}
