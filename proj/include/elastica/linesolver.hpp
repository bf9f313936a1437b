#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "elastica/types.hpp"

namespace elastica {

enum class StepRule { Fixed, Backtracking };

struct LineSolveConfig {
  double domain_radius = 4.0;
  int n = 2001;
  int max_iters = 5000;
  double grad_tol = 1e-10;
  StepRule step_rule = StepRule::Backtracking;
  double fixed_step = 1.0;
  double support_tol = 1e-12;
  std::uint64_t seed = 0;
  bool randomized = false;
  // Optional starting values on the solver grid (size n); empty selects the
  // parabola start, or its randomized perturbation when `randomized` is set.
  Eigen::VectorXd initial;

  void validate() const;
};

struct SolveReport {
  GridFunction minimizer;
  double objective = 0.0;
  double length_constraint_residual = 0.0;
  double positivity_violation = 0.0;
  int iterations = 0;
  bool converged = false;
  double grad_norm = 0.0;
  double multiplier = 0.0;
  double support_half_width = 0.0;
  std::string message;
};

// Discrete functionals used inside the solver: energy h * sum((D2 phi)^2) over
// interior nodes and length h * sum(((phi_{i+1} - phi_i)/h)^2 / 2 - phi_i).
struct DiscreteLine {
  int n;
  double h;
  double energy(const Eigen::VectorXd& phi) const;
  double length(const Eigen::VectorXd& phi) const;
  Eigen::VectorXd energy_gradient(const Eigen::VectorXd& phi) const;
  Eigen::VectorXd length_gradient(const Eigen::VectorXd& phi) const;
  double quotient(const Eigen::VectorXd& phi) const;
  Eigen::VectorXd quotient_gradient(const Eigen::VectorXd& phi) const;
};

Eigen::VectorXd default_line_initial(const Eigen::VectorXd& x);

SolveReport minimize_theta(const LineSolveConfig& cfg);
SolveReport minimize_theta_alpha(double alpha, const LineSolveConfig& cfg);

// Fixed support [-r, r]: minimise E with L = 1, phi >= 0, clamped ends.
SolveReport minimize_on_interval(double r, const LineSolveConfig& cfg,
                                 const Eigen::VectorXd* warm = nullptr);

struct VariationalDiagnostics {
  double energy = 0.0;
  double positive_set_measure = 0.0;
  double margin_measure = 0.0;  // E - |I+|
  double margin_slope = 0.0;    // min over x of 3 E phi - |phi'|^3
  double margin_length = 0.0;   // min over x of E^2/6 - (phi'^2/2 - phi)
};

VariationalDiagnostics variational_diagnostics(const GridFunction& phi);

}  // namespace elastica
