#pragma once

#include <utility>

#include "elastica/types.hpp"

namespace elastica {

struct ClosedFormParams {
  double rho = 0.0;
  double r = 0.0;
  double mu = 0.0;
  double alpha = 0.0;
  double a = 0.0;
  double theta = 0.0;
};

enum class BranchSign { Trigonometric, Hyperbolic };

double solve_tan_fixed_point();
const ClosedFormParams& params();

double eval_minimizer(double x, int order = 0);

// One-sided third derivative of the minimiser at +r (interior limit).
double minimizer_third_derivative_inner();

// Samples the minimiser on [lo, hi] with n nodes.
GridFunction sample_minimizer(double lo, double hi, int n);

// Returns (L, E) of the (rho, r) family on the selected branch.
std::pair<double, double> branch_length_energy(double rho, double r, BranchSign branch);

// Central value phi(0) = a + alpha of the (rho, r) family.
double branch_center_value(double rho, double r, BranchSign branch);

double el_residual(const GridFunction& phi, double theta, double support_tol = 1e-12);

}  // namespace elastica
