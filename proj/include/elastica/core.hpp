#pragma once

#include <utility>

#include "elastica/types.hpp"

namespace elastica {

// First and second derivatives on a uniform open grid: second-order central
// differences inside, second-order one-sided stencils at the two endpoints.
Eigen::VectorXd grid_d1(const GridFunction& phi);
Eigen::VectorXd grid_d2(const GridFunction& phi);
double trapezoid(const Eigen::VectorXd& f, double h);

ScalarFunctionalValue line_length_value(const GridFunction& phi);
ScalarFunctionalValue line_energy_value(const GridFunction& phi);

double line_length(const GridFunction& phi);
double line_energy(const GridFunction& phi);
double line_energy_alpha(const GridFunction& phi, double alpha, double support_tol);
double support_measure(const GridFunction& phi, double support_tol);

GridFunction rescale_profile(const GridFunction& phi, double rho);

// Periodic second-order central differences on [0, 2pi).
Eigen::VectorXd periodic_d1(const Eigen::VectorXd& v, double h);
Eigen::VectorXd periodic_d2(const Eigen::VectorXd& v, double h);

double radial_length(const PeriodicProfile& phi);
double radial_energy(const PeriodicProfile& phi);

// Points (1 - phi)(cos s, sin s) of the radial graph.
SampledCurve radial_curve(const PeriodicProfile& phi);

// Curvature of gamma[phi] at every node (signed, positive for the unit circle).
Eigen::VectorXd radial_curvature(const PeriodicProfile& phi);

// Bending density (|g''|^2 - <g'', g'/|g'|>^2) / |g'|^3 for arbitrary dimension.
double bending_density(const Eigen::Ref<const Eigen::VectorXd>& d1,
                       const Eigen::Ref<const Eigen::VectorXd>& d2);

// Returns (length, energy).
std::pair<double, double> curve_length_energy(const SampledCurve& gamma);

}  // namespace elastica
