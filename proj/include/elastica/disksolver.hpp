#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "elastica/types.hpp"

namespace elastica {

struct DiskSolveConfig {
  int n = 2048;
  double delta = 1e-3;
  // Multiples of the natural penalty scale (W0 - 2pi)/delta^2 of the start.
  std::vector<double> penalty_weight_schedule{20.0, 200.0, 2000.0};
  int max_outer = 30;
  int max_inner = 500;
  double tol_length = 1e-8;
  bool symmetrize = true;

  void validate() const;
};

struct DiskSolveReport {
  PeriodicProfile profile;
  double w = 0.0;
  double length_residual = 0.0;
  double positivity_violation = 0.0;
  double multiplier = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

struct SweepRow {
  double delta = 0.0;
  double w_min = 0.0;
  double excess = 0.0;
  double ratio = 0.0;
  int iterations = 0;
  double length_residual = 0.0;
};

struct SweepFit {
  double exponent = 0.0;
  double prefactor = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepFit fit;
};

// Discrete radial functionals used by the solver (second-order periodic
// differences), with exact gradients and banded Hessians.
struct DiskDiscretization {
  int n;
  double h;
  explicit DiskDiscretization(int n_);
  double energy(const Eigen::VectorXd& phi) const;
  double length(const Eigen::VectorXd& phi) const;
  Eigen::VectorXd energy_gradient(const Eigen::VectorXd& phi) const;
  Eigen::VectorXd length_gradient(const Eigen::VectorXd& phi) const;
};

DiskSolveReport minimize_disk(const DiskSolveConfig& cfg);
DiskSolveReport minimize_disk(const DiskSolveConfig& cfg, const PeriodicProfile& start);

SweepFit fit_power_law(const std::vector<double>& deltas, const std::vector<double>& excess);
SweepResult scaling_sweep(const std::vector<double>& deltas, const DiskSolveConfig& cfg,
                          int jobs = 0);

struct BumpResult {
  PeriodicProfile profile;
  double rho = 0.0;
};

// psi is evaluated on ((s - pi) rho^{-1/3}) and must vanish outside
// [-support, support].
BumpResult bump_construction(const std::function<double(double)>& psi, double support,
                             double delta, int n);
BumpResult bump_construction(const GridFunction& psi, double delta, int n);

SampledCurve helix_construction(double eta, int m, int n = 2048);

struct SpiralResult {
  SampledCurve curve;
  Eigen::VectorXd arclength;
  double length = 0.0;
  double energy = 0.0;
  double windings = 0.0;
  double rho_outer = 0.0;
};

SpiralResult spiral_construction(double length, double c, double spacing = 0.005);

// True when no two non-adjacent segments of the closed polyline intersect.
bool polyline_embedded(const SampledCurve& gamma);

}  // namespace elastica
