#include "elastica/closedform.hpp"

#include <cmath>
#include <numbers>

namespace elastica {

namespace {

double tan_residual(double rho) { return std::sin(rho) - rho * std::cos(rho); }

ClosedFormParams compute_params() {
  ClosedFormParams p;
  p.rho = solve_tan_fixed_point();
  const double rho2 = p.rho * p.rho;
  p.r = std::cbrt(6.0);
  p.mu = p.rho / p.r;
  p.alpha = p.r * p.r * std::sqrt(1.0 + rho2) / rho2;
  p.a = (0.5 + 1.0 / rho2) * p.r * p.r;
  p.theta = p.r * rho2;
  return p;
}

}  // namespace

double solve_tan_fixed_point() {
  double lo = std::numbers::pi, hi = 1.5 * std::numbers::pi;
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if (tan_residual(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double rho = 0.5 * (lo + hi);
  for (int k = 0; k < 20; ++k) {
    const double step = tan_residual(rho) / (rho * std::sin(rho));
    rho -= step;
    if (std::abs(step) < 1e-16 * rho) break;
  }
  return rho;
}

const ClosedFormParams& params() {
  static const ClosedFormParams p = compute_params();
  return p;
}

double eval_minimizer(double x, int order) {
  if (order < 0 || order > 3) throw InvalidInput("derivative order must be in 0..3");
  const auto& p = params();
  if (std::abs(x) >= p.r) return 0.0;
  const double c = std::cos(p.mu * x), s = std::sin(p.mu * x);
  switch (order) {
    case 0:
      return p.a - 0.5 * x * x + p.alpha * c;
    case 1:
      return -x - p.alpha * p.mu * s;
    case 2:
      return -1.0 - p.alpha * p.mu * p.mu * c;
    default:
      return p.alpha * p.mu * p.mu * p.mu * s;
  }
}

double minimizer_third_derivative_inner() {
  const auto& p = params();
  return p.alpha * p.mu * p.mu * p.mu * std::sin(p.rho);
}

GridFunction sample_minimizer(double lo, double hi, int n) {
  if (n < 5 || !(hi > lo)) throw InvalidInput("invalid sampling grid");
  const auto& p = params();
  long double rho = p.rho;
  for (int k = 0; k < 3; ++k) rho -= (std::sin(rho) - rho * std::cos(rho)) / (rho * std::sin(rho));
  const long double r = std::cbrt(6.0L), mu = rho / r;
  const long double alpha = r * r * std::sqrt(1.0L + rho * rho) / (rho * rho);
  const long double a = (0.5L + 1.0L / (rho * rho)) * r * r;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    const long double x = lo + (static_cast<long double>(hi) - lo) * i / (n - 1);
    v(i) = std::abs(x) < r ? static_cast<double>(a - 0.5L * x * x + alpha * std::cos(mu * x)) : 0.0;
  }
  return GridFunction(lo, hi, v, true);
}

std::pair<double, double> branch_length_energy(double rho, double r, BranchSign branch) {
  if (!(rho > 0.0) || !(r > 0.0)) throw InvalidInput("rho and r must be positive");
  const double r3 = r * r * r;
  if (branch == BranchSign::Trigonometric) {
    const double s = std::sin(rho), c = std::cos(rho);
    if (std::abs(s) < 1e-14) throw InvalidInput("rho is a multiple of pi (formula pole)");
    const double E = (rho * rho / (s * s) + rho * c / s - 2.0) * r;
    const double L = (-1.0 / 3.0 + (1.0 / (2.0 * s)) * (1.0 / s - c / rho)) * r3;
    return {L, E};
  }
  const double s = std::sinh(rho), c = std::cosh(rho);
  const double E = (rho * rho / (s * s) + rho * c / s - 2.0) * r;
  const double L = (-1.0 / 3.0 + (1.0 / (2.0 * s)) * (c / rho - 1.0 / s)) * r3;
  return {L, E};
}

double branch_center_value(double rho, double r, BranchSign branch) {
  if (!(rho > 0.0) || !(r > 0.0)) throw InvalidInput("rho and r must be positive");
  // a + alpha = r^2 (1/2 -+ tan(h)(rho/2)/rho)
  if (branch == BranchSign::Trigonometric) {
    if (std::abs(std::sin(rho)) < 1e-14) throw InvalidInput("rho is a multiple of pi");
    return r * r * (0.5 - std::tan(0.5 * rho) / rho);
  }
  return r * r * (0.5 - std::tanh(0.5 * rho) / rho);
}

double el_residual(const GridFunction& phi, double theta, double support_tol) {
  phi.validate();
  const int n = phi.n();
  const double h = phi.h();
  const double h2 = h * h, h4 = h2 * h2;
  const auto& v = phi.values;
  constexpr int collar = 3;
  double worst = 0.0;
  for (int i = collar; i < n - collar; ++i) {
    bool inside = true;
    for (int j = i - collar; j <= i + collar && inside; ++j) inside = v(j) > support_tol;
    if (!inside) continue;
    const double d4 = (v(i + 2) - 4.0 * v(i + 1) + 6.0 * v(i) - 4.0 * v(i - 1) + v(i - 2)) / h4;
    const double d2 = (v(i + 1) - 2.0 * v(i) + v(i - 1)) / h2;
    worst = std::max(worst, std::abs(d4 + theta / 6.0 * (d2 + 1.0)));
  }
  return worst;
}

}  // namespace elastica
