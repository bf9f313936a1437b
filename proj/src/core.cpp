#include "elastica/core.hpp"

#include <cmath>
#include <numbers>

namespace elastica {

namespace {

double variation_proxy(const Eigen::VectorXd& f, double h) {
  double tv = 0.0;
  for (Eigen::Index i = 0; i + 1 < f.size(); ++i) tv += std::abs(f(i + 1) - f(i));
  return h * h * tv;
}

}  // namespace

Eigen::VectorXd grid_d1(const GridFunction& phi) {
  phi.validate();
  const int n = phi.n();
  const double h = phi.h();
  const auto& v = phi.values;
  Eigen::VectorXd d(n);
  d(0) = (-3.0 * v(0) + 4.0 * v(1) - v(2)) / (2.0 * h);
  d(n - 1) = (3.0 * v(n - 1) - 4.0 * v(n - 2) + v(n - 3)) / (2.0 * h);
  for (int i = 1; i < n - 1; ++i) d(i) = (v(i + 1) - v(i - 1)) / (2.0 * h);
  return d;
}

Eigen::VectorXd grid_d2(const GridFunction& phi) {
  phi.validate();
  const int n = phi.n();
  const double h2 = phi.h() * phi.h();
  const auto& v = phi.values;
  Eigen::VectorXd d(n);
  d(0) = (2.0 * v(0) - 5.0 * v(1) + 4.0 * v(2) - v(3)) / h2;
  d(n - 1) = (2.0 * v(n - 1) - 5.0 * v(n - 2) + 4.0 * v(n - 3) - v(n - 4)) / h2;
  for (int i = 1; i < n - 1; ++i) d(i) = (v(i + 1) - 2.0 * v(i) + v(i - 1)) / h2;
  return d;
}

double trapezoid(const Eigen::VectorXd& f, double h) {
  if (f.size() < 2) return 0.0;
  return h * (f.sum() - 0.5 * (f(0) + f(f.size() - 1)));
}

ScalarFunctionalValue line_length_value(const GridFunction& phi) {
  const Eigen::VectorXd d = grid_d1(phi);
  const Eigen::VectorXd f = 0.5 * d.array().square() - phi.values.array();
  return {trapezoid(f, phi.h()), variation_proxy(f, phi.h())};
}

ScalarFunctionalValue line_energy_value(const GridFunction& phi) {
  const Eigen::VectorXd f = grid_d2(phi).array().square();
  return {trapezoid(f, phi.h()), variation_proxy(f, phi.h())};
}

double line_length(const GridFunction& phi) { return line_length_value(phi).value; }

double line_energy(const GridFunction& phi) { return line_energy_value(phi).value; }

double support_measure(const GridFunction& phi, double support_tol) {
  phi.validate();
  return phi.h() * static_cast<double>((phi.values.array() > support_tol).count());
}

double line_energy_alpha(const GridFunction& phi, double alpha, double support_tol) {
  if (alpha < 0.0) throw InvalidInput("alpha must be nonnegative");
  if (!(support_tol > 0.0)) throw InvalidInput("support_tol must be positive");
  const double e = line_energy(phi);
  if (alpha == 0.0) return e;
  return e + alpha * support_measure(phi, support_tol);
}

GridFunction rescale_profile(const GridFunction& phi, double rho) {
  phi.validate();
  if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidInput("rescale factor must be positive");
  if (rho == 1.0) return phi;
  const double sx = std::cbrt(rho);
  const double sv = sx * sx;
  GridFunction out(sx * phi.lo, sx * phi.hi, sv * phi.values, phi.nonneg);
  return out;
}

Eigen::VectorXd periodic_d1(const Eigen::VectorXd& v, double h) {
  const Eigen::Index n = v.size();
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i)
    d(i) = (v((i + 1) % n) - v((i + n - 1) % n)) / (2.0 * h);
  return d;
}

Eigen::VectorXd periodic_d2(const Eigen::VectorXd& v, double h) {
  const Eigen::Index n = v.size();
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i)
    d(i) = (v((i + 1) % n) - 2.0 * v(i) + v((i + n - 1) % n)) / (h * h);
  return d;
}

double radial_length(const PeriodicProfile& phi) {
  phi.validate();
  const double h = phi.h();
  const Eigen::VectorXd p = periodic_d1(phi.values, h);
  const Eigen::ArrayXd R = 1.0 - phi.values.array();
  return h * (R.square() + p.array().square()).sqrt().sum();
}

double bending_density(const Eigen::Ref<const Eigen::VectorXd>& d1,
                       const Eigen::Ref<const Eigen::VectorXd>& d2) {
  const double s2 = d1.squaredNorm();
  if (!(s2 > 0.0)) throw InvalidInput("curve has a zero-speed node");
  const double t = d2.dot(d1);
  const double num = std::max(0.0, d2.squaredNorm() * s2 - t * t);
  return num / (s2 * s2 * std::sqrt(s2));
}

double radial_energy(const PeriodicProfile& phi) {
  phi.validate();
  const int n = phi.n();
  const double h = phi.h();
  const Eigen::VectorXd p = periodic_d1(phi.values, h);
  const Eigen::VectorXd q = periodic_d2(phi.values, h);
  double w = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = i * h;
    const double c = std::cos(s), sn = std::sin(s);
    const double R = 1.0 - phi.values(i);
    // gamma' = -p e_r + R e_t,  gamma'' = -(q + R) e_r - 2 p e_t
    Eigen::Vector2d er(c, sn), et(-sn, c);
    Eigen::Vector2d g1 = -p(i) * er + R * et;
    Eigen::Vector2d g2 = -(q(i) + R) * er - 2.0 * p(i) * et;
    w += bending_density(g1, g2);
  }
  return h * w;
}

SampledCurve radial_curve(const PeriodicProfile& phi) {
  phi.validate();
  SampledCurve c;
  c.dim = 2;
  c.periodic = true;
  c.points.resize(phi.n(), 2);
  for (int i = 0; i < phi.n(); ++i) {
    const double s = phi.s(i);
    c.points(i, 0) = (1.0 - phi.values(i)) * std::cos(s);
    c.points(i, 1) = (1.0 - phi.values(i)) * std::sin(s);
  }
  return c;
}

Eigen::VectorXd radial_curvature(const PeriodicProfile& phi) {
  phi.validate();
  const double h = phi.h();
  const Eigen::VectorXd p = periodic_d1(phi.values, h);
  const Eigen::VectorXd q = periodic_d2(phi.values, h);
  Eigen::VectorXd k(phi.n());
  for (int i = 0; i < phi.n(); ++i) {
    const double R = 1.0 - phi.values(i);
    k(i) = (R * R + 2.0 * p(i) * p(i) + R * q(i)) / std::pow(R * R + p(i) * p(i), 1.5);
  }
  return k;
}

std::pair<double, double> curve_length_energy(const SampledCurve& gamma) {
  gamma.validate();
  const int n = gamma.n();
  const int dim = gamma.dim;
  const Eigen::MatrixXd& P = gamma.points;
  Eigen::MatrixXd d1(n, dim), d2(n, dim);
  if (gamma.periodic) {
    auto at = [&](int i) { return P.row(((i % n) + n) % n); };
    for (int i = 0; i < n; ++i) {
      d1.row(i) = (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / 12.0;
      d2.row(i) =
          (-at(i + 2) + 16.0 * at(i + 1) - 30.0 * at(i) + 16.0 * at(i - 1) - at(i - 2)) / 12.0;
    }
  } else {
    for (int i = 1; i < n - 1; ++i) {
      d1.row(i) = 0.5 * (P.row(i + 1) - P.row(i - 1));
      d2.row(i) = P.row(i + 1) - 2.0 * P.row(i) + P.row(i - 1);
    }
    d1.row(0) = 0.5 * (-3.0 * P.row(0) + 4.0 * P.row(1) - P.row(2));
    d1.row(n - 1) = 0.5 * (3.0 * P.row(n - 1) - 4.0 * P.row(n - 2) + P.row(n - 3));
    d2.row(0) = 2.0 * P.row(0) - 5.0 * P.row(1) + 4.0 * P.row(2) - P.row(3);
    d2.row(n - 1) = 2.0 * P.row(n - 1) - 5.0 * P.row(n - 2) + 4.0 * P.row(n - 3) - P.row(n - 4);
  }
  Eigen::VectorXd speed(n), dens(n);
  for (int i = 0; i < n; ++i) {
    speed(i) = d1.row(i).norm();
    dens(i) = bending_density(d1.row(i).transpose(), d2.row(i).transpose());
  }
  if (gamma.periodic) return {speed.sum(), dens.sum()};
  return {trapezoid(speed, 1.0), trapezoid(dens, 1.0)};
}

}  // namespace elastica
