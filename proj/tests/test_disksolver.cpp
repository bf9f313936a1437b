#include <doctest.h>

#include <cmath>
#include <numbers>

#include "elastica/closedform.hpp"
#include "elastica/core.hpp"
#include "elastica/disksolver.hpp"

using namespace elastica;

namespace {

constexpr double kPi = std::numbers::pi;

BumpResult minimiser_bump(double delta, int n) {
  return bump_construction([](double x) { return eval_minimizer(x, 0); }, params().r, delta, n);
}

// Least-squares slope of y against x^2 through the origin.
double quadratic_coefficient(const std::vector<double>& x, const std::vector<double>& y) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += x[i] * x[i] * y[i];
    den += std::pow(x[i], 4);
  }
  return num / den;
}

// Length and bending energy of the perturbed circle from analytic derivatives.
std::pair<double, double> helix_reference(double eta, int m) {
  const int n = 200000;
  const double a = std::sqrt(1.0 - eta * eta), b = eta / std::sqrt(2.0);
  double L = 0.0, W = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = 2.0 * kPi * i / n;
    const Eigen::Vector3d d1(-a * std::sin(s), a * std::cos(s), -b * m * std::sin(m * s));
    const Eigen::Vector3d d2(-a * std::cos(s), -a * std::sin(s), -b * m * m * std::cos(m * s));
    const double sp = d1.norm();
    L += sp;
    W += d1.cross(d2).squaredNorm() / std::pow(sp, 5);
  }
  return {L * 2.0 * kPi / n, W * 2.0 * kPi / n};
}

}  // namespace

TEST_CASE("disk minimiser at delta = 1e-3") {
  DiskSolveConfig cfg;
  cfg.delta = 1e-3;
  const DiskSolveReport r = minimize_disk(cfg);
  REQUIRE(r.converged);
  const double scale = params().theta * std::cbrt(cfg.delta);
  const double excess = r.w - 2.0 * kPi;
  CHECK(excess >= 0.9 * scale);
  CHECK(excess <= 1.15 * scale);
  CHECK(r.length_residual <= cfg.tol_length);
  CHECK(std::abs(radial_length(r.profile) - (2.0 * kPi + cfg.delta)) <= cfg.tol_length);
  CHECK(r.profile.values.minCoeff() >= 0.0);
  CHECK(r.positivity_violation == 0.0);
  CHECK(r.w > 4.0 * kPi * kPi / (2.0 * kPi + cfg.delta));
  CHECK(r.w == doctest::Approx(radial_energy(r.profile)));

  const BumpResult b = minimiser_bump(cfg.delta, cfg.n);
  CHECK(r.w <= 2.0 * kPi + 1.01 * (radial_energy(b.profile) - 2.0 * kPi));
  CHECK(radial_curvature(r.profile).minCoeff() < 0.0);

  const Eigen::VectorXd& v = r.profile.values;
  const double thr = 1e-8 * v.maxCoeff();
  int components = 0;
  for (int i = 0; i < v.size(); ++i)
    if (v(i) > thr && !(v((i + v.size() - 1) % v.size()) > thr)) ++components;
  MESSAGE("support components of the disk minimiser: " << components);
  MESSAGE("energy minus length: " << r.w - radial_length(r.profile));
}

TEST_CASE("warm start from the glued bump does not exceed the construction") {
  DiskSolveConfig cfg;
  cfg.delta = 1e-3;
  const BumpResult b = minimiser_bump(cfg.delta, cfg.n);
  const DiskSolveReport r = minimize_disk(cfg, b.profile);
  CHECK(r.converged);
  CHECK(r.w <= 2.0 * kPi + 1.01 * (radial_energy(b.profile) - 2.0 * kPi));
}

TEST_CASE("unsymmetrized solve agrees with the symmetric one") {
  DiskSolveConfig cfg;
  cfg.delta = 3e-3;
  cfg.n = 1024;
  const double sym = minimize_disk(cfg).w;
  cfg.symmetrize = false;
  const DiskSolveReport r = minimize_disk(cfg);
  CHECK(r.converged);
  CHECK(r.w == doctest::Approx(sym).epsilon(1e-6));
}

TEST_CASE("scaling sweep") {
  DiskSolveConfig cfg;
  const SweepResult s = scaling_sweep({1e-4, 3e-4, 1e-3, 3e-3, 1e-2}, cfg, 2);
  REQUIRE(s.rows.size() == 5);
  for (const auto& row : s.rows) {
    CHECK(row.excess > 0.0);
    CHECK(row.ratio > 0.0);
    CHECK(row.length_residual <= cfg.tol_length);
    CHECK(row.w_min >= 4.0 * kPi * kPi / (2.0 * kPi + row.delta));
  }
  CHECK(s.fit.exponent >= 0.30);
  CHECK(s.fit.exponent <= 0.37);
  CHECK(s.fit.prefactor >= 0.85 * params().theta);
  CHECK(s.fit.prefactor <= 1.15 * params().theta);
}

TEST_CASE("sweep and fit validation") {
  CHECK_THROWS_AS(scaling_sweep({1e-3}, DiskSolveConfig{}), InvalidInput);
  CHECK_THROWS_AS(scaling_sweep({1e-3, 2e-3, 0.6}, DiskSolveConfig{}), InvalidInput);
  CHECK_THROWS_AS(fit_power_law({1e-3}, {1.0}), InvalidInput);
  const SweepFit f = fit_power_law({1.0, 8.0, 27.0}, {2.0, 4.0, 6.0});
  CHECK(f.exponent == doctest::Approx(1.0 / 3.0));
  CHECK(f.prefactor == doctest::Approx(2.0));
  DiskSolveConfig bad;
  bad.delta = 0.6;
  CHECK_THROWS_AS(minimize_disk(bad), InvalidInput);
  bad.delta = 1e-3;
  bad.n = 1023;
  CHECK_THROWS_AS(minimize_disk(bad), InvalidInput);
}

TEST_CASE("bump construction") {
  const double delta = 1e-3;
  const BumpResult b = minimiser_bump(delta, 4096);
  CHECK(std::abs(radial_length(b.profile) - (2.0 * kPi + delta)) <= 1e-12);
  CHECK(std::abs(b.rho - delta) <= 10.0 * std::pow(delta, 5.0 / 3.0));
  CHECK(radial_energy(b.profile) - 2.0 * kPi ==
        doctest::Approx(params().theta * std::cbrt(delta)).epsilon(0.05));

  const BumpResult zero = minimiser_bump(0.0, 256);
  CHECK(zero.rho == 0.0);
  CHECK(zero.profile.values.cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(minimiser_bump(10.0, 256), InvalidInput);

  const BumpResult g = bump_construction(sample_minimizer(-2.0, 2.0, 4001), delta, 4096);
  CHECK(g.rho == doctest::Approx(b.rho).epsilon(1e-3));
}

TEST_CASE("perturbed circle coefficients") {
  const std::vector<double> etas{0.02, 0.04, 0.06, 0.08, 0.1};
  std::vector<double> dl, dw, dl_ref, dw_ref;
  for (double eta : etas) {
    const SampledCurve c = helix_construction(eta, 3);
    CHECK(c.points.rowwise().norm().maxCoeff() < 1.0);
    const auto [L, W] = curve_length_energy(c);
    const auto [Lr, Wr] = helix_reference(eta, 3);
    CHECK(L == doctest::Approx(Lr).epsilon(1e-9));
    CHECK(W == doctest::Approx(Wr).epsilon(1e-7));
    dl.push_back(L - 2.0 * kPi);
    dw.push_back(W - 2.0 * kPi);
  }
  // Expansion of the length: (m^2/4 - 1) pi eta^2 = 5/4 pi eta^2.
  CHECK(quadratic_coefficient(etas, dl) == doctest::Approx(1.25 * kPi).epsilon(0.02));
  // Expansion of the curvature integral: (m^4/2 + 1 - 3 m^2/4) pi eta^2 = 139/4 pi eta^2.
  CHECK(quadratic_coefficient(etas, dw) == doctest::Approx(34.75 * kPi).epsilon(0.02));
}

TEST_CASE("parametric second-derivative integral of the perturbed circle") {
  // The integral of |gamma''|^2 in the original parameter grows like (m^4/2 - 2) pi eta^2.
  std::vector<double> etas{0.02, 0.04, 0.06, 0.08, 0.1}, d;
  for (double eta : etas) {
    const SampledCurve c = helix_construction(eta, 3, 4096);
    const double h = 2.0 * kPi / c.n();
    double s = 0.0;
    for (int i = 0; i < c.n(); ++i) {
      const auto dd = (c.points.row((i + 1) % c.n()) - 2.0 * c.points.row(i) + c.points.row((i + c.n() - 1) % c.n())) /
                      (h * h);
      s += dd.squaredNorm() * h;
    }
    d.push_back(s - 2.0 * kPi);
  }
  CHECK(quadratic_coefficient(etas, d) == doctest::Approx(38.5 * kPi).epsilon(0.02));
}

TEST_CASE("perturbed circle validation") {
  CHECK_THROWS_AS(helix_construction(0.05, 2), InvalidInput);
  CHECK_THROWS_AS(helix_construction(0.0, 3), InvalidInput);
  CHECK_THROWS_AS(helix_construction(0.3, 3), InvalidInput);
  const SampledCurve c = helix_construction(0.29, 5, 512);
  CHECK(c.points.rowwise().norm().maxCoeff() < 1.0);
}

TEST_CASE("spiral construction") {
  std::vector<double> q;
  for (double L : {50.0, 100.0, 200.0, 400.0}) {
    const SpiralResult s = spiral_construction(L, 2.0);
    CAPTURE(L);
    CHECK(std::abs(s.length - L) <= 1e-3);
    CHECK(s.energy > s.length);
    CHECK(polyline_embedded(s.curve));
    CHECK(s.curve.points.rowwise().norm().maxCoeff() <= 1.0);
    CHECK(s.rho_outer == doctest::Approx(1.0 - 2.0 / std::sqrt(L)));
    q.push_back((s.energy - L) / std::sqrt(L));
  }
  CHECK(*std::max_element(q.begin(), q.end()) / *std::min_element(q.begin(), q.end()) <= 3.0);
  CHECK_THROWS_AS(spiral_construction(100.0, 0.0), InvalidInput);
  CHECK_THROWS_AS(spiral_construction(40.0, 2.0), InvalidInput);
}

TEST_CASE("embedding check") {
  SampledCurve eight;
  eight.dim = 2;
  eight.points.resize(200, 2);
  for (int i = 0; i < 200; ++i) {
    const double t = 2.0 * kPi * i / 200;
    eight.points.row(i) << std::sin(t), std::sin(t) * std::cos(t);
  }
  CHECK_FALSE(polyline_embedded(eight));
  SampledCurve ring = radial_curve(PeriodicProfile(Eigen::VectorXd::Zero(200)));
  CHECK(polyline_embedded(ring));
}
