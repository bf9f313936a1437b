#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "elastica/closedform.hpp"
#include "elastica/core.hpp"

using namespace elastica;

namespace {

constexpr double kPi = std::numbers::pi;

// Composite Simpson rule on [a, b] with m (even) panels.
template <class F>
double simpson(F f, double a, double b, int m) {
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

GridFunction sample(double lo, double hi, int n, const std::function<double(double)>& f) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = f(lo + (hi - lo) * i / (n - 1));
  return GridFunction(lo, hi, v);
}

GridFunction random_bump(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> U(0.3, 1.5);
  const double w = U(rng), a = U(rng), c = 0.3 * (U(rng) - 0.9);
  return sample(-4.0, 4.0, n, [=](double x) {
    const double t = (x - c) / (2.0 * w);
    return std::abs(t) < 1.0 ? a * std::pow(1.0 - t * t, 4) : 0.0;
  });
}

PeriodicProfile bump_profile(double rho, int n) {
  Eigen::VectorXd v(n);
  const double sx = std::cbrt(rho);
  for (int i = 0; i < n; ++i) v(i) = sx * sx * eval_minimizer((2.0 * kPi * i / n - kPi) / sx, 0);
  return PeriodicProfile(v);
}

SampledCurve circle(double radius, int n) {
  SampledCurve c;
  c.dim = 2;
  c.points.resize(n, 2);
  for (int i = 0; i < n; ++i) {
    const double s = 2.0 * kPi * i / n;
    c.points.row(i) << radius * std::cos(s), radius * std::sin(s);
  }
  return c;
}

}  // namespace

TEST_CASE("zero profile has zero length and energy") {
  const GridFunction z(-4.0, 4.0, Eigen::VectorXd::Zero(101));
  CHECK(line_length(z) == 0.0);
  CHECK(line_energy(z) == 0.0);
  CHECK(line_energy_alpha(z, 7.0, 1e-12) == 0.0);
}

TEST_CASE("sampled minimiser has unit length and energy theta") {
  const auto u = sample_minimizer(-4.0, 4.0, 4001);
  CHECK(std::abs(line_length(u) - 1.0) <= 1e-4);
  CHECK(std::abs(line_energy(u) - 36.689) <= 0.05);
}

TEST_CASE("cosine bump matches independently integrated length and energy") {
  for (double r : {0.5, 1.0, 2.0}) {
    const double A = std::sqrt(8.0 * r) / kPi, k = kPi / (2.0 * r);
    auto f = [&](double x) { return A * (1.0 + std::cos(k * x)); };
    auto f1 = [&](double x) { return -A * k * std::sin(k * x); };
    auto f2 = [&](double x) { return -A * k * k * std::cos(k * x); };
    const double L_ref = simpson([&](double x) { return 0.5 * f1(x) * f1(x) - f(x); }, -r, r, 20000);
    const double E_ref = simpson([&](double x) { return f2(x) * f2(x); }, -r, r, 20000);
    CHECK(simpson([&](double x) { return 0.5 * f1(x) * f1(x); }, -r, r, 20000) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(E_ref == doctest::Approx(kPi * kPi / (2.0 * r * r)).epsilon(1e-12));
    const GridFunction phi = sample(-r, r, 4001, f);
    CHECK(line_length(phi) == doctest::Approx(L_ref).epsilon(1e-5));
    CHECK(line_energy(phi) == doctest::Approx(E_ref).epsilon(1e-2));
  }
}

TEST_CASE("energy with delamination adds alpha times the support") {
  const auto u = sample_minimizer(-4.0, 4.0, 4001);
  CHECK(line_energy_alpha(u, 0.0, 1e-12) == line_energy(u));
  const double expected = params().theta + 2.0 * params().r;
  CHECK(std::abs(line_energy_alpha(u, 1.0, 1e-12) - expected) <= 0.1);
}

TEST_CASE("rescaling identities") {
  const auto u = sample_minimizer(-4.0, 4.0, 4001);
  const GridFunction same = rescale_profile(u, 1.0);
  CHECK(same.lo == u.lo);
  CHECK(same.hi == u.hi);
  CHECK((same.values - u.values).cwiseAbs().maxCoeff() == 0.0);
  const double theta = params().theta;
  const GridFunction small = rescale_profile(u, 0.125);
  CHECK(line_length(small) == doctest::Approx(0.125).epsilon(1e-3));
  CHECK(line_energy(small) == doctest::Approx(theta / 2.0).epsilon(1e-3));
  const GridFunction big = rescale_profile(u, 8.0);
  CHECK(line_length(big) == doctest::Approx(8.0).epsilon(1e-3));
  CHECK(line_energy(big) == doctest::Approx(2.0 * theta).epsilon(1e-3));
  CHECK_THROWS_AS(rescale_profile(u, 0.0), InvalidInput);
  CHECK_THROWS_AS(rescale_profile(u, -1.0), InvalidInput);
}

TEST_CASE("property: rescaling scales length by rho and energy by rho^(1/3)") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 25; ++trial) {
    const GridFunction phi = random_bump(rng, 1001);
    const double L = line_length(phi), E = line_energy(phi);
    for (double rho : {0.125, 0.5, 2.0, 8.0}) {
      const GridFunction q = rescale_profile(phi, rho);
      CHECK(line_length(q) == doctest::Approx(rho * L).epsilon(1e-10));
      CHECK(line_energy(q) == doctest::Approx(std::cbrt(rho) * E).epsilon(1e-10));
    }
  }
}

TEST_CASE("property: second-order convergence on the sampled minimiser") {
  const double theta = params().theta;
  const auto a = sample_minimizer(-4.0, 4.0, 1001), b = sample_minimizer(-4.0, 4.0, 2001),
             c = sample_minimizer(-4.0, 4.0, 4001);
  CHECK(std::abs(line_length(a) - 1.0) / std::abs(line_length(b) - 1.0) >= 3.5);
  CHECK(std::abs(line_length(b) - 1.0) / std::abs(line_length(c) - 1.0) >= 3.5);
  CHECK(std::abs(line_energy(a) - theta) / std::abs(line_energy(b) - theta) >= 3.5);
  CHECK(std::abs(line_energy(b) - theta) / std::abs(line_energy(c) - theta) >= 3.5);
}

TEST_CASE("functional values carry a quadrature error estimate") {
  const auto u = sample_minimizer(-4.0, 4.0, 2001);
  const auto L = line_length_value(u), E = line_energy_value(u);
  CHECK(L.value == line_length(u));
  CHECK(E.value == line_energy(u));
  CHECK(L.quadrature_error_estimate >= 0.0);
  CHECK(E.quadrature_error_estimate >= std::abs(E.value - params().theta) * 0.01);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(line_length(GridFunction(-1.0, 1.0, Eigen::VectorXd::Zero(4))), InvalidInput);
  CHECK_THROWS_AS(line_energy(GridFunction(1.0, 1.0, Eigen::VectorXd::Zero(10))), InvalidInput);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(10);
  v(3) = std::nan("");
  CHECK_THROWS_AS(line_length(GridFunction(-1.0, 1.0, v)), InvalidInput);
  v(3) = -1.0;
  CHECK_THROWS_AS(GridFunction(-1.0, 1.0, v, true).validate(), InvalidInput);
}

TEST_CASE("radial length of circles") {
  CHECK(radial_length(PeriodicProfile(Eigen::VectorXd::Zero(64))) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(radial_length(PeriodicProfile(Eigen::VectorXd::Constant(64, 0.5))) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK_THROWS_AS(radial_length(PeriodicProfile(Eigen::VectorXd::Constant(64, 1.0))), InvalidInput);
  CHECK_THROWS_AS(radial_length(PeriodicProfile(Eigen::VectorXd::Zero(6))), InvalidInput);
}

TEST_CASE("radial length of the rescaled minimiser bump") {
  const double rho = 1e-3;
  const PeriodicProfile p = bump_profile(rho, 8192);
  CHECK(std::abs(radial_length(p) - (2.0 * kPi + rho)) <= 1.1e-5);
}

TEST_CASE("radial energy of circles and of the bump") {
  CHECK(radial_energy(PeriodicProfile(Eigen::VectorXd::Zero(64))) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(radial_energy(PeriodicProfile(Eigen::VectorXd::Constant(64, 0.5))) ==
        doctest::Approx(4.0 * kPi).epsilon(1e-12));
  const double rho = 1e-3;
  const double correction = radial_energy(bump_profile(rho, 8192)) - 2.0 * kPi;
  CHECK(correction == doctest::Approx(params().theta * std::cbrt(rho)).epsilon(0.05));
}

TEST_CASE("property: circle identity and the energy-length bound") {
  for (int k = 0; k <= 9; ++k) {
    const double c = 0.1 * k;
    CHECK(radial_energy(PeriodicProfile(Eigen::VectorXd::Constant(128, c))) * (1.0 - c) ==
          doctest::Approx(2.0 * kPi).epsilon(1e-12));
  }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd v(512);
    const double a = 0.4 * U(rng), b = 0.1 * U(rng), p = 2.0 * kPi * U(rng);
    const int m = 1 + static_cast<int>(5 * U(rng));
    for (int i = 0; i < 512; ++i) v(i) = a + b * (1.0 + std::cos(m * 2.0 * kPi * i / 512 + p));
    const PeriodicProfile phi(v);
    const double gap = radial_energy(phi) - 4.0 * kPi * kPi / radial_length(phi);
    CHECK(gap >= -1e-7);
    if (m >= 1 && b > 0.01) CHECK(gap > 1e-6);
  }
}

TEST_CASE("radial curve and curvature of a circle") {
  const PeriodicProfile p(Eigen::VectorXd::Constant(64, 0.25));
  const SampledCurve c = radial_curve(p);
  CHECK(c.dim == 2);
  CHECK(c.points.rowwise().norm().maxCoeff() == doctest::Approx(0.75));
  const Eigen::VectorXd k = radial_curvature(p);
  CHECK(k.minCoeff() == doctest::Approx(1.0 / 0.75).epsilon(1e-12));
  CHECK(k.maxCoeff() == doctest::Approx(1.0 / 0.75).epsilon(1e-12));
}

TEST_CASE("sampled curves: circles") {
  const auto [L1, W1] = curve_length_energy(circle(1.0, 512));
  CHECK(std::abs(L1 - 2.0 * kPi) <= 1e-6);
  CHECK(std::abs(W1 - 2.0 * kPi) <= 1e-6);
  const auto [L2, W2] = curve_length_energy(circle(2.0, 512));
  CHECK(std::abs(L2 - 4.0 * kPi) <= 1e-6);
  CHECK(std::abs(W2 - kPi) <= 1e-6);
}

TEST_CASE("sampled curves: out-of-plane perturbation of the circle") {
  const double eta = 0.05;
  const int n = 2048;
  SampledCurve c;
  c.dim = 3;
  c.points.resize(n, 3);
  for (int i = 0; i < n; ++i) {
    const double s = 2.0 * kPi * i / n;
    c.points.row(i) << std::sqrt(1 - eta * eta) * std::cos(s), std::sqrt(1 - eta * eta) * std::sin(s),
        eta / std::sqrt(2.0) * std::cos(3 * s);
  }
  const auto [L, W] = curve_length_energy(c);
  CHECK(std::abs(L - (2.0 * kPi + 1.25 * kPi * eta * eta)) <= 10.0 * std::pow(eta, 4));
  CHECK(W > 2.0 * kPi);
}

TEST_CASE("sampled curves: open polyline and degenerate input") {
  SampledCurve line;
  line.dim = 2;
  line.periodic = false;
  line.points.resize(20, 2);
  for (int i = 0; i < 20; ++i) line.points.row(i) << 0.1 * i, 0.0;
  const auto [L, W] = curve_length_energy(line);
  CHECK(L == doctest::Approx(1.9));
  CHECK(W == doctest::Approx(0.0));
  SampledCurve bad = circle(1.0, 16);
  bad.points.row(3) = bad.points.row(2);
  CHECK_THROWS_AS(curve_length_energy(bad), InvalidInput);
}

TEST_CASE("bending density of a planar unit-speed circle") {
  Eigen::Vector2d d1(0.0, 1.0), d2(-1.0, 0.0);
  CHECK(bending_density(d1, d2) == doctest::Approx(1.0));
  Eigen::Vector3d e1(2.0, 0.0, 0.0), e2(0.0, 0.0, 4.0);
  CHECK(bending_density(e1, e2) == doctest::Approx(16.0 * 4.0 / 32.0));
}
