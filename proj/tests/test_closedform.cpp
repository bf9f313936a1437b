#include <doctest.h>

#include <cmath>
#include <numbers>

#include "elastica/closedform.hpp"
#include "elastica/core.hpp"

using namespace elastica;

TEST_CASE("tan fixed point") {
  const double rho = solve_tan_fixed_point();
  CHECK(rho > std::numbers::pi);
  CHECK(rho < 1.5 * std::numbers::pi);
  CHECK(std::abs(rho - 4.4934) <= 1e-4);
  CHECK(std::abs(std::sin(rho) - rho * std::cos(rho)) <= 1e-12);
  CHECK(std::abs(std::sin(rho) * std::sin(rho) - rho * rho / (1.0 + rho * rho)) <= 1e-10);
}

TEST_CASE("parameter table") {
  const auto& p = params();
  CHECK(std::abs(p.theta - 36.6890) <= 1e-3);
  CHECK(std::abs(p.mu - 2.4728) <= 1e-3);
  CHECK(std::abs(p.a - 1.8145) <= 1e-3);
  CHECK(std::abs(p.alpha - 0.7528) <= 1e-3);
  CHECK(std::abs(p.r - 1.8171) <= 1e-3);
  CHECK(std::abs(p.r * p.r * p.r - 6.0) <= 1e-12);
  CHECK(std::abs(p.mu * p.r - p.rho) <= 1e-12);
  CHECK(std::abs(p.a - (0.5 + std::cos(p.rho) / std::sin(p.rho) / p.rho) * p.r * p.r) <= 1e-10);
  CHECK(std::abs(p.alpha + p.r * p.r / (p.rho * std::sin(p.rho))) <= 1e-10);
  CHECK(std::abs(p.theta - std::cbrt(6.0) * p.rho * p.rho) <= 1e-12);
  CHECK(&params() == &p);
}

TEST_CASE("minimiser values and derivatives") {
  const auto& p = params();
  CHECK(eval_minimizer(0.0, 0) == doctest::Approx(p.a + p.alpha));
  CHECK(std::abs(eval_minimizer(0.0, 0) - 2.5673) <= 1e-3);
  for (double x : {p.r, -p.r}) {
    const double inside = x > 0 ? std::nextafter(x, 0.0) : std::nextafter(x, 0.0);
    for (int k = 0; k <= 2; ++k) {
      CHECK(std::abs(eval_minimizer(x, k)) <= 1e-10);
      CHECK(std::abs(eval_minimizer(inside, k)) <= 1e-10);
    }
  }
  CHECK(std::abs(minimizer_third_derivative_inner()) > 1.0);
  CHECK(eval_minimizer(p.r + 1e-9, 3) == 0.0);
  CHECK(eval_minimizer(p.r - 1e-9, 3) == doctest::Approx(minimizer_third_derivative_inner()).epsilon(1e-6));
  CHECK_THROWS_AS(eval_minimizer(0.0, 4), InvalidInput);
  CHECK_THROWS_AS(eval_minimizer(0.0, -1), InvalidInput);
}

TEST_CASE("derivatives agree with finite differences of the closed form") {
  for (double x : {-1.5, -0.7, 0.2, 1.1, 1.7}) {
    const double e = 1e-5;
    for (int k = 0; k < 3; ++k) {
      const double fd = (eval_minimizer(x + e, k) - eval_minimizer(x - e, k)) / (2.0 * e);
      CHECK(eval_minimizer(x, k + 1) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("property: evenness and monotone shape") {
  const auto& p = params();
  for (int i = 0; i <= 1000; ++i) {
    const double x = p.r * (i / 1000.0);
    CHECK(eval_minimizer(x, 0) == eval_minimizer(-x, 0));
    if (i > 0 && i < 1000) {
      CHECK(eval_minimizer(-x, 1) >= 0.0);
      CHECK(eval_minimizer(x, 1) <= 0.0);
    }
  }
}

TEST_CASE("branch formulas") {
  const auto& p = params();
  const auto [L, E] = branch_length_energy(p.rho, p.r, BranchSign::Trigonometric);
  CHECK(std::abs(L - 1.0) <= 1e-6);
  CHECK(std::abs(E - p.theta) <= 1e-6);
  const double rho = 1e-3;
  const auto [Lh, Eh] = branch_length_energy(rho, 1.0, BranchSign::Hyperbolic);
  CHECK(Lh / (rho * rho) == doctest::Approx(-2.0 / 45.0).epsilon(1e-2));
  CHECK(std::isfinite(Eh));
  CHECK(branch_center_value(rho, 1.0, BranchSign::Trigonometric) / (rho * rho) ==
        doctest::Approx(-1.0 / 24.0).epsilon(1e-4));
  CHECK(branch_center_value(p.rho, p.r, BranchSign::Trigonometric) == doctest::Approx(p.a + p.alpha).epsilon(1e-10));
  CHECK_THROWS_AS(branch_length_energy(std::numbers::pi, 1.0, BranchSign::Trigonometric), InvalidInput);
  CHECK_THROWS_AS(branch_length_energy(2.0 * std::numbers::pi, 1.0, BranchSign::Trigonometric), InvalidInput);
  CHECK_THROWS_AS(branch_length_energy(-1.0, 1.0, BranchSign::Hyperbolic), InvalidInput);
}

TEST_CASE("branch formulas agree with quadrature of the family") {
  for (double rho : {2.0, 4.0, 5.0}) {
    const double r = 1.3, mu = rho / r;
    // phi = a - x^2/2 + alpha cos(mu x) with phi(r) = phi'(r) = 0.
    const double alpha = -r / (mu * std::sin(rho));
    const double a = r * r / 2.0 - alpha * std::cos(rho);
    Eigen::VectorXd v(8001);
    for (int i = 0; i < 8001; ++i) {
      const double x = -r + 2.0 * r * i / 8000.0;
      v(i) = a - 0.5 * x * x + alpha * std::cos(mu * x);
    }
    const GridFunction phi(-r, r, v);
    const auto [L, E] = branch_length_energy(rho, r, BranchSign::Trigonometric);
    CHECK(line_length(phi) == doctest::Approx(L).epsilon(1e-5).scale(1.0));
    CHECK(line_energy(phi) == doctest::Approx(E).epsilon(1e-4));
  }
}

TEST_CASE("Euler-Lagrange residual") {
  const double theta = params().theta;
  CHECK(el_residual(GridFunction(-4.0, 4.0, Eigen::VectorXd::Zero(101)), theta) == 0.0);
  Eigen::VectorXd v(201);
  for (int i = 0; i < 201; ++i) {
    const double x = -2.0 + 4.0 * i / 200.0;
    v(i) = 4.0 - 0.5 * x * x;
  }
  CHECK(el_residual(GridFunction(-2.0, 2.0, v), theta) <= 1e-6);
  CHECK(el_residual(sample_minimizer(-4.0, 4.0, 4001), theta) <= 0.05);
  const double coarse = el_residual(sample_minimizer(-4.0, 4.0, 1001), theta);
  const double fine = el_residual(sample_minimizer(-4.0, 4.0, 2001), theta);
  CHECK(fine < coarse);
}

TEST_CASE("sampling validation") {
  CHECK_THROWS_AS(sample_minimizer(-1.0, 1.0, 3), InvalidInput);
  CHECK_THROWS_AS(sample_minimizer(1.0, -1.0, 11), InvalidInput);
  const auto u = sample_minimizer(-4.0, 4.0, 9);
  CHECK(u.nonneg);
  CHECK(u.values.minCoeff() >= 0.0);
}
