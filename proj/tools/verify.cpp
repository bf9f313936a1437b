#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "elastica/buckling.hpp"
#include "elastica/closedform.hpp"
#include "elastica/core.hpp"
#include "elastica/disksolver.hpp"
#include "elastica/io.hpp"
#include "elastica/linesolver.hpp"

namespace elastica::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string describe(double value, double target) {
  std::ostringstream os;
  os << "value " << format_double(value) << ", target " << format_double(target);
  return os.str();
}

Check near(const std::string& name, double value, double target, double tol) {
  return {name, std::abs(value - target) <= tol, describe(value, target) + " +- " + format_double(tol)};
}

Check at_least(const std::string& name, double value, double bound) {
  return {name, value >= bound, "value " + format_double(value) + " >= " + format_double(bound)};
}

GridFunction smooth_profile(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> U(0.2, 1.5);
  const double w = U(rng), amp = U(rng), shift = 0.5 * (U(rng) - 0.85);
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, -4.0, 4.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    const double t = (x(i) - shift) / (2.0 * w);
    v(i) = std::abs(t) < 1.0 ? amp * std::pow(1.0 - t * t, 4) : 0.0;
  }
  return GridFunction(-4.0, 4.0, v, true);
}

void suite_scaling(std::vector<Check>& out) {
  std::mt19937_64 rng(7);
  int worst_len = 0, worst_en = 0;
  double err_len = 0.0, err_en = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const GridFunction phi = smooth_profile(rng, 2001);
    const double L = line_length(phi), E = line_energy(phi);
    for (double rho : {0.125, 0.5, 2.0, 8.0}) {
      const GridFunction q = rescale_profile(phi, rho);
      const double el = std::abs(line_length(q) - rho * L) / std::max(1.0, std::abs(rho * L));
      const double ee = std::abs(line_energy(q) - std::cbrt(rho) * E) / std::max(1.0, std::cbrt(rho) * E);
      if (el > err_len) err_len = el;
      if (ee > err_en) err_en = ee;
      worst_len += el > 1e-10;
      worst_en += ee > 1e-10;
    }
  }
  out.push_back({"rescaled length equals rho * length", worst_len == 0, "max rel err " + format_double(err_len)});
  out.push_back({"rescaled energy equals rho^(1/3) * energy", worst_en == 0, "max rel err " + format_double(err_en)});

  double circ = 0.0;
  for (int k = 0; k <= 9; ++k) {
    const double c = 0.1 * k;
    const double w = radial_energy(PeriodicProfile(Eigen::VectorXd::Constant(256, c)));
    circ = std::max(circ, std::abs(w * (1.0 - c) - 2.0 * kPi));
  }
  out.push_back({"circle energy times radius is 2 pi", circ < 1e-10, "max err " + format_double(circ)});

  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst_gap = 1e300;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd v(512);
    const double a = 0.3 * U(rng), b = 0.05 * U(rng), p = 2.0 * kPi * U(rng);
    const int k = 1 + static_cast<int>(4 * U(rng));
    for (int i = 0; i < 512; ++i) {
      const double s = 2.0 * kPi * i / 512;
      v(i) = a + b * (1.0 + std::cos(k * s + p));
    }
    const PeriodicProfile phi(v);
    worst_gap = std::min(worst_gap, radial_energy(phi) - 4.0 * kPi * kPi / radial_length(phi));
  }
  out.push_back(at_least("energy at least 4 pi^2 / length", worst_gap, -1e-7));

  const auto u = sample_minimizer(-4.0, 4.0, 2001);
  const auto u2 = sample_minimizer(-4.0, 4.0, 4001);
  const double rl = std::abs(line_length(u) - 1.0) / std::abs(line_length(u2) - 1.0);
  const double re = std::abs(line_energy(u) - params().theta) / std::abs(line_energy(u2) - params().theta);
  out.push_back(at_least("length error of sampled minimiser shrinks under refinement", rl, 3.5));
  out.push_back(at_least("energy error of sampled minimiser shrinks under refinement", re, 3.5));
}

void suite_closed_form(std::vector<Check>& out) {
  const double rho = solve_tan_fixed_point();
  out.push_back(near("tan fixed point residual", std::sin(rho) - rho * std::cos(rho), 0.0, 1e-12));
  out.push_back(near("tan fixed point value", rho, 4.4934, 1e-4));
  const auto& p = params();
  out.push_back(near("theta", p.theta, 36.6890, 1e-3));
  out.push_back(near("support half-width", p.r, 1.8171, 1e-3));
  out.push_back(near("frequency", p.mu, 2.4728, 1e-3));
  out.push_back(near("cosine amplitude", p.alpha, 0.7528, 1e-3));
  out.push_back(near("offset", p.a, 1.8145, 1e-3));
  out.push_back(near("r^3 = 6", p.r * p.r * p.r, 6.0, 1e-12));
  out.push_back(near("mu r = rho", p.mu * p.r, p.rho, 1e-12));
  const auto [L, E] = branch_length_energy(p.rho, p.r, BranchSign::Trigonometric);
  out.push_back(near("branch length at the optimum", L, 1.0, 1e-6));
  out.push_back(near("branch energy at the optimum", E, p.theta, 1e-6));
  double edge = 0.0;
  for (int k = 0; k <= 2; ++k) edge = std::max(edge, std::abs(eval_minimizer(std::nextafter(p.r, 0.0), k)));
  out.push_back(near("minimiser is C2 at the free boundary", edge, 0.0, 1e-10));
  out.push_back({"third derivative jumps at the free boundary", std::abs(minimizer_third_derivative_inner()) > 1e-3,
                 "inner limit " + format_double(minimizer_third_derivative_inner())});
  const double res = el_residual(sample_minimizer(-4.0, 4.0, 4001), p.theta);
  out.push_back({"Euler-Lagrange residual at n = 4001", res <= 0.05, "value " + format_double(res)});
}

void suite_line(std::vector<Check>& out) {
  const double lower = std::cbrt(6.0);
  const double theta = params().theta;
  LineSolveConfig cfg;
  const SolveReport rep = minimize_theta(cfg);
  out.push_back({"parabola start converges", rep.converged, rep.message});
  out.push_back(near("recovered theta within 1%", rep.objective, theta, 0.01 * theta));
  out.push_back(at_least("objective above 6^(1/3)", rep.objective, lower - 1e-6));
  out.push_back(near("positivity of minimiser", rep.positivity_violation, 0.0, 0.0));

  LineSolveConfig warm;
  warm.initial = sample_minimizer(-4.0, 4.0, warm.n).values;
  const SolveReport rw = minimize_theta(warm);
  out.push_back({"closed-form start converges quickly", rw.converged && rw.iterations <= 50,
                 std::to_string(rw.iterations) + " iterations"});
  out.push_back(near("closed-form start stays at theta", rw.objective, theta, 0.005 * theta));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.5, 1.5);
  const int n = 201;
  const DiscreteLine line{n, 8.0 / (n - 1)};
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd v = 4.0 * smooth_profile(rng, n).values;
    for (int i = 0; i < n; ++i) v(i) *= U(rng);
    while (!(line.length(v) > 0.0)) v *= 2.0;
    const Eigen::VectorXd g = line.quotient_gradient(v);
    Eigen::VectorXd fd(n);
    for (int i = 0; i < n; ++i) {
      const double e = 1e-6 * std::max(1.0, std::abs(v(i)));
      Eigen::VectorXd a = v, b = v;
      a(i) += e;
      b(i) -= e;
      fd(i) = (line.quotient(a) - line.quotient(b)) / (2.0 * e);
    }
    worst = std::max(worst, (g - fd).norm() / g.norm());
  }
  out.push_back({"quotient gradient matches finite differences", worst <= 1e-5, "max rel err " + format_double(worst)});

  const auto d = variational_diagnostics(sample_minimizer(-4.0, 4.0, 4001));
  out.push_back(at_least("positive set measure at most energy", d.margin_measure, 0.0));
  out.push_back(at_least("slope cubed at most 3 E phi", d.margin_slope, -1e-3));
  out.push_back(at_least("slope squared over two minus phi at most E^2/6", d.margin_length, 0.0));

  LineSolveConfig coarse;
  coarse.n = 1001;
  double prev = 0.0;
  bool monotone = true, sandwich = true, bounded = true;
  std::ostringstream os;
  for (double alpha : {0.0, 1.0, 10.0}) {
    const SolveReport r = minimize_theta_alpha(alpha, coarse);
    os << "a=" << alpha << ":" << format_double(r.objective) << " ";
    if (r.objective < prev - 1e-6) monotone = false;
    if (r.objective < theta * (1.0 - 5e-3) || r.objective > theta + 4.0 * alpha + 5e-3 * theta) sandwich = false;
    if (r.objective < lower - 1e-6) bounded = false;
    prev = r.objective;
  }
  out.push_back({"delamination values nondecreasing in alpha", monotone, os.str()});
  out.push_back({"theta <= theta_alpha <= theta + 4 alpha", sandwich, os.str()});
  out.push_back({"delamination objectives above 6^(1/3)", bounded, os.str()});
}

void suite_disk(std::vector<Check>& out) {
  DiskSolveConfig cfg;
  cfg.delta = 1e-3;
  const DiskSolveReport r = minimize_disk(cfg);
  const double theta = params().theta;
  const double excess = r.w - 2.0 * kPi;
  const double scale = theta * std::cbrt(cfg.delta);
  out.push_back({"disk solve converges", r.converged, r.message});
  out.push_back({"excess within [0.9, 1.15] of theta delta^(1/3)", excess >= 0.9 * scale && excess <= 1.15 * scale,
                 "ratio " + format_double(excess / scale)});
  out.push_back({"length constraint met", r.length_residual <= cfg.tol_length,
                 "residual " + format_double(r.length_residual)});
  out.push_back(near("profile nonnegative", r.profile.values.minCoeff() < 0.0 ? -r.profile.values.minCoeff() : 0.0,
                     0.0, 0.0));
  out.push_back(at_least("energy above 4 pi^2 / (2 pi + delta)", r.w, 4.0 * kPi * kPi / (2.0 * kPi + cfg.delta)));

  const auto& p = params();
  const BumpResult b =
      bump_construction([](double x) { return eval_minimizer(x, 0); }, p.r, cfg.delta, cfg.n);
  const double wb = radial_energy(b.profile);
  out.push_back({"minimum not above the bump construction + 1%", r.w <= 2.0 * kPi + 1.01 * (wb - 2.0 * kPi),
                 "solver " + format_double(r.w) + ", bump " + format_double(wb)});
  const double kmin = radial_curvature(r.profile).minCoeff();
  out.push_back({"minimiser has a point of negative curvature", kmin < 0.0, "min curvature " + format_double(kmin)});

  int components = 0;
  const Eigen::VectorXd& v = r.profile.values;
  const double thr = 1e-8 * v.maxCoeff();
  for (int i = 0; i < v.size(); ++i)
    if (v(i) > thr && !(v((i + v.size() - 1) % v.size()) > thr)) ++components;
  Check conn{"support is one connected arc", components == 1, std::to_string(components) + " components"};
  conn.informational = true;
  out.push_back(conn);
  const double L = radial_length(r.profile);
  Check wl{"energy at least length (reported only)", r.w >= L,
           "W - L = " + format_double(r.w - L)};
  wl.informational = true;
  out.push_back(wl);

  bool inside = true;
  for (double eta : {0.02, 0.05, 0.1, 0.29}) {
    const SampledCurve c = helix_construction(eta, 3);
    inside = inside && c.points.rowwise().norm().maxCoeff() < 1.0;
  }
  out.push_back({"helix stays inside the open unit ball", inside, ""});

  const SpiralResult s = spiral_construction(100.0, 2.0);
  out.push_back({"spiral is embedded in the closed disk",
                 polyline_embedded(s.curve) && s.curve.points.rowwise().norm().maxCoeff() <= 1.0, ""});
  out.push_back(near("spiral length matched", s.length, 100.0, 1e-3));
}

void suite_buckling(std::vector<Check>& out) {
  const double l0 = lambda_critical();
  out.push_back({"lambda0 in (1.0341, 1.0342)", l0 > 1.0341 && l0 < 1.0342, "value " + format_double(l0)});
  const double c1 = bare_coefficient(), c2 = adhesive_coefficient_reference();
  out.push_back({"bare coefficient in [33.4, 33.9]", c1 >= 33.4 && c1 <= 33.9, "value " + format_double(c1)});
  out.push_back({"adhesive coefficient in [12.55, 12.68]", c2 >= 12.55 && c2 <= 12.68, "value " + format_double(c2)});
  const auto below = e_lambda_min(l0 - 1e-3), above = e_lambda_min(l0 + 1e-3);
  out.push_back({"interior minimum just below lambda0", below.first > 0.0, "s* " + format_double(below.first)});
  out.push_back({"minimum at zero just above lambda0", above.first == 0.0, "s* " + format_double(above.first)});

  bool mono = true, capped = true, roots = true;
  double prev = -1.0;
  for (int k = 0; k <= 100; ++k) {
    const double lam = 2.5 * k / 100.0;
    const auto [s, e] = e_lambda_min(lam);
    if (e < prev - 1e-14) mono = false;
    if (e > 1.0 + 1e-15) capped = false;
    if (s > 0.0 && lam > 0.0 && std::abs(2.0 * (s - 1.0) + lam / 3.0 * std::pow(s, -2.0 / 3.0)) > 1e-8) roots = false;
    prev = e;
  }
  out.push_back({"minimum value nondecreasing in lambda", mono, ""});
  out.push_back({"minimum value at most 1", capped, ""});
  out.push_back({"interior minimisers are stationary", roots, ""});

  const double ro = outer_radius(1.0, 0.01);
  out.push_back(near("outer radius is stationary", 2.0 * (ro - 1.0) - 4.0 * kPi * kPi * 0.01 / (ro * ro), 0.0, 1e-10));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  int bad = 0, tested = 0;
  for (int trial = 0; trial < 100; ++trial) {
    BucklingInput in;
    in.chi_H = std::pow(10.0, U(rng));
    in.c_stretch = std::pow(10.0, U(rng));
    in.r_o = std::pow(10.0, 0.5 * U(rng));
    in.h = 0.01 * in.r_o * std::pow(10.0, 0.5 * U(rng));
    in.alpha_adh = trial % 2 ? std::pow(10.0, 2.0 * U(rng) - 3.0) : 0.0;
    const double dc = delta_crit(in);
    in.delta = dc * std::pow(10.0, 0.5 * U(rng));
    const BucklingOutcome o = decide(in);
    if (o.regime == Regime::BoundaryBand) continue;
    ++tested;
    if ((o.regime == Regime::Buckle) != (in.delta > dc)) ++bad;
  }
  out.push_back({"buckle exactly when delta exceeds delta_crit", bad == 0,
                 std::to_string(bad) + " of " + std::to_string(tested) + " disagree"});
}

}  // namespace

bool is_suite(const std::string& suite) {
  return suite == "scaling" || suite == "closed-form" || suite == "line" || suite == "disk" || suite == "buckling" ||
         suite == "all";
}

std::vector<Check> run_suite(const std::string& suite, int) {
  if (!is_suite(suite)) throw InvalidInput("unknown suite: " + suite);
  std::vector<Check> out;
  const bool all = suite == "all";
  if (all || suite == "scaling") suite_scaling(out);
  if (all || suite == "closed-form") suite_closed_form(out);
  if (all || suite == "line") suite_line(out);
  if (all || suite == "disk") suite_disk(out);
  if (all || suite == "buckling") suite_buckling(out);
  return out;
}

}  // namespace elastica::cli
