#include "elastica/buckling.hpp"

#include <cmath>
#include <numbers>

#include "elastica/closedform.hpp"
#include "elastica/types.hpp"

namespace elastica {

namespace {

constexpr double kPi = std::numbers::pi;

double quintic(double lambda, double t) { return 6.0 * std::pow(t, 5) - 6.0 * t * t + lambda; }
double quintic_dt(double t) { return 30.0 * std::pow(t, 4) - 12.0 * t; }

double refine_root(double lambda, double lo, double hi) {
  double flo = quintic(lambda, lo);
  for (int k = 0; k < 200 && hi - lo > 1e-15; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double fm = quintic(lambda, mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double t = 0.5 * (lo + hi);
  for (int k = 0; k < 3; ++k) {
    const double d = quintic_dt(t);
    if (d == 0.0) break;
    const double next = t - quintic(lambda, t) / d;
    if (next <= lo - 1e-12 || next >= hi + 1e-12) break;
    t = next;
  }
  return t;
}

// Best interior local minimiser (s, e), or s = -1 when none exists.
std::pair<double, double> interior_minimum(double lambda) {
  constexpr int samples = 4000;
  const double tmax = 2.0;
  double best_s = -1.0, best_e = 0.0;
  double t_prev = 1e-12, f_prev = quintic(lambda, t_prev);
  for (int i = 1; i <= samples; ++i) {
    const double t = tmax * i / samples;
    const double f = quintic(lambda, t);
    if (f_prev < 0.0 && f >= 0.0) {
      const double r = refine_root(lambda, t_prev, t);
      const double s = r * r * r;
      const double e = e_lambda(lambda, s);
      if (best_s < 0.0 || e < best_e) {
        best_s = s;
        best_e = e;
      }
    }
    t_prev = t;
    f_prev = f;
  }
  return {best_s, best_e};
}

}  // namespace

void BucklingInput::validate() const {
  if (!(chi_H > 0.0)) throw InvalidInput("chi_H must be positive");
  if (!(c_stretch > 0.0)) throw InvalidInput("c_stretch must be positive");
  if (!(r_o > 0.0)) throw InvalidInput("r_o must be positive");
  if (!(h > 0.0)) throw InvalidInput("h must be positive");
  if (!(alpha_adh >= 0.0) || !std::isfinite(alpha_adh)) throw InvalidInput("alpha must be nonnegative");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw InvalidInput("delta must be nonnegative");
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Compress:
      return "compress";
    case Regime::Buckle:
      return "buckle";
    default:
      return "boundary-band";
  }
}

double e_lambda(double lambda, double s) { return (s - 1.0) * (s - 1.0) + lambda * std::cbrt(s); }

std::pair<double, double> e_lambda_min(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidInput("lambda must be nonnegative");
  if (lambda == 0.0) return {1.0, 0.0};
  const auto [s, e] = interior_minimum(lambda);
  if (s > 0.0 && e < 1.0) return {s, e};
  return {0.0, 1.0};
}

double lambda_critical() {
  static const double value = [] {
    double lo = 1.0, hi = 1.95;
    auto gap = [](double lam) {
      const auto [s, e] = interior_minimum(lam);
      return s > 0.0 ? e - 1.0 : 1.0;
    };
    while (hi - lo > 1e-14) {
      const double mid = 0.5 * (lo + hi);
      if (gap(mid) < 0.0)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return value;
}

double outer_radius(double L_o, double eps_o) {
  if (!(L_o > 0.0) || !(eps_o > 0.0)) throw InvalidInput("outer radius inputs must be positive");
  const double k = 4.0 * kPi * kPi * eps_o;
  auto F = [&](double r) { return 2.0 * (r - L_o) - k / (r * r); };
  double lo = L_o, hi = L_o + 2.0 * kPi * kPi * eps_o / (L_o * L_o);
  double r = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = F(r);
    if (f == 0.0) return r;
    if (f < 0.0)
      lo = r;
    else
      hi = r;
    double next = r - f / (2.0 + 2.0 * k / (r * r * r));
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 1e-16 * r) return next;
    r = next;
  }
  return r;
}

double inner_stiffness(const BucklingInput& in) {
  return in.chi_H * kPi * kPi * in.h * in.h / (in.c_stretch * in.r_o);
}

double effective_theta(const BucklingInput& in) {
  if (in.alpha_adh > 0.0) {
    const double at = 4.0 * in.alpha_adh / (in.chi_H * in.h * in.h);
    return 1.5 * std::pow(kPi, 2.0 / 3.0) * std::pow(at, 2.0 / 3.0);
  }
  return params().theta;
}

double bifurcation_lambda(const BucklingInput& in) {
  in.validate();
  if (!(in.delta > 0.0)) throw InvalidInput("delta must be positive");
  return effective_theta(in) * inner_stiffness(in) / (std::pow(in.r_o, 4.0 / 3.0) * std::pow(in.delta, 5.0 / 3.0));
}

double bare_coefficient() { return std::pow(params().theta * kPi * kPi / lambda_critical(), 0.6); }

double adhesive_coefficient() {
  return std::pow(4.0, 0.4) * std::pow(3.0, 0.6) * std::pow(kPi, 1.6) / std::pow(2.0 * lambda_critical(), 0.6);
}

double adhesive_coefficient_reference() {
  return std::pow(4.0, 0.4) * std::pow(3.0, 0.4) * std::pow(kPi, 1.6) / std::pow(2.0 * lambda_critical(), 0.4);
}

double delta_crit(const BucklingInput& in) {
  in.validate();
  const double material = std::pow(in.c_stretch, -0.6) * std::pow(in.r_o, -1.4);
  if (in.alpha_adh > 0.0)
    return adhesive_coefficient() * std::pow(in.chi_H, 0.2) * material * std::pow(in.alpha_adh * in.h, 0.4);
  return bare_coefficient() * std::pow(in.chi_H, 0.6) * material * std::pow(in.h, 1.2);
}

std::vector<std::string> buckling_warnings(const BucklingInput& in) {
  in.validate();
  std::vector<std::string> out;
  if (in.h / in.r_o > 0.1) out.push_back("inner shell is not thin: h / r_o > 0.1");
  if (in.alpha_adh > 0.0 && delta_crit(in) > 0.1 * 2.0 * kPi * in.r_o)
    out.push_back("adhesive threshold leaves the small excess-length regime");
  return out;
}

BucklingOutcome decide(const BucklingInput& in) {
  in.validate();
  if (!(in.delta > 0.0)) throw InvalidInput("delta must be positive");
  BucklingOutcome out;
  out.lambda = bifurcation_lambda(in);
  out.delta_crit = delta_crit(in);
  const double l0 = lambda_critical();
  if (out.lambda < l0 - kDecisionBand)
    out.regime = Regime::Buckle;
  else if (out.lambda > l0 + kDecisionBand)
    out.regime = Regime::Compress;
  else
    out.regime = Regime::BoundaryBand;
  const auto [s, e] = e_lambda_min(out.lambda);
  out.s_star = s;
  out.t_star = s * in.delta;
  return out;
}

}  // namespace elastica
