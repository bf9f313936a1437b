#pragma once

#include <string>
#include <utility>
#include <vector>

namespace elastica {

struct BucklingInput {
  double chi_H = 1.0;
  double c_stretch = 1.0;
  double r_o = 1.0;
  double h = 0.01;
  double alpha_adh = 0.0;
  double delta = 0.0;

  void validate() const;
};

enum class Regime { Compress, Buckle, BoundaryBand };

std::string to_string(Regime r);

struct BucklingOutcome {
  Regime regime = Regime::Compress;
  double lambda = 0.0;
  double s_star = 0.0;
  double t_star = 0.0;
  double delta_crit = 0.0;
};

inline constexpr double kDecisionBand = 1e-4;

double e_lambda(double lambda, double s);

// Returns (s_star, e_star), the global minimum over s >= 0.
std::pair<double, double> e_lambda_min(double lambda);

double lambda_critical();

double outer_radius(double L_o, double eps_o);

double inner_stiffness(const BucklingInput& in);  // eps_i
double effective_theta(const BucklingInput& in);  // Theta or its adhesive asymptote
double bifurcation_lambda(const BucklingInput& in);

double bare_coefficient();                   // (Theta pi^2 / lambda0)^{3/5}
double adhesive_coefficient();               // consistent with bifurcation_lambda
double adhesive_coefficient_reference();     // 4^{2/5} 3^{2/5} pi^{8/5} / (2 lambda0)^{2/5}

double delta_crit(const BucklingInput& in);
std::vector<std::string> buckling_warnings(const BucklingInput& in);

BucklingOutcome decide(const BucklingInput& in);

}  // namespace elastica
