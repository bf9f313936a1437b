#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace elastica {

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridFunction {
  double lo = -1.0;
  double hi = 1.0;
  Eigen::VectorXd values;
  bool nonneg = false;

  GridFunction() = default;
  GridFunction(double lo_, double hi_, Eigen::VectorXd v, bool nonneg_ = false)
      : lo(lo_), hi(hi_), values(std::move(v)), nonneg(nonneg_) {}

  int n() const { return static_cast<int>(values.size()); }
  double h() const { return (hi - lo) / (n() - 1); }
  double x(int i) const { return lo + i * h(); }
  Eigen::VectorXd nodes() const { return Eigen::VectorXd::LinSpaced(n(), lo, hi); }

  void validate() const;
};

struct PeriodicProfile {
  Eigen::VectorXd values;

  PeriodicProfile() = default;
  explicit PeriodicProfile(Eigen::VectorXd v) : values(std::move(v)) {}

  int n() const { return static_cast<int>(values.size()); }
  double h() const;
  double s(int i) const { return i * h(); }

  void validate() const;
};

struct SampledCurve {
  int dim = 2;
  Eigen::MatrixXd points;  // n x dim
  bool periodic = true;

  int n() const { return static_cast<int>(points.rows()); }
  void validate() const;
};

struct ScalarFunctionalValue {
  double value = 0.0;
  double quadrature_error_estimate = 0.0;
};

}  // namespace elastica
