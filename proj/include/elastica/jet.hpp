#pragma once

#include <cmath>

#include <Eigen/Dense>

namespace elastica {

// Second-order forward-mode number: value, gradient and Hessian with respect
// to N independent inputs.
template <int N>
struct Jet2 {
  using Vec = Eigen::Matrix<double, N, 1>;
  using Mat = Eigen::Matrix<double, N, N>;

  double v = 0.0;
  Vec g = Vec::Zero();
  Mat H = Mat::Zero();

  Jet2() = default;
  explicit Jet2(double value) : v(value) {}

  static Jet2 variable(double value, int k) {
    Jet2 j(value);
    j.g(k) = 1.0;
    return j;
  }

  // Applies a scalar function with derivatives f1, f2 at v.
  Jet2 chain(double f0, double f1, double f2) const {
    Jet2 r(f0);
    r.g = f1 * g;
    r.H = f1 * H + f2 * g * g.transpose();
    return r;
  }
};

template <int N>
Jet2<N> operator+(const Jet2<N>& a, const Jet2<N>& b) {
  Jet2<N> r(a.v + b.v);
  r.g = a.g + b.g;
  r.H = a.H + b.H;
  return r;
}

template <int N>
Jet2<N> operator-(const Jet2<N>& a, const Jet2<N>& b) {
  Jet2<N> r(a.v - b.v);
  r.g = a.g - b.g;
  r.H = a.H - b.H;
  return r;
}

template <int N>
Jet2<N> operator*(const Jet2<N>& a, const Jet2<N>& b) {
  Jet2<N> r(a.v * b.v);
  r.g = a.v * b.g + b.v * a.g;
  r.H = a.v * b.H + b.v * a.H + a.g * b.g.transpose() + b.g * a.g.transpose();
  return r;
}

template <int N>
Jet2<N> operator*(double s, const Jet2<N>& a) {
  Jet2<N> r(s * a.v);
  r.g = s * a.g;
  r.H = s * a.H;
  return r;
}

template <int N>
Jet2<N> operator+(double s, const Jet2<N>& a) {
  Jet2<N> r = a;
  r.v += s;
  return r;
}

template <int N>
Jet2<N> operator-(double s, const Jet2<N>& a) {
  return s + (-1.0) * a;
}

template <int N>
Jet2<N> pow(const Jet2<N>& a, double k) {
  const double p = std::pow(a.v, k);
  return a.chain(p, k * p / a.v, k * (k - 1.0) * p / (a.v * a.v));
}

template <int N>
Jet2<N> sqrt(const Jet2<N>& a) {
  const double s = std::sqrt(a.v);
  return a.chain(s, 0.5 / s, -0.25 / (s * a.v));
}

}  // namespace elastica
