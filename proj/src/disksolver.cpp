#include "elastica/disksolver.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "elastica/closedform.hpp"
#include "elastica/core.hpp"
#include "elastica/jet.hpp"
#include "elastica/parallel.hpp"

namespace elastica {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;
using J3 = Jet2<3>;
constexpr double kPi = std::numbers::pi;

template <typename T>
T energy_density(const T& phi, const T& p, const T& q) {
  using std::pow;
  const T R = 1.0 - phi;
  const T num = R * R + 2.0 * (p * p) + R * q;
  return num * num * pow(R * R + p * p, -2.5);
}

template <typename T>
T length_density(const T& phi, const T& p) {
  using std::sqrt;
  const T R = 1.0 - phi;
  return sqrt(R * R + p * p);
}

// Maps the full periodic grid onto the unknowns (identity or even about pi).
struct Reduction {
  int n;
  int m;
  std::vector<int> idx;

  Reduction(int n_, bool symmetric) : n(n_), idx(n_) {
    if (symmetric) {
      m = n / 2 + 1;
      for (int i = 0; i < n; ++i) idx[i] = std::abs(i - n / 2);
    } else {
      m = n;
      for (int i = 0; i < n; ++i) idx[i] = i;
    }
  }
  Eigen::VectorXd expand(const Eigen::VectorXd& v) const {
    Eigen::VectorXd phi(n);
    for (int i = 0; i < n; ++i) phi(i) = v(idx[i]);
    return phi;
  }
  Eigen::VectorXd reduce(const Eigen::VectorXd& phi) const {
    Eigen::VectorXd v(m);
    for (int i = 0; i < n; ++i) v(idx[i]) = phi(i);
    return v;
  }
};

struct Derivatives {
  double W = 0.0, ell = 0.0;
  Eigen::VectorXd gW, gl;
  SpMat HW, Hl;
};

Derivatives evaluate_all(const DiskDiscretization& d, const Reduction& red, const Eigen::VectorXd& v) {
  const int n = d.n;
  const double h = d.h;
  const Eigen::VectorXd phi = red.expand(v);
  Derivatives out;
  out.gW = Eigen::VectorXd::Zero(red.m);
  out.gl = Eigen::VectorXd::Zero(red.m);
  std::vector<Triplet> tW, tl;
  tW.reserve(9 * n);
  tl.reserve(9 * n);
  // field coefficients on nodes (i-1, i, i+1)
  Eigen::Matrix3d Jm;
  Jm << 0.0, 1.0, 0.0, -0.5 / h, 0.0, 0.5 / h, 1.0 / (h * h), -2.0 / (h * h), 1.0 / (h * h);
  for (int i = 0; i < n; ++i) {
    const int nb[3] = {(i + n - 1) % n, i, (i + 1) % n};
    const Eigen::Vector3d loc(phi(nb[0]), phi(nb[1]), phi(nb[2]));
    const Eigen::Vector3d fld = Jm * loc;
    const J3 f = energy_density(J3::variable(fld(0), 0), J3::variable(fld(1), 1), J3::variable(fld(2), 2));
    const J3 l = length_density(J3::variable(fld(0), 0), J3::variable(fld(1), 1));
    out.W += h * f.v;
    out.ell += h * l.v;
    const Eigen::Vector3d gf = h * Jm.transpose() * f.g;
    const Eigen::Vector3d gg = h * Jm.transpose() * l.g;
    const Eigen::Matrix3d Hf = h * Jm.transpose() * f.H * Jm;
    const Eigen::Matrix3d Hg = h * Jm.transpose() * l.H * Jm;
    for (int a = 0; a < 3; ++a) {
      const int ra = red.idx[nb[a]];
      out.gW(ra) += gf(a);
      out.gl(ra) += gg(a);
      for (int b = 0; b < 3; ++b) {
        const int rb = red.idx[nb[b]];
        tW.emplace_back(ra, rb, Hf(a, b));
        tl.emplace_back(ra, rb, Hg(a, b));
      }
    }
  }
  out.HW.resize(red.m, red.m);
  out.Hl.resize(red.m, red.m);
  out.HW.setFromTriplets(tW.begin(), tW.end());
  out.Hl.setFromTriplets(tl.begin(), tl.end());
  return out;
}

std::pair<double, double> values_only(const DiskDiscretization& d, const Eigen::VectorXd& phi) {
  return {d.energy(phi), d.length(phi)};
}

double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

}  // namespace

void DiskSolveConfig::validate() const {
  if (n < 8) throw InvalidInput("disk grid needs at least 8 nodes");
  if (symmetrize && n % 2 != 0) throw InvalidInput("symmetrized disk grid needs an even node count");
  if (!(delta > 0.0)) throw InvalidInput("delta must be positive");
  if (delta > 0.5) throw InvalidInput("delta above 0.5 is outside the asymptotic regime");
  if (penalty_weight_schedule.empty()) throw InvalidInput("penalty schedule is empty");
  for (double w : penalty_weight_schedule)
    if (!(w > 0.0)) throw InvalidInput("penalty weights must be positive");
  if (max_outer < 1 || max_inner < 1) throw InvalidInput("iteration limits must be positive");
  if (!(tol_length > 0.0)) throw InvalidInput("tol_length must be positive");
}

DiskDiscretization::DiskDiscretization(int n_) : n(n_), h(2.0 * kPi / n_) {}

double DiskDiscretization::energy(const Eigen::VectorXd& phi) const {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = phi((i + n - 1) % n), b = phi(i), c = phi((i + 1) % n);
    s += energy_density(b, (c - a) / (2.0 * h), (c - 2.0 * b + a) / (h * h));
  }
  return h * s;
}

double DiskDiscretization::length(const Eigen::VectorXd& phi) const {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = phi((i + n - 1) % n), b = phi(i), c = phi((i + 1) % n);
    s += length_density(b, (c - a) / (2.0 * h));
  }
  return h * s;
}

Eigen::VectorXd DiskDiscretization::energy_gradient(const Eigen::VectorXd& phi) const {
  const Reduction red(n, false);
  return evaluate_all(*this, red, phi).gW;
}

Eigen::VectorXd DiskDiscretization::length_gradient(const Eigen::VectorXd& phi) const {
  const Reduction red(n, false);
  return evaluate_all(*this, red, phi).gl;
}

DiskSolveReport minimize_disk(const DiskSolveConfig& cfg) {
  cfg.validate();
  const auto& p = params();
  const BumpResult start =
      bump_construction([](double x) { return eval_minimizer(x, 0); }, p.r, cfg.delta, cfg.n);
  return minimize_disk(cfg, start.profile);
}

DiskSolveReport minimize_disk(const DiskSolveConfig& cfg, const PeriodicProfile& start) {
  cfg.validate();
  start.validate();
  if (start.n() != cfg.n) throw InvalidInput("start profile has wrong size");
  const DiskDiscretization disk(cfg.n);
  const Reduction red(cfg.n, cfg.symmetrize);
  const double target = 2.0 * kPi + cfg.delta;

  Eigen::VectorXd v = red.reduce(start.values.cwiseMax(0.0));
  DiskSolveReport rep;

  Derivatives D = evaluate_all(disk, red, v);
  const double scale = std::max(D.W - 2.0 * kPi, std::cbrt(cfg.delta)) / (cfg.delta * cfg.delta);
  double lam = D.gW.dot(D.gl) / D.gl.dot(D.gl);
  int total = 0;
  bool done = false;

  for (double weight : cfg.penalty_weight_schedule) {
    const double mu = weight * scale;
    for (int outer = 0; outer < cfg.max_outer && !done; ++outer) {
      bool inner_ok = false;
      for (int it = 0; it < cfg.max_inner; ++it) {
        D = evaluate_all(disk, red, v);
        const double c = D.ell - target;
        const double lt = lam - mu * c;
        const Eigen::VectorXd g = D.gW - lt * D.gl;
        const SpMat Hb = D.HW - lt * D.Hl;
        const Eigen::VectorXd diag =
            (Hb.diagonal().cwiseAbs() + mu * D.gl.cwiseAbs2()).cwiseMax(1e-300);
        const double vmax = std::max(v.maxCoeff(), 1e-300);
        double res = 0.0;
        for (int i = 0; i < red.m; ++i) res = std::max(res, std::abs(v(i) - std::max(v(i) - g(i) / diag(i), 0.0)));
        res /= vmax;
        if (res < 1e-10) {
          inner_ok = true;
          break;
        }
        const double eps = std::min(1e-3 * vmax, res * vmax);
        std::vector<int> pos(red.m);
        int m = 0;
        for (int i = 0; i < red.m; ++i) pos[i] = (v(i) <= eps && g(i) > 0.0) ? -1 : m++;

        Eigen::VectorXd dir = Eigen::VectorXd::Zero(red.m);
        bool have = false;
        {
          std::vector<Triplet> t;
          t.reserve(Hb.nonZeros() + 2 * m + 1);
          for (int k = 0; k < Hb.outerSize(); ++k)
            for (SpMat::InnerIterator itr(Hb, k); itr; ++itr) {
              const int r = pos[itr.row()], cc = pos[itr.col()];
              if (r >= 0 && cc >= 0) t.emplace_back(r, cc, itr.value());
            }
          Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
          for (int i = 0; i < red.m; ++i)
            if (pos[i] >= 0) {
              t.emplace_back(pos[i], m, D.gl(i));
              t.emplace_back(m, pos[i], D.gl(i));
              rhs(pos[i]) = -g(i);
            }
          t.emplace_back(m, m, -1.0 / mu);
          SpMat K(m + 1, m + 1);
          K.setFromTriplets(t.begin(), t.end());
          K.makeCompressed();
          Eigen::SparseLU<SpMat> lu;
          lu.compute(K);
          if (lu.info() == Eigen::Success) {
            const Eigen::VectorXd sol = lu.solve(rhs);
            if (sol.allFinite()) {
              for (int i = 0; i < red.m; ++i) dir(i) = pos[i] >= 0 ? sol(pos[i]) : -g(i) / diag(i);
              have = g.dot(dir) < 0.0;
            }
          }
        }
        if (!have) dir = -g.cwiseQuotient(diag);

        const double Phi = D.W - lam * c + 0.5 * mu * c * c;
        double t = 1.0;
        bool accepted = false;
        Eigen::VectorXd trial;
        while (t > 1e-14) {
          trial = (v + t * dir).cwiseMax(0.0);
          if (trial.maxCoeff() < 0.95) {
            const auto [W2, l2] = values_only(disk, red.expand(trial));
            const double c2 = l2 - target;
            if (W2 - lam * c2 + 0.5 * mu * c2 * c2 <= Phi + 1e-4 * g.dot(trial - v)) {
              accepted = true;
              break;
            }
          }
          t *= 0.5;
        }
        ++total;
        if (!accepted) {
          inner_ok = res < 1e-6;
          break;
        }
        v = trial;
      }
      const auto [W, ell] = values_only(disk, red.expand(v));
      const double c = ell - target;
      if (std::abs(c) <= cfg.tol_length && inner_ok) {
        done = true;
        break;
      }
      lam -= mu * c;
    }
    if (done) break;
  }

  rep.profile = PeriodicProfile(red.expand(v));
  rep.w = radial_energy(rep.profile);
  rep.length_residual = std::abs(radial_length(rep.profile) - target);
  rep.positivity_violation = std::max(0.0, -rep.profile.values.minCoeff());
  rep.multiplier = lam;
  rep.iterations = total;
  rep.converged = done && rep.length_residual <= cfg.tol_length;
  if (!rep.converged) rep.message = "augmented Lagrangian did not reach the length tolerance";
  return rep;
}

SweepFit fit_power_law(const std::vector<double>& deltas, const std::vector<double>& excess) {
  if (deltas.size() != excess.size()) throw InvalidInput("fit inputs differ in size");
  if (deltas.size() < 3) throw InvalidInput("power-law fit needs at least 3 points");
  const Eigen::Index k = static_cast<Eigen::Index>(deltas.size());
  Eigen::MatrixXd X(k, 2);
  Eigen::VectorXd y(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(deltas[i] > 0.0) || !(excess[i] > 0.0)) throw InvalidInput("fit needs positive data");
    X(i, 0) = 1.0;
    X(i, 1) = std::log(deltas[i]);
    y(i) = std::log(excess[i]);
  }
  const Eigen::Vector2d beta = X.colPivHouseholderQr().solve(y);
  return {beta(1), std::exp(beta(0))};
}

SweepResult scaling_sweep(const std::vector<double>& deltas, const DiskSolveConfig& cfg, int jobs) {
  if (deltas.size() < 3) throw InvalidInput("scaling sweep needs at least 3 deltas");
  for (double d : deltas)
    if (!(d > 0.0) || d > 0.5) throw InvalidInput("sweep deltas must lie in (0, 0.5]");
  SweepResult out;
  out.rows.resize(deltas.size());
  std::vector<bool> ok(deltas.size(), false);
  parallel_for(static_cast<int>(deltas.size()), jobs, [&](int i) {
    DiskSolveConfig c = cfg;
    c.delta = deltas[i];
    const DiskSolveReport r = minimize_disk(c);
    SweepRow row;
    row.delta = deltas[i];
    row.w_min = r.w;
    row.excess = r.w - 2.0 * kPi;
    row.ratio = row.excess / std::cbrt(row.delta);
    row.iterations = r.iterations;
    row.length_residual = r.length_residual;
    out.rows[i] = row;
    ok[i] = r.converged;
  });
  for (std::size_t i = 0; i < deltas.size(); ++i)
    if (!ok[i]) throw NonConvergence("disk solve failed at delta = " + std::to_string(deltas[i]));
  std::vector<double> d, e;
  for (const auto& r : out.rows) {
    d.push_back(r.delta);
    e.push_back(r.excess);
  }
  out.fit = fit_power_law(d, e);
  return out;
}

BumpResult bump_construction(const std::function<double(double)>& psi, double support, double delta, int n) {
  if (n < 8) throw InvalidInput("bump profile needs at least 8 nodes");
  if (!(support > 0.0)) throw InvalidInput("bump support must be positive");
  if (!(delta >= 0.0)) throw InvalidInput("delta must be nonnegative");
  BumpResult out;
  if (delta == 0.0) {
    out.profile = PeriodicProfile(Eigen::VectorXd::Zero(n));
    return out;
  }
  const double h = 2.0 * kPi / n;
  auto profile = [&](double rho) {
    if (std::cbrt(rho) * support >= kPi) throw InvalidInput("rescaled bump support exceeds the circle");
    const double sx = std::cbrt(rho);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = sx * sx * psi((i * h - kPi) / sx);
    return PeriodicProfile(v);
  };
  const double target = 2.0 * kPi + delta;
  auto excess = [&](double rho) { return radial_length(profile(rho)) - target; };
  double lo = 0.0, hi = 4.0 * delta;
  while (excess(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  double mid = hi;
  for (int k = 0; k < 200; ++k) {
    mid = 0.5 * (lo + hi);
    const double f = excess(mid);
    if (std::abs(f) <= 1e-13) break;
    if (f < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-17 * hi) break;
  }
  out.rho = mid;
  out.profile = profile(mid);
  return out;
}

BumpResult bump_construction(const GridFunction& psi, double delta, int n) {
  psi.validate();
  const Eigen::VectorXd xs = psi.nodes();
  const Eigen::VectorXd vals = psi.values;
  const double lo = psi.lo, hi = psi.hi, hh = psi.h();
  const int m = psi.n();
  auto f = [=](double x) {
    if (x <= lo || x >= hi) return 0.0;
    const double t = (x - lo) / hh;
    const int i = std::min(static_cast<int>(t), m - 2);
    const double w = t - i;
    return (1.0 - w) * vals(i) + w * vals(i + 1);
  };
  return bump_construction(f, std::max(std::abs(lo), std::abs(hi)), delta, n);
}

SampledCurve helix_construction(double eta, int m, int n) {
  if (!(eta > 0.0) || !(eta < 0.3)) throw InvalidInput("eta must lie in (0, 0.3)");
  if (m < 3) throw InvalidInput("helix mode number must be at least 3");
  if (n < 8) throw InvalidInput("helix needs at least 8 samples");
  SampledCurve c;
  c.dim = 3;
  c.periodic = true;
  c.points.resize(n, 3);
  const double a = std::sqrt(1.0 - eta * eta), b = eta / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    const double s = 2.0 * kPi * i / n;
    c.points.row(i) << a * std::cos(s), a * std::sin(s), b * std::cos(m * s);
    if (!(c.points.row(i).norm() < 1.0)) throw InvalidInput("helix leaves the open unit ball");
  }
  return c;
}

namespace {

struct SpiralGeometry {
  double g, rho_in, rho_out, y_gap, eps_u, windings, pitch;

  double r_arm(double theta, double theta0) const { return rho_in + pitch * (theta - theta0) / (2.0 * kPi); }
};

Eigen::Vector2d polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }

// Samples the closed curve with roughly `spacing` between points.
Eigen::MatrixXd sample_spiral(const SpiralGeometry& G, double spacing) {
  std::vector<Eigen::Vector2d> pts;
  auto count = [&](double len) { return std::max(8, static_cast<int>(std::ceil(len / spacing))); };
  const double N = G.windings;
  const double r_mid = 0.5 * (G.rho_in + G.rho_out);
  const double blend = 0.5 * kPi;

  // Arm A: outward, counterclockwise, theta in [2pi, 2pi + 2pi N].
  {
    const double t0 = 2.0 * kPi, t1 = t0 + 2.0 * kPi * N;
    const int k = count(r_mid * (t1 - t0));
    for (int i = 0; i < k; ++i) {
      const double th = t0 + (t1 - t0) * i / k;
      const double r = G.rho_in + smoothstep((th - t0) / blend) * (G.r_arm(th, t0) - G.rho_in);
      pts.push_back(polar(r, th));
    }
  }
  // Rise into the outer gap.
  const double tA = 2.0 * kPi + 2.0 * kPi * N;
  {
    const double t1 = tA + kPi + G.eps_u;
    const int k = count(G.y_gap * (t1 - tA));
    for (int i = 0; i < k; ++i) {
      const double th = tA + (t1 - tA) * i / k;
      const double s = smoothstep((th - tA) / blend);
      pts.push_back(polar((1.0 - s) * G.r_arm(th, 2.0 * kPi) + s * G.y_gap, th));
    }
  }
  // Turn back through a semicircle.
  const double tB = kPi + 2.0 * kPi * N;
  const double tu = tB + G.eps_u;
  {
    const double a = 0.5 * (G.y_gap - G.rho_out);
    const double cr = 0.5 * (G.y_gap + G.rho_out);
    const Eigen::Vector2d er(std::cos(tu), std::sin(tu)), et(-std::sin(tu), std::cos(tu));
    const int k = count(kPi * a);
    for (int i = 0; i < k; ++i) {
      const double u = kPi * i / k;
      pts.push_back(cr * er + a * (std::cos(u) * er + std::sin(u) * et));
    }
  }
  // Arm B: inward, clockwise, theta from tu down to pi.
  {
    const double t0 = kPi;
    const int k = count(r_mid * (tu - t0));
    for (int i = 0; i < k; ++i) {
      const double th = tu - (tu - t0) * i / k;
      double r = G.r_arm(th, t0);
      if (th > tB) {
        const double s = smoothstep((th - tB) / G.eps_u);
        r = (1.0 - s) * r + s * G.rho_out;
      }
      r = G.rho_in + smoothstep((th - t0) / blend) * (r - G.rho_in);
      pts.push_back(polar(r, th));
    }
  }
  // S-curve through the centre: two semicircles of radius rho_in / 2.
  {
    const double a = 0.5 * G.rho_in;
    const int k = count(kPi * a);
    for (int i = 0; i < k; ++i) {
      const double u = kPi - kPi * i / k;
      pts.emplace_back(-a + a * std::cos(u), a * std::sin(u));
    }
    for (int i = 0; i < k; ++i) {
      const double u = kPi * i / k;
      pts.emplace_back(a - a * std::cos(u), -a * std::sin(u));
    }
  }
  Eigen::MatrixXd P(pts.size(), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) P.row(static_cast<Eigen::Index>(i)) = pts[i].transpose();
  return P;
}

double orient(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

bool segments_cross(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2, const Eigen::Vector2d& q1,
                    const Eigen::Vector2d& q2) {
  const double d1 = orient(q1, q2, p1), d2 = orient(q1, q2, p2);
  const double d3 = orient(p1, p2, q1), d4 = orient(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  auto on = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
    return std::min(a.x(), b.x()) <= c.x() && c.x() <= std::max(a.x(), b.x()) && std::min(a.y(), b.y()) <= c.y() &&
           c.y() <= std::max(a.y(), b.y());
  };
  if (d1 == 0 && on(q1, q2, p1)) return true;
  if (d2 == 0 && on(q1, q2, p2)) return true;
  if (d3 == 0 && on(p1, p2, q1)) return true;
  if (d4 == 0 && on(p1, p2, q2)) return true;
  return false;
}

}  // namespace

bool polyline_embedded(const SampledCurve& gamma) {
  gamma.validate();
  if (gamma.dim != 2) throw InvalidInput("embedding check is planar");
  const int n = gamma.n();
  const int segs = gamma.periodic ? n : n - 1;
  auto P = [&](int i) -> Eigen::Vector2d { return gamma.points.row(i % n).transpose(); };
  double cell = 0.0;
  for (int i = 0; i < segs; ++i) cell = std::max(cell, (P(i + 1) - P(i)).norm());
  cell = std::max(cell, 1e-12);
  std::unordered_map<long long, std::vector<int>> grid;
  auto key = [](long long x, long long y) { return (x << 32) ^ (y & 0xffffffffLL); };
  for (int i = 0; i < segs; ++i) {
    const Eigen::Vector2d a = P(i), b = P(i + 1);
    const long long x0 = static_cast<long long>(std::floor(std::min(a.x(), b.x()) / cell));
    const long long x1 = static_cast<long long>(std::floor(std::max(a.x(), b.x()) / cell));
    const long long y0 = static_cast<long long>(std::floor(std::min(a.y(), b.y()) / cell));
    const long long y1 = static_cast<long long>(std::floor(std::max(a.y(), b.y()) / cell));
    for (long long x = x0; x <= x1; ++x)
      for (long long y = y0; y <= y1; ++y) grid[key(x, y)].push_back(i);
  }
  for (const auto& [k, list] : grid) {
    for (std::size_t u = 0; u < list.size(); ++u)
      for (std::size_t w = u + 1; w < list.size(); ++w) {
        const int i = list[u], j = list[w];
        const int gap = std::abs(i - j);
        if (gap <= 1 || (gamma.periodic && gap == segs - 1)) continue;
        if (segments_cross(P(i), P(i + 1), P(j), P(j + 1))) return false;
      }
  }
  return true;
}

SpiralResult spiral_construction(double length, double c, double spacing) {
  if (!(length >= 50.0)) throw InvalidInput("spiral construction needs length >= 50");
  if (!(c > 0.0)) throw InvalidInput("spiral gap constant must be positive");
  if (!(spacing > 0.0)) throw InvalidInput("spiral sample spacing must be positive");
  SpiralGeometry G{};
  G.g = c / std::sqrt(length);
  if (2.0 * G.g >= 0.9) throw InvalidInput("spiral band does not fit inside the disk");
  G.rho_out = 1.0 - G.g;
  G.rho_in = 1.0 - 2.0 * G.g;
  G.y_gap = 1.0 - 0.25 * G.g;
  G.eps_u = 0.25 * kPi;

  auto measure = [&](double N) {
    G.windings = N;
    G.pitch = (G.rho_out - G.rho_in) / N;
    SampledCurve curve;
    curve.dim = 2;
    curve.periodic = true;
    curve.points = sample_spiral(G, spacing);
    return curve;
  };
  auto len_of = [&](double N) { return curve_length_energy(measure(N)).first - length; };

  double N0 = std::max(1.0, length / (4.0 * kPi * (1.0 - 1.5 * G.g)) - 1.0);
  double N1 = N0 + 0.5;
  double f0 = len_of(N0), f1 = len_of(N1);
  for (int k = 0; k < 50 && std::abs(f1) > 1e-5; ++k) {
    const double N2 = N1 - f1 * (N1 - N0) / (f1 - f0);
    N0 = N1;
    f0 = f1;
    N1 = std::max(0.5, N2);
    f1 = len_of(N1);
  }
  if (std::abs(f1) > 1e-3) throw NonConvergence("spiral length could not be matched");

  SpiralResult out;
  out.curve = measure(N1);
  out.windings = N1;
  out.rho_outer = G.rho_out;
  const auto [L, W] = curve_length_energy(out.curve);
  out.length = L;
  out.energy = W;
  const int n = out.curve.n();
  out.arclength.resize(n);
  out.arclength(0) = 0.0;
  for (int i = 1; i < n; ++i)
    out.arclength(i) = out.arclength(i - 1) + (out.curve.points.row(i) - out.curve.points.row(i - 1)).norm();
  for (int i = 0; i < n; ++i)
    if (out.curve.points.row(i).norm() > 1.0) throw NonConvergence("spiral leaves the unit disk");
  if (!polyline_embedded(out.curve)) throw NonConvergence("spiral failed the embedding check");
  return out;
}

}  // namespace elastica
