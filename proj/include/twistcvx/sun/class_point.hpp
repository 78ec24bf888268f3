#pragma once

// The class projection q^(kappa): SU(N) -> twisted alcove, computed
// algebraically (eigenangles, and the square map for order-2 twists), plus an
// independent optimization-based oracle.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "twistcvx/nelder_mead.hpp"
#include "twistcvx/sun/realization.hpp"
#include "twistcvx/sun/unitary.hpp"
#include "twistcvx/twist.hpp"

namespace twistcvx {

struct ClassPoint {
  std::vector<double> coords;  // alcove coordinates
  std::vector<double> theta;   // ambient representative in t^kappa
};

constexpr double kCandidateTolerance = 1e-8;

/// Eigenvalue angles of g in units of 2 pi, as a point of t: each angle is
/// first taken in (-1/2, 1/2], then whole turns are moved between entries so
/// the coordinates sum to zero.
inline std::vector<double> eigen_angles(const CMatrix& g) {
  Eigen::ComplexEigenSolver<CMatrix> es(g, false);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalue computation did not converge");
  const auto n = static_cast<std::size_t>(g.rows());
  std::vector<double> theta(n);
  double sum = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double t = std::arg(es.eigenvalues()(static_cast<Eigen::Index>(k))) / (2 * std::numbers::pi);
    if (t <= -0.5) t += 1.0;
    theta[k] = t;
    sum += t;
  }
  std::sort(theta.begin(), theta.end(), std::greater<>());
  long long turns = std::llround(sum);
  // subtract from the largest or add to the smallest entries
  for (std::size_t k = 0; turns > 0; ++k, --turns) theta[k] -= 1.0;
  for (std::size_t k = n; turns < 0; --k, ++turns) theta[k - 1] += 1.0;
  double mean = 0;
  for (double t : theta) mean += t;
  mean /= static_cast<double>(n);
  for (double& t : theta) t -= mean;
  return theta;
}

inline ClassPoint make_class_point(const TwistedAlcove& alc, std::span<const double> xi) {
  const auto f = fold_to_twisted_alcove(alc, xi);
  return {f.coords, f.xi};
}

/// Ordinary (untwisted) class point of g in the Weyl alcove.
inline ClassPoint ordinary_class_point(const CMatrix& g, const TwistedAlcove& alcove) {
  return make_class_point(alcove, eigen_angles(g));
}

struct OracleOptions {
  int budget = 30000;  // total objective evaluations over all starts
  int starts = 4;
  std::uint64_t seed = 0x5eed;
  double resolve_tolerance = 1e-6;
};

struct OracleResult {
  ClassPoint point;
  double residual = INFINITY;  // Frobenius distance from the twisted class to exp(t^kappa)
  bool resolved = false;
  int evaluations = 0;
};

namespace detail {

/// Squared Frobenius distance from x to exp(t^kappa) and the minimizing
/// point of t^kappa (ambient coordinates).
class TorusDistance {
 public:
  explicit TorusDistance(const TwistRealization& k) {
    const auto& basis = k.data().t_fixed_basis;
    m_ = static_cast<Eigen::Index>(k.n());
    d_ = static_cast<Eigen::Index>(basis.size());
    b_.resize(m_, d_);
    for (Eigen::Index j = 0; j < d_; ++j)
      for (Eigen::Index i = 0; i < m_; ++i) b_(i, j) = to_double(basis[j][i]);
    pinv_ = (b_.transpose() * b_).inverse() * b_.transpose();
    const int full = m_ <= 4 ? static_cast<int>(std::pow(3, m_)) : 1;
    for (int code = 0; code < full; ++code) {
      Eigen::VectorXd z(m_);
      int c = code;
      for (Eigen::Index i = 0; i < m_; ++i, c /= 3) z(i) = (c % 3) - 1;
      shifts_.push_back(z);
    }
    if (m_ > 4) {
      for (Eigen::Index i = 0; i < m_; ++i)
        for (int s : {-1, 1}) {
          Eigen::VectorXd z = Eigen::VectorXd::Zero(m_);
          z(i) = s;
          shifts_.push_back(z);
        }
    }
  }

  double operator()(const CMatrix& x, Eigen::VectorXd* theta_out = nullptr) const {
    double off = 0;
    for (Eigen::Index i = 0; i < m_; ++i)
      for (Eigen::Index j = 0; j < m_; ++j)
        if (i != j) off += std::norm(x(i, j));
    Eigen::VectorXd r(m_), a(m_);
    double base = 0;
    for (Eigen::Index k = 0; k < m_; ++k) {
      r(k) = std::abs(x(k, k));
      a(k) = std::arg(x(k, k)) / (2 * std::numbers::pi);
      base += std::norm(x(k, k)) + 1.0;
    }
    auto value = [&](const Eigen::VectorXd& s) {
      const Eigen::VectorXd phi = b_ * s;
      double v = base;
      for (Eigen::Index k = 0; k < m_; ++k) v -= 2 * r(k) * std::cos(2 * std::numbers::pi * (phi(k) - a(k)));
      return v;
    };
    Eigen::VectorXd best_s;
    double best = INFINITY;
    for (const auto& z : shifts_) {
      const Eigen::VectorXd s = pinv_ * (a + z);
      const double v = value(s);
      if (v < best) {
        best = v;
        best_s = s;
      }
    }
    // Newton polish on the smooth objective in s
    const double tp = 2 * std::numbers::pi;
    for (int it = 0; it < 20; ++it) {
      const Eigen::VectorXd phi = b_ * best_s;
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(d_);
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(d_, d_);
      for (Eigen::Index k = 0; k < m_; ++k) {
        const double u = tp * (phi(k) - a(k));
        grad += 2 * r(k) * tp * std::sin(u) * b_.row(k).transpose();
        hess += 2 * r(k) * tp * tp * std::cos(u) * b_.row(k).transpose() * b_.row(k);
      }
      Eigen::LLT<Eigen::MatrixXd> llt(hess);
      Eigen::VectorXd step = llt.info() == Eigen::Success ? Eigen::VectorXd(llt.solve(grad)) : Eigen::VectorXd(1e-3 * grad);
      double v = value(best_s - step);
      while (v > best && step.norm() > 1e-18) {
        step *= 0.5;
        v = value(best_s - step);
      }
      if (v > best) break;
      const bool small = step.norm() < 1e-15;
      best = v;
      best_s -= step;
      if (small) break;
    }
    if (theta_out) *theta_out = b_ * best_s;
    return std::max(0.0, off + best);
  }

 private:
  Eigen::Index m_ = 0, d_ = 0;
  Eigen::MatrixXd b_, pinv_;
  std::vector<Eigen::VectorXd> shifts_;
};

}  // namespace detail

/// Minimizes the distance from Ad^(kappa)_h(g) to exp(t^kappa) over h by
/// multi-start Nelder-Mead in the chart h0 exp(X), X in su(N); reads off the
/// torus point at the optimum and folds it into the alcove.
inline OracleResult class_point_oracle(const CMatrix& g, const TwistRealization& k, const OracleOptions& opt = {}) {
  const detail::TorusDistance dist(k);
  const auto basis = su_basis(k.n());
  const std::size_t dim = basis.size();
  Rng rng(opt.seed);
  OracleResult out;
  CMatrix best_h = CMatrix::Identity(k.n(), k.n());
  double best = INFINITY;
  const double target = opt.resolve_tolerance * opt.resolve_tolerance * 1e-4;
  const int per_start = std::max(1, opt.budget / std::max(1, opt.starts));
  for (int start = 0; start < opt.starts && best > target; ++start) {
    CMatrix h0 = start == 0 ? CMatrix(CMatrix::Identity(k.n(), k.n())) : haar_matrix(k.n(), rng);
    int used = 0;
    double step = 0.5;
    while (used < per_start && best > target) {
      auto f = [&](std::span<const double> x) {
        const CMatrix h = h0 * exp_skew_hermitian(su_element(basis, x));
        return dist(twisted_conjugate(h, g, k));
      };
      MinimizeOptions mo;
      mo.step = step;
      mo.budget = per_start - used;
      mo.size_tolerance = 1e-13;
      mo.target = target;
      const auto r = nelder_mead(f, std::vector<double>(dim, 0.0), mo);
      used += r.evaluations;
      out.evaluations += r.evaluations;
      if (r.value < best) {
        best = r.value;
        best_h = h0 * exp_skew_hermitian(su_element(basis, r.x));
      }
      if (r.evaluations == 0) break;
      // restart around the better of the current start point and the result
      if (r.value < dist(twisted_conjugate(h0, g, k))) h0 = h0 * exp_skew_hermitian(su_element(basis, r.x));
      step = std::max(step * 0.3, 1e-6);
    }
  }
  Eigen::VectorXd theta;
  dist(twisted_conjugate(best_h, g, k), &theta);
  out.residual = std::sqrt(best);
  out.resolved = out.residual <= opt.resolve_tolerance;
  const std::vector<double> xi(theta.data(), theta.data() + theta.size());
  out.point = make_class_point(k.alcove(), k.alcove().project(xi));
  return out;
}

/// q^(kappa)(g). Identity twist: folded eigenangles. Order-2 twist: the
/// ordinary class point eta of g kappa(g) determines the candidates
/// xi = (w eta + lambda)/2 lying in the twisted alcove (w in W, lambda in the
/// coroot lattice); a unique candidate is returned directly, several are
/// disambiguated by the oracle.
inline ClassPoint class_point(const CMatrix& g, const TwistRealization& k) {
  if (g.rows() != k.n() || g.cols() != k.n()) throw ValidationError("class_point: size mismatch");
  const TwistedAlcove& alc = k.alcove();
  if (k.is_identity()) return make_class_point(alc, eigen_angles(g));

  const ClassPoint eta = ordinary_class_point(square_map(g, k), k.untwisted_alcove_ref());
  const std::size_t n = static_cast<std::size_t>(k.n());

  // coroot lattice vectors in a box large enough to reach 2 * (twisted alcove)
  const double reach = k.alcove_radius();
  double eta_norm = 0;
  for (double t : eta.theta) eta_norm += t * t;
  const int box = static_cast<int>(std::ceil(std::sqrt(eta_norm) + 2 * reach + 1e-9));

  std::vector<std::vector<double>> candidates;
  std::vector<double> w_eta = eta.theta;
  std::sort(w_eta.begin(), w_eta.end());
  std::vector<int> lam(n - 1, -box);
  std::vector<double> point(n);
  do {
    std::fill(lam.begin(), lam.end(), -box);
    while (true) {
      int last = 0;
      for (int x : lam) last -= x;
      if (std::abs(last) <= box) {
        for (std::size_t i = 0; i + 1 < n; ++i) point[i] = w_eta[i] + lam[i];
        point[n - 1] = w_eta[n - 1] + last;
        if (alc.distance_to_subspace(point) <= kCandidateTolerance) {
          std::vector<double> xi = alc.project(point);
          for (double& x : xi) x *= 0.5;
          if (alc.max_violation(xi) <= kCandidateTolerance) {
            const auto c = alc.coords(xi);
            const bool dup = std::any_of(candidates.begin(), candidates.end(), [&](const std::vector<double>& o) {
              double d = 0;
              for (std::size_t i = 0; i < c.size(); ++i) d = std::max(d, std::abs(o[i] - c[i]));
              return d <= kCandidateTolerance;
            });
            if (!dup) candidates.push_back(c);
          }
        }
      }
      std::size_t i = 0;
      while (i < lam.size() && lam[i] == box) lam[i++] = -box;
      if (i == lam.size()) break;
      ++lam[i];
    }
  } while (std::next_permutation(w_eta.begin(), w_eta.end()));

  if (candidates.empty()) throw InternalError("class_point: no twisted torus point squares into the class of g kappa(g)");
  std::vector<double> chosen = candidates.front();
  if (candidates.size() > 1) {
    const auto oracle = class_point_oracle(g, k);
    double best = INFINITY;
    for (const auto& c : candidates) {
      double d = 0;
      for (std::size_t i = 0; i < c.size(); ++i) d += (c[i] - oracle.point.coords[i]) * (c[i] - oracle.point.coords[i]);
      if (d < best) {
        best = d;
        chosen = c;
      }
    }
  }
  return make_class_point(alc, alc.ambient(chosen));
}

inline ClassPoint class_point(const UnitaryElement& g, const TwistRealization& k) { return class_point(g.matrix(), k); }

}  // namespace twistcvx
