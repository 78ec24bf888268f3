#pragma once

// SU(N) elements as dense complex matrices, a portable random stream, Haar
// sampling and the torus exponential.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "twistcvx/error.hpp"

namespace twistcvx {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

constexpr double kUnitaryTolerance = 1e-10;
constexpr double kRepairTolerance = 1e-8;

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline double distance_to_identity(const CMatrix& m) {
  return max_abs(m - CMatrix::Identity(m.rows(), m.cols()));
}

/// Nearest unitary (polar factor) with determinant pushed to 1 by the
/// principal N-th root of its phase.
inline CMatrix nearest_special_unitary(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CMatrix u = svd.matrixU() * svd.matrixV().adjoint();
  const Complex det = u.determinant();
  u *= std::polar(1.0, -std::arg(det) / static_cast<double>(m.rows()));
  return u;
}

/// An N x N complex matrix in SU(N). Construction checks unitarity and
/// determinant to 1e-10; inputs within 1e-8 are re-orthonormalized, anything
/// further off is rejected with InputError.
class UnitaryElement {
 public:
  UnitaryElement() = default;

  explicit UnitaryElement(CMatrix m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw InputError("unitary element must be a nonempty square matrix");
    const auto n = m.rows();
    const double unit_err = max_abs(m.adjoint() * m - CMatrix::Identity(n, n));
    const double det_err = std::abs(m.determinant() - Complex(1.0));
    if (unit_err <= kUnitaryTolerance && det_err <= kUnitaryTolerance) {
      m_ = std::move(m);
    } else if (unit_err <= kRepairTolerance && det_err <= kRepairTolerance) {
      m_ = nearest_special_unitary(m);
    } else {
      throw InputError("matrix is not in SU(" + std::to_string(n) + "): |U*U - I|_max = " + std::to_string(unit_err) +
                       ", |det - 1| = " + std::to_string(det_err));
    }
  }

  static UnitaryElement identity(Eigen::Index n) { return UnitaryElement(CMatrix::Identity(n, n)); }

  Eigen::Index n() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  UnitaryElement inverse() const { return UnitaryElement(CMatrix(m_.adjoint())); }
  UnitaryElement operator*(const UnitaryElement& o) const {
    if (o.n() != n()) throw ValidationError("size mismatch in SU(N) product");
    return UnitaryElement(CMatrix(m_ * o.m_));
  }

 private:
  CMatrix m_;
};

/// Deterministic random stream: mt19937_64 words turned into doubles and
/// Box-Muller normals by fixed formulas, so a seed yields the same numbers
/// on every platform (std::normal_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in (0, 1].
  double uniform() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double phi = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Haar-distributed element of SU(n): QR of a complex Ginibre matrix with the
/// phases of diag(R) moved into Q, then the determinant phase divided out.
inline CMatrix haar_matrix(Eigen::Index n, Rng& rng) {
  CMatrix z(n, n);
  const double scale = std::sqrt(0.5);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      z(i, j) = Complex(re * scale, im * scale);
    }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  q *= std::polar(1.0, -std::arg(q.determinant()) / static_cast<double>(n));
  return q;
}

inline UnitaryElement haar_sample(Eigen::Index n, Rng& rng) { return UnitaryElement(haar_matrix(n, rng)); }

/// diag(exp(2 pi i theta_k)); theta must have coordinate sum zero.
inline CMatrix torus_exp_matrix(std::span<const double> theta) {
  const auto n = static_cast<Eigen::Index>(theta.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * theta[k]);
  return m;
}

inline UnitaryElement torus_exp(std::span<const double> theta) {
  double sum = 0;
  for (double t : theta) sum += t;
  if (std::abs(sum) > 1e-12) throw ValidationError("torus_exp: coordinates must sum to zero");
  return UnitaryElement(torus_exp_matrix(theta));
}

/// exp of a skew-Hermitian matrix through the eigendecomposition of -iX.
inline CMatrix exp_skew_hermitian(const CMatrix& x) {
  const CMatrix h = Complex(0.0, -1.0) * x;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  const auto& v = es.eigenvectors();
  CMatrix d = CMatrix::Zero(x.rows(), x.cols());
  for (Eigen::Index k = 0; k < x.rows(); ++k) d(k, k) = std::polar(1.0, es.eigenvalues()(k));
  return v * d * v.adjoint();
}

/// Orthonormal basis of su(n) for the form -tr(XY): off-diagonal pairs
/// (E_jk - E_kj)/sqrt2, i(E_jk + E_kj)/sqrt2 for j < k, then the diagonal
/// i diag(1,..,1,-m,0,..)/sqrt(m(m+1)).
inline std::vector<CMatrix> su_basis(Eigen::Index n) {
  std::vector<CMatrix> basis;
  const double r2 = std::sqrt(0.5);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j + 1; k < n; ++k) {
      CMatrix a = CMatrix::Zero(n, n), s = CMatrix::Zero(n, n);
      a(j, k) = r2;
      a(k, j) = -r2;
      s(j, k) = Complex(0, r2);
      s(k, j) = Complex(0, r2);
      basis.push_back(a);
      basis.push_back(s);
    }
  for (Eigen::Index m = 1; m < n; ++m) {
    CMatrix h = CMatrix::Zero(n, n);
    const double c = 1.0 / std::sqrt(static_cast<double>(m * (m + 1)));
    for (Eigen::Index k = 0; k < m; ++k) h(k, k) = Complex(0, c);
    h(m, m) = Complex(0, -static_cast<double>(m) * c);
    basis.push_back(h);
  }
  return basis;
}

/// sum_a x_a B_a for the su_basis above.
inline CMatrix su_element(const std::vector<CMatrix>& basis, std::span<const double> x) {
  CMatrix out = CMatrix::Zero(basis.front().rows(), basis.front().cols());
  for (std::size_t a = 0; a < basis.size(); ++a) out += x[a] * basis[a];
  return out;
}

}  // namespace twistcvx
