#pragma once

// Ad_phi o kappa on su(N) in an orthonormal basis, and the kernel analysis of
// the 2-form on a twisted conjugacy class.

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "twistcvx/sun/realization.hpp"
#include "twistcvx/sun/unitary.hpp"

namespace twistcvx {

constexpr double kRankThreshold = 1e-9;
constexpr double kWarnLow = 1e-11;
constexpr double kWarnHigh = 1e-7;

/// Real matrix of X -> phi kappa(X) phi^{-1} in the su_basis (orthonormal for -tr(XY)).
inline Eigen::MatrixXd adjoint_twist_operator(const CMatrix& phi, const TwistRealization& k) {
  const auto basis = su_basis(k.n());
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd a(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const CMatrix image = phi * k.apply(basis[b]) * phi.adjoint();
    for (Eigen::Index r = 0; r < dim; ++r) a(r, b) = (basis[r].adjoint() * image).trace().real();
  }
  return a;
}

struct ClassFormKernel {
  int tangent_dim = 0;          // rank(A - I)
  int dim_ker_AminusI = 0;
  int dim_ker_AplusI = 0;
  int dim_ker_omega = 0;
  int image_dim = 0;            // dim (A - I) ker(A + I)
  double skew_residual = 0;     // |Omega + Omega^T|_max
  bool consistent = false;      // dim_ker_omega == image_dim
  bool warning = false;
  std::string warning_text;
};

namespace detail {
inline int count_above(const Eigen::VectorXd& sv, double tol) {
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++r;
  return r;
}
inline void flag_band(const Eigen::VectorXd& sv, const char* what, ClassFormKernel& out) {
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) >= kWarnLow && sv(i) <= kWarnHigh) {
      out.warning = true;
      out.warning_text += std::string(what) + ": singular value " + std::to_string(sv(i)) + " near rank threshold; ";
    }
}
}  // namespace detail

/// Restricts Omega = (1/2)(A - A^{-1}) to the tangent space ran(A - I): with
/// Q an orthonormal basis of the range and v = (A - I)^+ u the generating
/// vector of a tangent vector u, Omega_T(u, u') = v^T Omega v'.
inline ClassFormKernel class_form_kernel(const Eigen::MatrixXd& a) {
  ClassFormKernel out;
  const auto n = a.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd am = a - id, ap = a + id;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd_m(am, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd_p(ap, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sm = svd_m.singularValues();
  const auto& sp = svd_p.singularValues();
  detail::flag_band(sm, "A-I", out);
  detail::flag_band(sp, "A+I", out);
  out.tangent_dim = detail::count_above(sm, kRankThreshold);
  out.dim_ker_AminusI = static_cast<int>(n) - out.tangent_dim;
  out.dim_ker_AplusI = static_cast<int>(n) - detail::count_above(sp, kRankThreshold);

  const int k = out.tangent_dim;
  if (k > 0) {
    const Eigen::MatrixXd q = svd_m.matrixU().leftCols(k);
    // (A - I)^+ restricted to the range: V_k S_k^{-1} U_k^T
    Eigen::MatrixXd pinv = svd_m.matrixV().leftCols(k) * sm.head(k).cwiseInverse().asDiagonal() * q.transpose();
    const Eigen::MatrixXd skew = 0.5 * (a - a.transpose());
    const Eigen::MatrixXd gen = pinv * q;
    const Eigen::MatrixXd omega = gen.transpose() * skew * gen;
    out.skew_residual = (omega + omega.transpose()).cwiseAbs().maxCoeff();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd_o(omega);
    detail::flag_band(svd_o.singularValues(), "Omega", out);
    out.dim_ker_omega = k - detail::count_above(svd_o.singularValues(), kRankThreshold);
  }
  // image of ker(A + I) under the generating-vector map xi -> (A - I) xi
  const int kp = out.dim_ker_AplusI;
  if (kp > 0) {
    const Eigen::MatrixXd kernel = svd_p.matrixV().rightCols(kp);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd_i(am * kernel);
    out.image_dim = detail::count_above(svd_i.singularValues(), kRankThreshold);
  }
  out.consistent = out.dim_ker_omega == out.image_dim;
  return out;
}

}  // namespace twistcvx
