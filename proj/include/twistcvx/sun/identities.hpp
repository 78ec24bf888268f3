#pragma once

// Change of twist along a chain, and the holonomy products describing the
// moduli space of a sphere with r boundary circles and twisted gluing.

#include <vector>

#include "twistcvx/sun/class_point.hpp"
#include "twistcvx/sun/realization.hpp"
#include "twistcvx/sun/unitary.hpp"

namespace twistcvx {

constexpr double kIdentityResidual = 1e-11;

struct TwistChain {
  std::vector<CMatrix> u;        // u_1 .. u_{r+1}
  CMatrix a;                     // u_{r+1}
  std::vector<CMatrix> h_prime;  // Ad^(kappa_i)_{u_i}(h_i) a_i^{-1}
  double residual = 0;           // |h'_1...h'_r - (h_1...h_r) a^{-1}|_max
};

/// u_1 = e, u_{i+1} = a_i kappa_i(u_i). Throws InternalError if the product
/// identity fails by more than 1e-11.
inline TwistChain change_twist_chain(const std::vector<CMatrix>& a_list, const std::vector<const TwistRealization*>& kappas,
                                     const std::vector<CMatrix>& h_list) {
  const std::size_t r = a_list.size();
  if (kappas.size() != r || h_list.size() != r || r == 0) throw ValidationError("change_twist_chain: list lengths differ");
  const auto n = kappas.front()->n();
  for (const auto* k : kappas)
    if (k->n() != n) throw ValidationError("change_twist_chain: twists act on different SU(N)");
  TwistChain out;
  out.u.push_back(CMatrix::Identity(n, n));
  for (std::size_t i = 0; i < r; ++i) out.u.push_back(a_list[i] * kappas[i]->apply(out.u[i]));
  out.a = out.u.back();
  CMatrix lhs = CMatrix::Identity(n, n), prod = CMatrix::Identity(n, n);
  for (std::size_t i = 0; i < r; ++i) {
    out.h_prime.push_back(twisted_conjugate(out.u[i], h_list[i], *kappas[i]) * a_list[i].adjoint());
    lhs *= out.h_prime.back();
    prod *= h_list[i];
  }
  out.residual = max_abs(lhs - prod * out.a.adjoint());
  if (out.residual > kIdentityResidual)
    throw InternalError("change_twist_chain: product identity violated, residual " + std::to_string(out.residual));
  return out;
}

struct HolonomyProduct {
  std::vector<CMatrix> g;
  std::vector<CMatrix> d;   // the d_i used, with d_r solved
  double residual = 0;      // |g_1...g_r - I|_max
  double class_error = 0;   // max_i |q(g_i) - q(d_i)|
};

/// Checks that kappa_r ... kappa_1 is the identity on ten random matrices.
inline bool composition_is_identity(const std::vector<const TwistRealization*>& kappas, std::uint64_t seed = 17) {
  Rng rng(seed);
  const auto n = kappas.front()->n();
  for (int t = 0; t < 10; ++t) {
    const CMatrix x = haar_matrix(n, rng);
    CMatrix y = x;
    for (const auto* k : kappas) y = k->apply(y);
    if (max_abs(y - x) > 1e-10) return false;
  }
  return true;
}

/// a'_1 = a_1, a'_i = kappa_{i-1}(...kappa_1(a_i)) for i < r, a'_r = e;
/// g_i = a'_i d_i kappa_i(a'_i^{-1}), with d_r chosen so that g_1...g_r = e.
/// d_list may hold r - 1 entries or r (the last is then replaced by the solved value).
inline HolonomyProduct holonomy_product_setup(const std::vector<const TwistRealization*>& kappas, const std::vector<CMatrix>& d_list,
                                              const std::vector<CMatrix>& a_list) {
  const std::size_t r = kappas.size();
  if (r < 2) throw ValidationError("holonomy_product_setup: need at least two boundary circles");
  if (a_list.size() != r - 1) throw ValidationError("holonomy_product_setup: need r - 1 elements a_i");
  if (d_list.size() != r - 1 && d_list.size() != r) throw ValidationError("holonomy_product_setup: need r - 1 or r elements d_i");
  const auto n = kappas.front()->n();
  for (const auto* k : kappas)
    if (k->n() != n) throw ValidationError("holonomy_product_setup: twists act on different SU(N)");
  if (!composition_is_identity(kappas)) throw ValidationError("holonomy_product_setup: twists do not compose to the identity");

  HolonomyProduct out;
  CMatrix prod = CMatrix::Identity(n, n);
  for (std::size_t i = 0; i + 1 < r; ++i) {
    CMatrix ap = a_list[i];
    for (std::size_t j = 0; j < i; ++j) ap = kappas[j]->apply(ap);
    out.d.push_back(d_list[i]);
    out.g.push_back(twisted_conjugate(ap, d_list[i], *kappas[i]));
    prod *= out.g.back();
  }
  out.d.push_back(prod.adjoint());
  out.g.push_back(out.d.back());
  out.residual = max_abs(prod * out.g.back() - CMatrix::Identity(n, n));
  for (std::size_t i = 0; i < r; ++i) {
    const auto qg = class_point(out.g[i], *kappas[i]);
    const auto qd = class_point(out.d[i], *kappas[i]);
    for (std::size_t c = 0; c < qg.coords.size(); ++c) out.class_error = std::max(out.class_error, std::abs(qg.coords[c] - qd.coords[c]));
  }
  if (out.residual > kIdentityResidual)
    throw InternalError("holonomy_product_setup: product is not the identity, residual " + std::to_string(out.residual));
  if (out.class_error > 1e-8)
    throw InternalError("holonomy_product_setup: g_i left the class of d_i by " + std::to_string(out.class_error));
  return out;
}

}  // namespace twistcvx
