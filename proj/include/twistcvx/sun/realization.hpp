#pragma once

// Matrix realization of a type A diagram automorphism on SU(N):
// kappa(g) = P conj(g) P^{-1} with P the antidiagonal permutation matrix, or
// the identity map for the trivial node permutation.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "twistcvx/rootsys.hpp"
#include "twistcvx/sun/unitary.hpp"
#include "twistcvx/twist.hpp"

namespace twistcvx {

class TwistRealization {
 public:
  explicit TwistRealization(TwistData tw)
      : tw_(std::make_shared<const TwistData>(std::move(tw))),
        alcove_(std::make_shared<const TwistedAlcove>(build_twisted_alcove(*tw_))),
        untwisted_(std::make_shared<const TwistedAlcove>(untwisted_alcove(tw_->base))) {
    if (tw_->base.family != Family::A) throw ConfigError("matrix realization exists only for type A (SU(N))");
    n_ = static_cast<Eigen::Index>(tw_->base.ambient_dim);
    identity_ = tw_->is_identity();
    if (!identity_) {
      for (int i = 0; i < tw_->base.rank; ++i)
        if (tw_->node_permutation[i] != tw_->base.rank - 1 - i)
          throw ConfigError("type A twist must be the identity or the diagram flip");
    }
    for (const auto& v : alcove_->vertices()) alcove_radius_ = std::max(alcove_radius_, std::sqrt(to_double(dot(v, v))));
  }

  /// "A2" + "flip" style construction.
  static TwistRealization create(const std::string& group, const std::string& twist) {
    return TwistRealization(parse_twist(parse_group(group), twist));
  }

  Eigen::Index n() const { return n_; }
  int order() const { return tw_->order; }
  bool is_identity() const { return identity_; }
  const TwistData& data() const { return *tw_; }
  const TwistedAlcove& alcove() const { return *alcove_; }
  const TwistedAlcove& untwisted_alcove_ref() const { return *untwisted_; }
  /// Largest norm of a twisted alcove vertex.
  double alcove_radius() const { return alcove_radius_; }

  /// kappa(g), for group elements and (by linearity over R) for su(N).
  CMatrix apply(const CMatrix& g) const {
    if (identity_) return g;
    return g.conjugate().reverse();  // P conj(g) P with P the antidiagonal flip
  }

  UnitaryElement operator()(const UnitaryElement& g) const { return UnitaryElement(apply(g.matrix())); }

 private:
  std::shared_ptr<const TwistData> tw_;
  std::shared_ptr<const TwistedAlcove> alcove_;
  std::shared_ptr<const TwistedAlcove> untwisted_;
  Eigen::Index n_ = 0;
  bool identity_ = true;
  double alcove_radius_ = 0;
};

/// Ad^(kappa)_h(g) = h g kappa(h^{-1}).
inline CMatrix twisted_conjugate(const CMatrix& h, const CMatrix& g, const TwistRealization& k) {
  if (h.rows() != k.n() || g.rows() != k.n()) throw ValidationError("twisted_conjugate: size mismatch");
  return h * g * k.apply(h).adjoint();
}

inline UnitaryElement twisted_conjugate(const UnitaryElement& h, const UnitaryElement& g, const TwistRealization& k) {
  return UnitaryElement(twisted_conjugate(h.matrix(), g.matrix(), k));
}

/// g kappa(g); intertwines twisted conjugation with ordinary conjugation.
inline CMatrix square_map(const CMatrix& g, const TwistRealization& k) {
  if (k.order() != 2) throw ValidationError("square_map needs an order-2 twist");
  return g * k.apply(g);
}

inline UnitaryElement square_map(const UnitaryElement& g, const TwistRealization& k) {
  return UnitaryElement(square_map(g.matrix(), k));
}

struct LatticeCheck {
  std::vector<double> generator;   // lambda
  std::vector<long long> coroot;   // n with lambda - n in t_kappa
  double fixed_residual = 0;       // |kappa(exp lambda) - exp lambda|_max
  double moved_residual = 0;       // |exp(lambda) - exp(lambda - n)|_max
  bool ok = false;
};

/// Checks exp(lambda) in T^kappa cap T_kappa for every generator of
/// Lambda^(kappa): kappa-fixed, and equal to exp of a point of t_kappa obtained
/// by subtracting a coroot-lattice vector (found by search in a small box).
inline std::vector<LatticeCheck> verify_lattice(const TwistRealization& k, int box = 3) {
  const TwistData& tw = k.data();
  const std::size_t m = tw.base.ambient_dim;
  std::vector<LatticeCheck> out;
  for (const auto& lam : tw.lattice_twisted_basis) {
    LatticeCheck c;
    c.generator = to_double(lam);
    const CMatrix e = torus_exp_matrix(c.generator);
    c.fixed_residual = max_abs(k.apply(e) - e);
    // search n = sum_i c_i alpha_i^vee with lambda - n orthogonal to t^kappa
    const std::size_t l = tw.base.simple_coroots.size();
    std::vector<int> coeff(l, -box);
    bool found = false;
    while (!found) {
      RVec n(m, Rational(0));
      for (std::size_t i = 0; i < l; ++i) n = n + Rational(coeff[i]) * tw.base.simple_coroots[i];
      const RVec diff = lam - n;
      bool moved = true;
      for (const auto& f : tw.t_fixed_basis) moved = moved && dot(f, diff) == 0;
      if (moved) {
        found = true;
        for (const auto& x : n) c.coroot.push_back(boost::multiprecision::numerator(x).convert_to<long long>());
        c.moved_residual = max_abs(e - torus_exp_matrix(to_double(diff)));
      }
      std::size_t i = 0;
      while (i < l && coeff[i] == box) coeff[i++] = -box;
      if (i == l) break;
      ++coeff[i];
    }
    c.ok = found && c.fixed_residual <= 1e-12 && c.moved_residual <= 1e-12;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace twistcvx
