#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "twistcvx/rational.hpp"

namespace twistcvx {

/// Affine half-space <normal, xi> <= offset. The normal lives in the ambient
/// coordinates of t and is tangent to the alcove's subspace.
struct Halfspace {
  RVec normal;
  Rational offset;
};

/// A compact convex polytope in a rational subspace of the ambient space,
/// stored as an irredundant H-representation. Used both for the ordinary Weyl
/// alcove and for twisted alcoves; the halfspaces double as the reflection
/// walls used by folding.
class TwistedAlcove {
 public:
  TwistedAlcove() = default;

  /// `basis` spans the subspace; `functionals` are dual to it
  /// (<functionals[i], basis[j]> = delta_ij), giving point coordinates.
  TwistedAlcove(std::vector<RVec> basis, std::vector<RVec> functionals, std::vector<Halfspace> halfspaces,
                std::vector<RVec> lattice_basis)
      : basis_(std::move(basis)),
        functionals_(std::move(functionals)),
        halfspaces_(std::move(halfspaces)),
        lattice_basis_(std::move(lattice_basis)) {
    if (basis_.empty()) throw ValidationError("alcove: subspace must have positive dimension");
    ambient_dim_ = basis_.front().size();
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = 0; j < basis_.size(); ++j)
        if (dot(functionals_[i], basis_[j]) != (i == j ? 1 : 0))
          throw InternalError("alcove: coordinate functionals are not dual to the basis");
    projector_ = orthogonal_projector(basis_, ambient_dim_);
    cache_doubles();
  }

  std::size_t dimension() const { return basis_.size(); }
  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<RVec>& basis() const { return basis_; }
  const std::vector<RVec>& coordinate_functionals() const { return functionals_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const std::vector<Halfspace>& walls() const { return halfspaces_; }
  const std::vector<RVec>& lattice_basis() const { return lattice_basis_; }
  const RMatrix& projector() const { return projector_; }

  RVec coords(const RVec& xi) const {
    RVec c;
    for (const auto& f : functionals_) c.push_back(dot(f, xi));
    return c;
  }

  RVec ambient(const RVec& coords) const {
    RVec xi(ambient_dim_, Rational(0));
    for (std::size_t k = 0; k < coords.size(); ++k) xi = xi + coords[k] * basis_[k];
    return xi;
  }

  std::vector<double> coords(std::span<const double> xi) const {
    std::vector<double> c(dimension(), 0.0);
    for (std::size_t k = 0; k < dimension(); ++k)
      for (std::size_t i = 0; i < ambient_dim_; ++i) c[k] += functionals_d_[k][i] * xi[i];
    return c;
  }

  std::vector<double> ambient(std::span<const double> coords) const {
    std::vector<double> xi(ambient_dim_, 0.0);
    for (std::size_t k = 0; k < dimension(); ++k)
      for (std::size_t i = 0; i < ambient_dim_; ++i) xi[i] += coords[k] * basis_d_[k][i];
    return xi;
  }

  std::vector<double> project(std::span<const double> xi) const {
    std::vector<double> out(ambient_dim_, 0.0);
    for (std::size_t i = 0; i < ambient_dim_; ++i)
      for (std::size_t j = 0; j < ambient_dim_; ++j) out[i] += projector_d_[i * ambient_dim_ + j] * xi[j];
    return out;
  }

  /// Euclidean distance from xi to the alcove's linear subspace.
  double distance_to_subspace(std::span<const double> xi) const {
    const auto p = project(xi);
    double s = 0;
    for (std::size_t i = 0; i < ambient_dim_; ++i) s += (xi[i] - p[i]) * (xi[i] - p[i]);
    return std::sqrt(s);
  }

  /// Signed distance of xi past wall j (positive = outside).
  double wall_excess(std::size_t j, std::span<const double> xi) const {
    double v = -offsets_d_[j];
    for (std::size_t i = 0; i < ambient_dim_; ++i) v += normals_d_[j][i] * xi[i];
    return v / normal_norms_[j];
  }

  /// max_j of wall_excess; <= 0 iff xi is inside.
  double max_violation(std::span<const double> xi) const {
    double worst = -INFINITY;
    for (std::size_t j = 0; j < halfspaces_.size(); ++j) worst = std::max(worst, wall_excess(j, xi));
    return worst;
  }

  bool contains(std::span<const double> xi, double slack) const { return max_violation(xi) <= slack; }

  bool contains(const RVec& xi) const {
    for (const auto& h : halfspaces_)
      if (dot(h.normal, xi) > h.offset) return false;
    return true;
  }

  /// Reflects xi across wall j in place.
  void reflect(std::size_t j, std::span<double> xi) const {
    double v = -offsets_d_[j];
    for (std::size_t i = 0; i < ambient_dim_; ++i) v += normals_d_[j][i] * xi[i];
    const double f = 2.0 * v / (normal_norms_[j] * normal_norms_[j]);
    for (std::size_t i = 0; i < ambient_dim_; ++i) xi[i] -= f * normals_d_[j][i];
  }

  /// Exact vertices (ambient coordinates).
  std::vector<RVec> vertices() const;

 private:
  void cache_doubles() {
    basis_d_.clear();
    functionals_d_.clear();
    normals_d_.clear();
    offsets_d_.clear();
    normal_norms_.clear();
    for (const auto& b : basis_) basis_d_.push_back(to_double(b));
    for (const auto& f : functionals_) functionals_d_.push_back(to_double(f));
    for (const auto& h : halfspaces_) {
      normals_d_.push_back(to_double(h.normal));
      offsets_d_.push_back(to_double(h.offset));
      normal_norms_.push_back(std::sqrt(to_double(dot(h.normal, h.normal))));
    }
    projector_d_ = projector_.to_double_row_major();
  }

  std::size_t ambient_dim_ = 0;
  std::vector<RVec> basis_;
  std::vector<RVec> functionals_;
  std::vector<Halfspace> halfspaces_;
  std::vector<RVec> lattice_basis_;
  RMatrix projector_;

  std::vector<std::vector<double>> basis_d_, functionals_d_, normals_d_;
  std::vector<double> offsets_d_, normal_norms_, projector_d_;
};

namespace detail {

/// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Exact vertex enumeration of {x in Q^d : a_j . x <= c_j}. Brute force over
/// d-subsets of constraints; fine for the handful of walls an alcove has.
inline std::vector<RVec> polytope_vertices(const std::vector<RVec>& a, const std::vector<Rational>& c) {
  std::vector<RVec> out;
  if (a.empty()) return out;
  const std::size_t d = a.front().size();
  for_each_subset(a.size(), d, [&](const std::vector<std::size_t>& idx) {
    RMatrix m(d, d);
    RVec rhs(d);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t k = 0; k < d; ++k) m(r, k) = a[idx[r]][k];
      rhs[r] = c[idx[r]];
    }
    auto x = solve(m, rhs);
    if (!x) return;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (dot(a[j], *x) > c[j]) return;
    if (std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(*x);
  });
  return out;
}

/// max obj.z subject to a z <= b, z >= 0, where b >= 0 (so z = 0 is feasible).
/// Exact tableau simplex with Bland's rule; nullopt when unbounded.
inline std::optional<Rational> simplex_max(const std::vector<RVec>& a, const RVec& b, const RVec& obj) {
  const std::size_t m = a.size(), n = obj.size(), width = n + m + 1;
  std::vector<RVec> t(m, RVec(width, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][width - 1] = b[i];
    basis[i] = n + i;
  }
  RVec cost(width, Rational(0));
  for (std::size_t j = 0; j < n; ++j) cost[j] = -obj[j];
  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) return cost[width - 1];
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      const Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) return std::nullopt;
    const Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
}

/// Indices of the irredundant constraints of {a_j . x <= c_j}, given a point
/// strictly inside every constraint. Constraint j is kept iff maximizing
/// a_j . x over the others exceeds c_j.
inline std::vector<std::size_t> irredundant_indices(const std::vector<RVec>& a, const std::vector<Rational>& c,
                                                    const RVec& interior) {
  std::vector<std::size_t> keep;
  const std::size_t d = interior.size();
  for (std::size_t j = 0; j < a.size(); ++j) {
    // x = interior + y+ - y-
    std::vector<RVec> rows;
    RVec rhs;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == j) continue;
      RVec row(2 * d);
      for (std::size_t k = 0; k < d; ++k) {
        row[k] = a[i][k];
        row[d + k] = -a[i][k];
      }
      const Rational slack = c[i] - dot(a[i], interior);
      if (slack <= 0) throw InternalError("irredundant_indices: point is not strictly interior");
      rows.push_back(std::move(row));
      rhs.push_back(slack);
    }
    RVec obj(2 * d);
    for (std::size_t k = 0; k < d; ++k) {
      obj[k] = a[j][k];
      obj[d + k] = -a[j][k];
    }
    const auto best = simplex_max(rows, rhs, obj);
    if (!best || *best > c[j] - dot(a[j], interior)) keep.push_back(j);
  }
  return keep;
}

}  // namespace detail

inline std::vector<RVec> TwistedAlcove::vertices() const {
  std::vector<RVec> a;
  std::vector<Rational> c;
  for (const auto& h : halfspaces_) {
    RVec row;
    for (const auto& b : basis_) row.push_back(dot(h.normal, b));
    a.push_back(std::move(row));
    c.push_back(h.offset);
  }
  std::vector<RVec> out;
  for (const auto& x : detail::polytope_vertices(a, c)) out.push_back(ambient(x));
  return out;
}

}  // namespace twistcvx
