#pragma once

// Root data of types A_l and D_l in ambient coordinates, Weyl group
// enumeration, folding into the dominant chamber and the ordinary alcove.
//
//   A_l : R^{l+1}, coordinate sum zero,  alpha_i = e_i - e_{i+1}
//   D_l : R^l,  alpha_i = e_i - e_{i+1} (i < l),  alpha_l = e_{l-1} + e_l
//
// Both families are simply laced, so coroots coincide with roots and the
// pairing is the dot product.

#include <cctype>
#include <cstddef>
#include <deque>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

#include "twistcvx/alcove.hpp"
#include "twistcvx/rational.hpp"

namespace twistcvx {

enum class Family { A, D };

struct RootDatum {
  Family family = Family::A;
  int rank = 0;
  std::size_t ambient_dim = 0;
  std::vector<RVec> simple_roots;
  std::vector<RVec> simple_coroots;
  std::vector<std::vector<int>> cartan_matrix;  // [i][j] = <alpha_j, alpha_i^vee>
  RVec highest_root;
  std::vector<RVec> fundamental_coweights;  // <alpha_i, omega_j^vee> = delta_ij, inside t

  std::string name() const { return std::string(family == Family::A ? "A" : "D") + std::to_string(rank); }

  /// True if v lies in t (type A: coordinate sum zero).
  bool in_t(const RVec& v) const {
    if (family != Family::A) return true;
    Rational s = 0;
    for (const auto& x : v) s += x;
    return s == 0;
  }
};

/// An element of W acting on the ambient space. `word` lists simple
/// reflection indices, leftmost first: w = s_{word[0]} s_{word[1]} ...
struct WeylElement {
  RMatrix matrix;
  std::vector<int> word;

  std::size_t length() const { return word.size(); }
};

inline RMatrix simple_reflection(const RootDatum& datum, int i) {
  const std::size_t m = datum.ambient_dim;
  RMatrix s = RMatrix::identity(m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) s(r, c) -= datum.simple_coroots[i][r] * datum.simple_roots[i][c];
  return s;
}

inline RootDatum build_root_datum(Family family, int rank) {
  RootDatum d;
  d.family = family;
  d.rank = rank;
  if (family == Family::A) {
    if (rank < 1) throw ConfigError("A_l requires rank >= 1");
    d.ambient_dim = static_cast<std::size_t>(rank) + 1;
    for (int i = 0; i < rank; ++i) {
      RVec a(d.ambient_dim, Rational(0));
      a[i] = 1;
      a[i + 1] = -1;
      d.simple_roots.push_back(a);
    }
    d.highest_root = RVec(d.ambient_dim, Rational(0));
    d.highest_root.front() = 1;
    d.highest_root.back() = -1;
  } else {
    if (rank < 3) throw ConfigError("D_l requires rank >= 3");
    d.ambient_dim = static_cast<std::size_t>(rank);
    for (int i = 0; i + 1 < rank; ++i) {
      RVec a(d.ambient_dim, Rational(0));
      a[i] = 1;
      a[i + 1] = -1;
      d.simple_roots.push_back(a);
    }
    RVec last(d.ambient_dim, Rational(0));
    last[rank - 2] = 1;
    last[rank - 1] = 1;
    d.simple_roots.push_back(last);
    d.highest_root = RVec(d.ambient_dim, Rational(0));
    d.highest_root[0] = 1;
    d.highest_root[1] = 1;
  }
  for (const auto& a : d.simple_roots) d.simple_coroots.push_back((2 / dot(a, a)) * a);

  const auto l = static_cast<std::size_t>(rank);
  d.cartan_matrix.assign(l, std::vector<int>(l, 0));
  RMatrix c(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      c(i, j) = dot(d.simple_roots[j], d.simple_coroots[i]);
      d.cartan_matrix[i][j] = c(i, j).convert_to<int>();
    }
  // omega_i = sum_k (C^{-1})_{ik} alpha_k^vee
  const auto cinv = inverse(c);
  if (!cinv) throw InternalError("singular Cartan matrix");
  for (std::size_t i = 0; i < l; ++i) {
    RVec w(d.ambient_dim, Rational(0));
    for (std::size_t k = 0; k < l; ++k) w = w + (*cinv)(i, k) * d.simple_coroots[k];
    d.fundamental_coweights.push_back(w);
  }
  return d;
}

/// Parses "A2", "D4", ... (case-insensitive family letter).
inline RootDatum parse_group(const std::string& text) {
  if (text.size() < 2) throw ConfigError("bad group '" + text + "'");
  const char f = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  int rank = 0;
  try {
    std::size_t used = 0;
    rank = std::stoi(text.substr(1), &used);
    if (used != text.size() - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ConfigError("bad group '" + text + "'");
  }
  if (f == 'A') return build_root_datum(Family::A, rank);
  if (f == 'D') return build_root_datum(Family::D, rank);
  throw ConfigError("unsupported family in '" + text + "' (only A and D)");
}

inline std::size_t num_positive_roots(const RootDatum& d) {
  const auto l = static_cast<std::size_t>(d.rank);
  return d.family == Family::A ? l * (l + 1) / 2 : l * (l - 1);
}

/// Sum of fundamental coweights; regular and dominant.
inline RVec rho_vee(const RootDatum& d) {
  RVec r(d.ambient_dim, Rational(0));
  for (const auto& w : d.fundamental_coweights) r = r + w;
  return r;
}

/// All roots, as the W-orbit of the simple roots.
inline std::vector<RVec> all_roots(const RootDatum& d) {
  std::vector<RVec> roots;
  std::deque<RVec> queue(d.simple_roots.begin(), d.simple_roots.end());
  std::map<RVec, bool> seen;
  for (const auto& a : d.simple_roots) seen[a] = true;
  roots.assign(d.simple_roots.begin(), d.simple_roots.end());
  while (!queue.empty()) {
    RVec b = queue.front();
    queue.pop_front();
    for (int i = 0; i < d.rank; ++i) {
      RVec img = b - dot(b, d.simple_coroots[i]) * d.simple_roots[i];
      if (seen.emplace(img, true).second) {
        roots.push_back(img);
        queue.push_back(img);
      }
    }
  }
  return roots;
}

/// Breadth-first closure over simple reflections. Elements come out in order
/// of nondecreasing length with shortest words.
inline std::vector<WeylElement> generate_weyl_group(const RootDatum& d, std::size_t cap = 1'000'000) {
  const RVec probe = rho_vee(d);
  std::vector<RMatrix> gens;
  for (int i = 0; i < d.rank; ++i) gens.push_back(simple_reflection(d, i));

  std::vector<WeylElement> group;
  std::map<RVec, std::size_t> index;
  group.push_back({RMatrix::identity(d.ambient_dim), {}});
  index.emplace(probe, 0);
  for (std::size_t head = 0; head < group.size(); ++head) {
    for (int i = 0; i < d.rank; ++i) {
      RMatrix m = gens[i] * group[head].matrix;
      RVec key = m * probe;
      if (index.count(key)) continue;
      if (group.size() >= cap) throw ResourceError("Weyl group of " + d.name() + " exceeds cap " + std::to_string(cap));
      std::vector<int> word{i};
      word.insert(word.end(), group[head].word.begin(), group[head].word.end());
      index.emplace(std::move(key), group.size());
      group.push_back({std::move(m), std::move(word)});
    }
  }
  return group;
}

template <class Scalar>
struct ChamberFold {
  std::vector<Scalar> dominant;
  WeylElement w;
};

namespace detail {
inline Rational pair(const RVec& a, const RVec& v) { return dot(a, v); }
inline double pair(const RVec& a, const std::vector<double>& v) {
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (a[i] != 0) s += to_double(a[i]) * v[i];
  return s;
}
}  // namespace detail

/// Moves theta into the closed dominant chamber by simple reflections,
/// always reflecting across the lowest-index negative wall. Returns theta+
/// and w with theta+ = w theta.
template <class Scalar>
ChamberFold<Scalar> fold_to_chamber(const RootDatum& d, std::vector<Scalar> theta) {
  if (theta.size() != d.ambient_dim) throw ValidationError("fold_to_chamber: dimension mismatch");
  std::vector<int> applied;
  RMatrix w = RMatrix::identity(d.ambient_dim);
  const std::size_t max_steps = 4 * num_positive_roots(d) + 16;
  while (true) {
    int neg = -1;
    for (int i = 0; i < d.rank; ++i)
      if (detail::pair(d.simple_roots[i], theta) < 0) {
        neg = i;
        break;
      }
    if (neg < 0) break;
    if (applied.size() > max_steps) throw NumericError("fold_to_chamber: no convergence");
    const Scalar f = detail::pair(d.simple_roots[neg], theta);
    for (std::size_t k = 0; k < theta.size(); ++k) {
      if constexpr (std::is_same_v<Scalar, double>)
        theta[k] -= f * to_double(d.simple_coroots[neg][k]);
      else
        theta[k] -= f * d.simple_coroots[neg][k];
    }
    w = simple_reflection(d, neg) * w;
    applied.insert(applied.begin(), neg);
  }
  return {std::move(theta), WeylElement{std::move(w), std::move(applied)}};
}

/// The ordinary Weyl alcove {<alpha_i, xi> >= 0, <highest root, xi> <= 1},
/// coordinatized by xi -> (<alpha_i, xi>)_i.
inline TwistedAlcove untwisted_alcove(const RootDatum& d) {
  std::vector<Halfspace> hs;
  for (const auto& a : d.simple_roots) hs.push_back({-a, Rational(0)});
  hs.push_back({d.highest_root, Rational(1)});
  std::vector<RVec> lattice;
  {
    std::vector<std::vector<Integer>> rows;
    for (const auto& c : d.simple_coroots) {
      std::vector<Integer> row;
      for (const auto& a : d.simple_roots) row.push_back(boost::multiprecision::numerator(dot(a, c)));
      rows.push_back(row);
    }
    for (const auto& row : hermite_basis(rows)) {
      RVec v(d.ambient_dim, Rational(0));
      for (std::size_t k = 0; k < row.size(); ++k) v = v + Rational(row[k]) * d.fundamental_coweights[k];
      lattice.push_back(v);
    }
  }
  return TwistedAlcove(d.fundamental_coweights, d.simple_roots, std::move(hs), std::move(lattice));
}

}  // namespace twistcvx
