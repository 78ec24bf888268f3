#pragma once

// Diagram automorphisms kappa of a root datum and the data they determine on
// the Cartan subalgebra: the fixed subspace t^kappa, its complement t_kappa,
// the lattice Lambda^(kappa) (projection of the coroot lattice onto t^kappa),
// the centralizer W^kappa, and the twisted alcove, a fundamental domain for
// the affine reflection group Lambda^(kappa) x| W^kappa acting on t^kappa.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "twistcvx/alcove.hpp"
#include "twistcvx/rational.hpp"
#include "twistcvx/rootsys.hpp"

namespace twistcvx {

struct TwistData {
  RootDatum base;
  std::vector<int> node_permutation;  // 0-based: node i -> node_permutation[i]
  RMatrix kappa_t;                    // ambient matrix, alpha_i^vee -> alpha_{i'}^vee
  int order = 1;
  std::vector<std::vector<int>> orbits;        // node orbits, sorted by smallest node
  std::vector<RVec> t_fixed_basis;             // orbit averages of fundamental coweights
  std::vector<RVec> coordinate_functionals;    // orbit sums of simple roots (dual to the above)
  std::vector<RVec> t_moved_basis;             // basis of ran(kappa - I) on t
  std::vector<RVec> lattice_twisted_basis;     // Lambda^(kappa)
  std::vector<WeylElement> weyl_centralizer;   // W^kappa

  bool is_identity() const {
    for (std::size_t i = 0; i < node_permutation.size(); ++i)
      if (node_permutation[i] != static_cast<int>(i)) return false;
    return true;
  }
};

/// Orbit averages of the simple coroots, reduced to a lattice basis. These
/// generate the orthogonal projection of the coroot lattice onto t^kappa.
inline std::vector<RVec> project_lattice(const TwistData& tw) {
  const RootDatum& d = tw.base;
  std::vector<RVec> gens;
  for (const auto& orbit : tw.orbits)
    for (int i : orbit) {
      RVec avg(d.ambient_dim, Rational(0));
      for (int j : orbit) avg = avg + d.simple_coroots[j];
      gens.push_back(Rational(1, orbit.size()) * avg);
    }
  // coordinates in t_fixed_basis, cleared of denominators, Hermite-reduced
  std::vector<RVec> coords;
  for (const auto& g : gens) {
    RVec c;
    for (const auto& f : tw.coordinate_functionals) c.push_back(dot(f, g));
    coords.push_back(std::move(c));
  }
  Integer scale = 1;
  for (const auto& c : coords) scale = boost::multiprecision::lcm(scale, common_denominator(c));
  std::vector<std::vector<Integer>> rows;
  for (const auto& c : coords) {
    std::vector<Integer> row;
    for (const auto& x : c) row.push_back(boost::multiprecision::numerator(x * Rational(scale)));
    rows.push_back(std::move(row));
  }
  const auto hnf = hermite_basis(rows);
  if (hnf.size() != tw.t_fixed_basis.size()) throw InternalError("project_lattice: generators do not span t^kappa");
  std::vector<RVec> basis;
  for (const auto& row : hnf) {
    RVec v(d.ambient_dim, Rational(0));
    for (std::size_t k = 0; k < row.size(); ++k) v = v + (Rational(row[k]) / Rational(scale)) * tw.t_fixed_basis[k];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<WeylElement> centralizer_weyl(const TwistData& tw, std::size_t cap = 1'000'000) {
  std::vector<WeylElement> out;
  for (auto& w : generate_weyl_group(tw.base, cap))
    if (w.matrix * tw.kappa_t == tw.kappa_t * w.matrix) out.push_back(std::move(w));
  return out;
}

/// Builds kappa from a node permutation. Throws ValidationError naming the
/// first pair (i, j) whose Cartan integer is not preserved.
inline TwistData diagram_automorphism(const RootDatum& d, std::vector<int> perm, std::size_t weyl_cap = 1'000'000) {
  const auto l = static_cast<std::size_t>(d.rank);
  if (perm.size() != l) throw ValidationError("node permutation has wrong length for " + d.name());
  {
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < l; ++i)
      if (sorted[i] != static_cast<int>(i)) throw ValidationError("node map is not a permutation");
  }
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      if (d.cartan_matrix[i][j] != d.cartan_matrix[perm[i]][perm[j]]) {
        std::ostringstream msg;
        msg << "permutation does not preserve Cartan integers at pair (" << i + 1 << "," << j + 1 << ")";
        throw ValidationError(msg.str());
      }

  TwistData tw;
  tw.base = d;
  tw.node_permutation = perm;

  // kappa on the ambient space. For type A the extra direction (1,...,1) is
  // sent to -(1,...,1) when kappa is nontrivial, matching X -> -X^T.
  std::vector<RVec> src(d.simple_coroots.begin(), d.simple_coroots.end());
  std::vector<RVec> dst;
  for (std::size_t i = 0; i < l; ++i) dst.push_back(d.simple_coroots[perm[i]]);
  const bool trivial = tw.is_identity();
  if (d.family == Family::A) {
    RVec ones(d.ambient_dim, Rational(1));
    src.push_back(ones);
    dst.push_back(trivial ? ones : -ones);
  }
  const auto xinv = inverse(RMatrix::from_columns(src));
  if (!xinv) throw InternalError("coroots do not span the ambient space");
  tw.kappa_t = RMatrix::from_columns(dst) * (*xinv);
  if (!(tw.kappa_t.transpose() * tw.kappa_t == RMatrix::identity(d.ambient_dim)))
    throw InternalError("kappa is not orthogonal");
  {
    RMatrix p = tw.kappa_t;
    int k = 1;
    while (!(p == RMatrix::identity(d.ambient_dim))) {
      p = p * tw.kappa_t;
      if (++k > 12) throw InternalError("kappa has no finite order");
    }
    tw.order = k;
  }

  std::vector<bool> seen(l, false);
  for (std::size_t i = 0; i < l; ++i) {
    if (seen[i]) continue;
    std::vector<int> orbit;
    for (int j = static_cast<int>(i); !seen[j]; j = perm[j]) {
      seen[j] = true;
      orbit.push_back(j);
    }
    std::sort(orbit.begin(), orbit.end());
    tw.orbits.push_back(orbit);
  }
  for (const auto& orbit : tw.orbits) {
    RVec b(d.ambient_dim, Rational(0)), f(d.ambient_dim, Rational(0));
    for (int j : orbit) {
      b = b + d.fundamental_coweights[j];
      f = f + d.simple_roots[j];
    }
    b = Rational(1, orbit.size()) * b;
    if (tw.kappa_t * b != b) throw InternalError("orbit-averaged coweight is not kappa-fixed");
    tw.t_fixed_basis.push_back(std::move(b));
    tw.coordinate_functionals.push_back(std::move(f));
  }
  {
    std::vector<RVec> moved;
    for (const auto& c : d.simple_coroots) moved.push_back(tw.kappa_t * c - c);
    tw.t_moved_basis = span_basis(moved);
    for (const auto& m : tw.t_moved_basis)
      for (const auto& f : tw.t_fixed_basis)
        if (dot(m, f) != 0) throw InternalError("t^kappa is not orthogonal to t_kappa");
    if (tw.t_moved_basis.size() + tw.t_fixed_basis.size() != l)
      throw InternalError("t^kappa + t_kappa does not fill t");
  }
  tw.lattice_twisted_basis = project_lattice(tw);
  tw.weyl_centralizer = centralizer_weyl(tw, weyl_cap);
  return tw;
}

/// "identity", "flip" (the unique nontrivial automorphism of A_l, l >= 2) or
/// a 1-based list of node images such as "1,2,4,3".
inline TwistData parse_twist(const RootDatum& d, const std::string& text, std::size_t weyl_cap = 1'000'000) {
  const auto l = static_cast<std::size_t>(d.rank);
  std::vector<int> perm(l);
  if (text == "identity" || text == "id" || text == "1") {
    for (std::size_t i = 0; i < l; ++i) perm[i] = static_cast<int>(i);
  } else if (text == "flip") {
    if (d.family != Family::A || d.rank < 2) throw ConfigError("'flip' needs type A_l with l >= 2");
    for (std::size_t i = 0; i < l; ++i) perm[i] = static_cast<int>(l - 1 - i);
  } else {
    std::vector<int> images;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        images.push_back(std::stoi(item) - 1);
      } catch (const std::exception&) {
        throw ConfigError("bad twist '" + text + "'");
      }
    }
    if (images.size() != l) throw ConfigError("twist '" + text + "' has wrong length for " + d.name());
    perm = images;
  }
  try {
    return diagram_automorphism(d, perm, weyl_cap);
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("invalid twist: ") + e.what());
  }
}

struct AlcoveBuildOptions {
  double radius_factor = 3.0;  // R = factor * max generator norm of Lambda^(kappa)
  int max_doublings = 4;
  int max_probe_halvings = 64;
};

class RadiusTooSmall : public NumericError {
 public:
  using NumericError::NumericError;
};

namespace detail {

/// Scales (n, c) so the first nonzero entry of n is +1.
inline std::pair<RVec, Rational> canonical_hyperplane(const RVec& n, const Rational& c) {
  for (const auto& x : n)
    if (x != 0) {
      const Rational s = 1 / x;
      return {s * n, s * c};
    }
  throw InternalError("zero wall normal");
}

struct ReflectionWalls {
  std::map<RVec, std::set<Rational>> offsets;  // canonical normal -> offsets
};

inline TwistedAlcove build_twisted_alcove_once(const TwistData& tw, double radius, const AlcoveBuildOptions& opt) {
  const RootDatum& d = tw.base;
  const std::size_t dim = tw.t_fixed_basis.size();
  const RMatrix basis = RMatrix::from_columns(tw.t_fixed_basis);
  const RMatrix funcs = RMatrix::from_rows(tw.coordinate_functionals);

  // Distinct restrictions of W^kappa to t^kappa that are reflections.
  struct Refl {
    RMatrix restricted;
    RVec normal;
  };
  std::vector<Refl> refls;
  const RMatrix id = RMatrix::identity(dim);
  for (const auto& w : tw.weyl_centralizer) {
    RMatrix m = funcs * w.matrix * basis;
    if (!(m * m == id) || rank(id - m) != 1) continue;
    if (std::any_of(refls.begin(), refls.end(), [&](const Refl& r) { return r.restricted == m; })) continue;
    RVec n;
    for (const auto& b : tw.t_fixed_basis) {
      n = b - w.matrix * b;
      if (!is_zero(n)) break;
    }
    refls.push_back({std::move(m), std::move(n)});
  }
  if (refls.empty()) throw NumericError("twisted alcove: W^kappa contains no reflections on t^kappa");

  // Lattice vectors lambda with w lambda = -lambda lie on the line through the
  // reflection normal, so within the ball they are the multiples k * lambda_n
  // of the primitive lattice vector on that line with |k lambda_n| <= radius.
  const RMatrix lat = RMatrix::from_columns(tw.lattice_twisted_basis);
  const auto lat_gram_inv = inverse(lat.transpose() * lat);
  if (!lat_gram_inv) throw InternalError("twisted alcove: degenerate lattice basis");
  ReflectionWalls walls;
  for (const auto& r : refls) {
    const RVec c = (*lat_gram_inv) * (lat.transpose() * r.normal);
    if (lat * c != r.normal) throw InternalError("twisted alcove: wall normal outside t^kappa");
    const Integer den = common_denominator(c);
    Integer g = 0;
    for (const auto& x : c) g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(x * Rational(den)));
    const RVec primitive = Rational(den, g) * r.normal;
    const double step = std::sqrt(to_double(dot(primitive, primitive)));
    const auto reach = static_cast<long long>(std::floor(radius / step * (1 + 1e-12)));
    for (long long k = -reach; k <= reach; ++k) {
      const RVec lam = Rational(k) * primitive;
      auto [n, off] = canonical_hyperplane(r.normal, dot(r.normal, lam) / 2);
      walls.offsets[n].insert(off);
    }
  }

  // Probe point delta * b in the open chamber, off every hyperplane, with no
  // affine hyperplane separating it from the origin.
  RVec b(d.ambient_dim, Rational(0));
  for (const auto& v : tw.t_fixed_basis) b = b + v;
  Rational delta(1, 4);
  bool ok = false;
  for (int it = 0; it < opt.max_probe_halvings && !ok; ++it, delta /= 2) {
    const RVec probe = delta * b;
    ok = true;
    for (const auto& a : d.simple_roots)
      if (dot(a, probe) <= 0) ok = false;
    for (const auto& [n, offs] : walls.offsets) {
      const Rational p = dot(n, probe);
      for (const auto& c : offs) {
        if (p == c) ok = false;
        if (c != 0 && ((p > c) != (0 > c))) ok = false;
      }
    }
    if (ok) break;
  }
  if (!ok) throw NumericError("twisted alcove: degenerate twist, no admissible probe point");
  const RVec probe = delta * b;

  std::vector<Halfspace> candidates;
  bool any_affine = false;
  for (const auto& [n, offs] : walls.offsets) {
    const Rational p = dot(n, probe);
    std::optional<Rational> lower, upper;
    for (const auto& c : offs) {
      if (c != 0) any_affine = true;
      if (c < p && (!lower || c > *lower)) lower = c;
      if (c > p && (!upper || c < *upper)) upper = c;
    }
    if (!lower || !upper) {
      std::ostringstream msg;
      msg << "twisted alcove: radius " << radius << " too small, a wall direction is unbounded on one side";
      throw RadiusTooSmall(msg.str());
    }
    candidates.push_back({n, *upper});
    candidates.push_back({-n, -*lower});
  }
  if (!any_affine) {
    std::ostringstream msg;
    msg << "twisted alcove: no affine wall within radius " << radius;
    throw RadiusTooSmall(msg.str());
  }

  // Irredundant subset: constraints supporting a facet.
  std::vector<RVec> a;
  std::vector<Rational> c;
  for (const auto& h : candidates) {
    RVec row;
    for (const auto& v : tw.t_fixed_basis) row.push_back(dot(h.normal, v));
    a.push_back(std::move(row));
    c.push_back(h.offset);
  }
  if (rank(RMatrix::from_rows(a)) != dim) throw InternalError("twisted alcove: wall normals do not span t^kappa");
  std::vector<Halfspace> facets;
  for (auto j : irredundant_indices(a, c, funcs * probe)) facets.push_back(candidates[j]);
  std::sort(facets.begin(), facets.end(), [](const Halfspace& x, const Halfspace& y) {
    if ((x.offset == 0) != (y.offset == 0)) return x.offset == 0;
    if (x.normal != y.normal) return x.normal > y.normal;
    return x.offset < y.offset;
  });

  TwistedAlcove alc(tw.t_fixed_basis, tw.coordinate_functionals, std::move(facets), tw.lattice_twisted_basis);
  if (!alc.contains(RVec(d.ambient_dim, Rational(0)))) throw InternalError("twisted alcove does not contain the origin");
  return alc;
}

}  // namespace detail

/// Fundamental domain of Lambda^(kappa) x| W^kappa on t^kappa containing a
/// small multiple of the orbit-averaged rho^vee. Walls are the reflection
/// hyperplanes of the group found within a lattice radius that doubles on
/// failure.
inline TwistedAlcove build_twisted_alcove(const TwistData& tw, const AlcoveBuildOptions& opt = {}) {
  if (tw.t_fixed_basis.empty()) throw ValidationError("twisted alcove needs dim t^kappa >= 1");
  double max_norm = 0;
  for (const auto& g : tw.lattice_twisted_basis) max_norm = std::max(max_norm, std::sqrt(to_double(dot(g, g))));
  double radius = opt.radius_factor * max_norm;
  for (int attempt = 0;; ++attempt) {
    try {
      return detail::build_twisted_alcove_once(tw, radius, opt);
    } catch (const RadiusTooSmall&) {
      if (attempt >= opt.max_doublings) throw;
      radius *= 2;
    }
  }
}

struct FoldResult {
  std::vector<double> xi;      // ambient coordinates
  std::vector<double> coords;  // alcove coordinates
  int reflections = 0;
};

constexpr double kSubspaceTolerance = 1e-10;
constexpr double kAlcoveSlack = 1e-12;

/// Folds xi into the alcove by repeatedly reflecting across the most violated
/// wall (lowest index on ties).
inline FoldResult fold_to_twisted_alcove(const TwistedAlcove& alc, std::span<const double> xi, int max_reflections = 10'000) {
  if (xi.size() != alc.ambient_dim()) throw ValidationError("fold: dimension mismatch");
  if (alc.distance_to_subspace(xi) > kSubspaceTolerance)
    throw ValidationError("fold: point is not in t^kappa (distance " + std::to_string(alc.distance_to_subspace(xi)) + ")");
  FoldResult out;
  out.xi = alc.project(xi);
  const std::size_t walls = alc.halfspaces().size();
  while (true) {
    std::size_t worst = walls;
    double worst_excess = kAlcoveSlack;
    for (std::size_t j = 0; j < walls; ++j) {
      const double e = alc.wall_excess(j, out.xi);
      if (e > worst_excess) {
        worst_excess = e;
        worst = j;
      }
    }
    if (worst == walls) break;
    if (out.reflections >= max_reflections) throw NumericError("fold: reflection cap exceeded");
    alc.reflect(worst, out.xi);
    ++out.reflections;
  }
  out.coords = alc.coords(out.xi);
  return out;
}

inline FoldResult fold_coords(const TwistedAlcove& alc, std::span<const double> coords) {
  return fold_to_twisted_alcove(alc, alc.ambient(coords));
}

}  // namespace twistcvx
