#pragma once

// Monte-Carlo reconstruction of product-of-classes polytopes, support-function
// refinement, one-sided membership certification, and the Hermitian-sum
// (Horn) baseline.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "twistcvx/error.hpp"
#include "twistcvx/nelder_mead.hpp"
#include "twistcvx/rootsys.hpp"
#include "twistcvx/sun/class_point.hpp"
#include "twistcvx/sun/identities.hpp"
#include "twistcvx/sun/realization.hpp"
#include "twistcvx/sun/unitary.hpp"

namespace twistcvx {

constexpr double kCloudSlack = 1e-9;
constexpr double kMemberThreshold = 1e-6;
constexpr double kUnresolvedLimit = 1e-3;

using RealizationPtr = std::shared_ptr<const TwistRealization>;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of worker w under a master seed.
inline std::uint64_t worker_seed(std::uint64_t master, std::size_t worker) { return splitmix64(master ^ splitmix64(worker)); }

inline std::size_t default_workers() { return std::max<std::size_t>(1, std::thread::hardware_concurrency()); }

/// Runs task(i) for i in [0, count) on up to `workers` threads, worker w
/// taking the contiguous block [w*count/W, (w+1)*count/W). The first
/// exception (lowest worker) is rethrown after all threads join.
inline void run_blocks(std::size_t count, std::size_t workers, const std::function<void(std::size_t worker, std::size_t begin, std::size_t end)>& task) {
  workers = std::max<std::size_t>(1, workers);
  if (workers == 1) {
    task(0, 0, count);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          task(w, w * count / workers, (w + 1) * count / workers);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// h exp(xi) kappa(h)^{-1} for Haar h: a uniform point of the twisted class of xi.
inline CMatrix sample_class_matrix(const ClassPoint& xi, const TwistRealization& k, Rng& rng, CMatrix* h_out = nullptr) {
  const CMatrix h = haar_matrix(k.n(), rng);
  if (h_out) *h_out = h;
  return twisted_conjugate(h, torus_exp_matrix(xi.theta), k);
}

inline UnitaryElement sample_class_element(const ClassPoint& xi, const TwistRealization& k, Rng& rng) {
  if (k.alcove().max_violation(xi.theta) > kCloudSlack) throw ValidationError("sample_class_element: point outside the alcove");
  return UnitaryElement(sample_class_matrix(xi, k, rng));
}

inline std::string twist_label(const TwistRealization& k) { return k.is_identity() ? "identity" : "flip"; }

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Fixed classes xi_1..xi_{r-1} for twists kappa_1..kappa_{r-1}; the cloud
/// lives in the alcove of kappa_r.
class ProductProblem {
 public:
  ProductProblem(std::vector<RealizationPtr> twists, std::vector<ClassPoint> fixed)
      : twists_(std::move(twists)), fixed_(std::move(fixed)) {
    if (twists_.size() < 2) throw ValidationError("product problem: need at least two twists");
    if (fixed_.size() + 1 != twists_.size()) throw ValidationError("product problem: need r - 1 fixed class points");
    for (const auto& t : twists_)
      if (t->n() != twists_.front()->n()) throw ValidationError("product problem: twists act on different SU(N)");
    std::vector<const TwistRealization*> raw;
    for (const auto& t : twists_) raw.push_back(t.get());
    if (!composition_is_identity(raw)) throw ValidationError("product problem: twists do not compose to the identity");
    for (std::size_t i = 0; i < fixed_.size(); ++i)
      if (twists_[i]->alcove().max_violation(fixed_[i].theta) > kCloudSlack)
        throw ValidationError("product problem: fixed class point " + std::to_string(i + 1) + " is outside its alcove");
  }

  /// Convenience: xi_i given by alcove coordinates.
  static ProductProblem from_coords(std::vector<RealizationPtr> twists, const std::vector<std::vector<double>>& coords) {
    std::vector<ClassPoint> fixed;
    for (std::size_t i = 0; i < coords.size() && i < twists.size(); ++i) {
      const auto& alc = twists[i]->alcove();
      if (coords[i].size() != alc.dimension()) throw ValidationError("product problem: wrong number of coordinates");
      fixed.push_back({coords[i], alc.ambient(coords[i])});
    }
    return ProductProblem(std::move(twists), std::move(fixed));
  }

  std::size_t r() const { return twists_.size(); }
  Eigen::Index n() const { return twists_.front()->n(); }
  const std::vector<RealizationPtr>& twists() const { return twists_; }
  const std::vector<ClassPoint>& fixed() const { return fixed_; }
  const TwistRealization& target() const { return *twists_.back(); }

  std::string descriptor() const {
    std::string s = "SU(" + std::to_string(n()) + ");twists=";
    for (std::size_t i = 0; i < twists_.size(); ++i) s += (i ? "," : "") + twist_label(*twists_[i]);
    s += ";xi=";
    for (std::size_t i = 0; i < fixed_.size(); ++i) {
      s += i ? "|" : "";
      for (std::size_t c = 0; c < fixed_[i].coords.size(); ++c) s += (c ? "," : "") + format_double(fixed_[i].coords[c]);
    }
    return s;
  }

  /// FNV-1a of the descriptor.
  std::uint64_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : descriptor()) h = (h ^ c) * 0x100000001b3ULL;
    return h;
  }

  /// g_i = h_i exp(xi_i) kappa_i(h_i)^{-1}; returns g_1 ... g_{r-1}.
  CMatrix partial_product(std::span<const CMatrix> h) const {
    CMatrix g = CMatrix::Identity(n(), n());
    for (std::size_t i = 0; i < fixed_.size(); ++i) g *= twisted_conjugate(h[i], torus_exp_matrix(fixed_[i].theta), *twists_[i]);
    return g;
  }

  /// q^(kappa_r)((g_1...g_{r-1})^{-1}).
  ClassPoint image(std::span<const CMatrix> h) const { return class_point(CMatrix(partial_product(h).adjoint()), target()); }

 private:
  std::vector<RealizationPtr> twists_;
  std::vector<ClassPoint> fixed_;
};

struct SamplePoint {
  std::vector<double> coords;
  std::size_t worker = 0;
  std::uint64_t seed = 0;
  std::size_t index = 0;  // position in the worker's stream, or refinement direction
  bool refined = false;
};

struct SampleCloud {
  std::vector<SamplePoint> points;
  std::vector<std::vector<CMatrix>> witnesses;  // h_1..h_{r-1} per point (empty for clouds without them)
  std::uint64_t problem_hash = 0;
  std::size_t requested = 0;
  std::size_t unresolved = 0;

  void append(SamplePoint p, std::vector<CMatrix> w = {}) {
    points.push_back(std::move(p));
    witnesses.push_back(std::move(w));
  }
};

namespace detail {
/// Merges per-worker blocks in worker order.
inline void merge_blocks(SampleCloud& out, std::vector<SampleCloud>& blocks) {
  for (auto& b : blocks) {
    out.unresolved += b.unresolved;
    for (std::size_t i = 0; i < b.points.size(); ++i) out.append(std::move(b.points[i]), std::move(b.witnesses[i]));
  }
}

inline void check_unresolved(const SampleCloud& c) {
  if (c.requested > 0 && static_cast<double>(c.unresolved) > kUnresolvedLimit * static_cast<double>(c.requested))
    throw NumericError("sampler: " + std::to_string(c.unresolved) + " of " + std::to_string(c.requested) +
                       " samples could not be projected (limit 0.1%)");
}
}  // namespace detail

/// Draws g_i in the class of xi_i (i < r) and records q^(kappa_r)((g_1...g_{r-1})^{-1}).
/// Worker w uses worker_seed(master, w) for its block of samples.
inline SampleCloud product_image_sample(const ProductProblem& prob, std::size_t count, std::uint64_t master_seed,
                                        std::size_t workers = 1) {
  workers = std::max<std::size_t>(1, std::min(workers, std::max<std::size_t>(count, 1)));
  std::vector<SampleCloud> blocks(workers);
  run_blocks(count, workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    const std::uint64_t seed = worker_seed(master_seed, w);
    Rng rng(seed);
    SampleCloud& blk = blocks[w];
    std::vector<CMatrix> h(prob.r() - 1);
    for (std::size_t s = begin; s < end; ++s) {
      for (auto& hi : h) hi = haar_matrix(prob.n(), rng);
      try {
        ClassPoint q = prob.image(h);
        if (prob.target().alcove().max_violation(q.theta) > kCloudSlack) throw NumericError("projected point outside alcove");
        blk.append({std::move(q.coords), w, seed, s - begin, false}, h);
      } catch (const Error&) {
        ++blk.unresolved;
      }
    }
  });
  SampleCloud out;
  out.problem_hash = prob.hash();
  out.requested = count;
  detail::merge_blocks(out, blocks);
  detail::check_unresolved(out);
  return out;
}

struct SupportOptions {
  int budget = 2000;
  double step = 0.3;
};

inline double support_value(std::span<const double> u, std::span<const double> c) {
  double s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * c[i];
  return s;
}

/// Local maximization of <u, q(g^{-1})> over the h_i in the chart h_i0 exp(X_i),
/// warm-started at the cloud point maximizing <u, .>. Returns the warm start
/// itself when the search does not improve on it.
struct SupportResult {
  SamplePoint point;
  std::vector<CMatrix> witness;
  bool improved = false;
};

inline SupportResult support_search(const ProductProblem& prob, const SampleCloud& cloud, std::span<const double> u,
                                    const SupportOptions& opt = {}) {
  if (cloud.points.empty()) throw ValidationError("support_maximize: empty cloud");
  std::size_t best_i = cloud.points.size();
  double best_v = -INFINITY;
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    if (cloud.witnesses[i].empty()) continue;
    const double v = support_value(u, cloud.points[i].coords);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  if (best_i == cloud.points.size()) throw ValidationError("support_maximize: cloud carries no witnesses");
  SupportResult out{cloud.points[best_i], cloud.witnesses[best_i], false};
  if (opt.budget <= 0) return out;

  const auto basis = su_basis(prob.n());
  const std::size_t m = prob.r() - 1, dim = basis.size();
  std::vector<CMatrix> h0 = out.witness, h(m);
  auto chart = [&](std::span<const double> x) {
    for (std::size_t i = 0; i < m; ++i) h[i] = h0[i] * exp_skew_hermitian(su_element(basis, x.subspan(i * dim, dim)));
  };
  auto f = [&](std::span<const double> x) {
    chart(x);
    try {
      return -support_value(u, prob.image(h).coords);
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  int used = 0;
  double step = opt.step, best = -best_v;
  while (used < opt.budget) {
    MinimizeOptions mo;
    mo.step = step;
    mo.budget = opt.budget - used;
    mo.size_tolerance = 1e-9;
    const auto r = nelder_mead(f, std::vector<double>(m * dim, 0.0), mo);
    used += std::max(r.evaluations, 1);
    if (r.value < best - 1e-15) {
      best = r.value;
      chart(r.x);
      h0 = h;
    } else {
      step *= 0.3;
      if (step < 1e-6) break;
    }
  }
  if (best < -best_v - 1e-15) {
    const ClassPoint q = prob.image(h0);
    out.point.coords = q.coords;
    out.point.refined = true;
    out.witness = h0;
    out.improved = true;
  }
  return out;
}

/// Refines toward direction u and appends the result to the cloud if it improved.
inline SamplePoint support_maximize(const ProductProblem& prob, SampleCloud& cloud, std::span<const double> u,
                                    const SupportOptions& opt = {}) {
  auto r = support_search(prob, cloud, u, opt);
  if (r.improved) cloud.append(r.point, r.witness);
  return r.point;
}

/// Unit directions for refinement: a uniform angular fan in dimension 2,
/// +-1 in dimension 1, seeded Gaussian directions otherwise.
inline std::vector<std::vector<double>> direction_fan(std::size_t dim, std::size_t count, std::uint64_t seed = 1) {
  std::vector<std::vector<double>> dirs;
  if (dim == 1) {
    for (std::size_t i = 0; i < count; ++i) dirs.push_back({i % 2 == 0 ? 1.0 : -1.0});
  } else if (dim == 2) {
    for (std::size_t i = 0; i < count; ++i) {
      const double a = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
      dirs.push_back({std::cos(a), std::sin(a)});
    }
  } else {
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<double> v(dim);
      double s = 0;
      for (double& x : v) {
        x = rng.normal();
        s += x * x;
      }
      for (double& x : v) x /= std::sqrt(s);
      dirs.push_back(v);
    }
  }
  return dirs;
}

/// support_maximize along every direction of the fan. Each search starts from
/// the unrefined cloud, so results do not depend on scheduling; improved points
/// are appended in direction order.
inline std::size_t refine_cloud(const ProductProblem& prob, SampleCloud& cloud, std::size_t directions, const SupportOptions& opt,
                                std::size_t workers = 1) {
  if (directions == 0 || opt.budget <= 0) return 0;
  const auto dirs = direction_fan(prob.target().alcove().dimension(), directions);
  std::vector<SupportResult> results(dirs.size());
  workers = std::max<std::size_t>(1, std::min(workers, dirs.size()));
  run_blocks(dirs.size(), workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) results[i] = support_search(prob, cloud, dirs[i], opt);
  });
  std::size_t added = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].improved) continue;
    SamplePoint p = results[i].point;
    p.index = i;
    p.worker = i * workers / dirs.size();
    cloud.append(std::move(p), std::move(results[i].witness));
    ++added;
  }
  return added;
}

struct MembershipOptions {
  int budget = 2000;   // evaluations per restart
  int restarts = 8;
  std::uint64_t seed = 7;
  double step = 0.3;
};

struct MembershipResult {
  bool member = false;
  double residual = INFINITY;    // |g_1...g_r - I|_max of the best witness found
  std::vector<CMatrix> witness;  // h_1..h_r
  int evaluations = 0;
};

namespace detail {
/// min over permutations of sum |lambda_i - mu_pi(i)|^2.
inline double matching_distance(const Eigen::VectorXcd& lambda, const std::vector<Complex>& mu, std::vector<int>* perm_out = nullptr) {
  std::vector<int> p(mu.size());
  std::iota(p.begin(), p.end(), 0);
  double best = INFINITY;
  do {
    double s = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) s += std::norm(lambda(static_cast<Eigen::Index>(i)) - mu[p[i]]);
    if (s < best) {
      best = s;
      if (perm_out) *perm_out = p;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

/// Conjugate of exp(theta) closest to the normal matrix x: x = U T U^* (Schur),
/// then h = U P with P matching eigenvalues.
inline CMatrix aligning_conjugator(const CMatrix& x, const std::vector<double>& theta) {
  Eigen::ComplexSchur<CMatrix> schur(x);
  const auto& t = schur.matrixT();
  std::vector<Complex> mu;
  for (double a : theta) mu.push_back(std::polar(1.0, 2 * std::numbers::pi * a));
  std::vector<int> perm;
  matching_distance(t.diagonal(), mu, &perm);
  const auto n = x.rows();
  CMatrix p = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) p(perm[static_cast<std::size_t>(i)], i) = 1.0;
  // h = U Q with Q(i, perm[i]) = 1, so h exp(theta) h^* = U diag(mu_perm[i]) U^*
  CMatrix h = schur.matrixU() * p.transpose();
  const Complex det = h.determinant();
  return h * std::polar(1.0, -std::arg(det) / static_cast<double>(n));
}
}  // namespace detail

/// One-sided certification that classes xi_1..xi_r admit g_i with g_1...g_r = e.
/// With an identity final twist, h_r is eliminated: the objective is the
/// eigenvalue matching distance between (g_1...g_{r-1})^{-1} and exp(xi_r), and
/// h_r is rebuilt from a Schur decomposition. Otherwise all h_i are searched.
inline MembershipResult membership_test(const std::vector<ClassPoint>& xi, const std::vector<RealizationPtr>& twists,
                                        const MembershipOptions& opt = {}) {
  const std::size_t r = twists.size();
  if (r < 2 || xi.size() != r) throw ValidationError("membership_test: need r >= 2 twists and r class points");
  std::vector<const TwistRealization*> raw;
  for (const auto& t : twists) raw.push_back(t.get());
  if (!composition_is_identity(raw)) throw ValidationError("membership_test: twists do not compose to the identity");
  for (std::size_t i = 0; i < r; ++i)
    if (twists[i]->alcove().max_violation(xi[i].theta) > kCloudSlack)
      throw ValidationError("membership_test: class point " + std::to_string(i + 1) + " is outside its alcove");

  const auto n = twists.front()->n();
  const auto basis = su_basis(n);
  const std::size_t dim = basis.size();
  const bool reduced = twists.back()->is_identity();
  const std::size_t free = reduced ? r - 1 : r;
  std::vector<CMatrix> tori;
  for (const auto& x : xi) tori.push_back(torus_exp_matrix(x.theta));
  std::vector<Complex> mu;
  for (double a : xi.back().theta) mu.push_back(std::polar(1.0, 2 * std::numbers::pi * a));

  auto product = [&](const std::vector<CMatrix>& h, std::size_t upto) {
    CMatrix g = CMatrix::Identity(n, n);
    for (std::size_t i = 0; i < upto; ++i) g *= twisted_conjugate(h[i], tori[i], *twists[i]);
    return g;
  };
  auto complete = [&](std::vector<CMatrix> h) {
    if (reduced) h.push_back(detail::aligning_conjugator(CMatrix(product(h, r - 1).adjoint()), xi.back().theta));
    return h;
  };
  auto residual_of = [&](const std::vector<CMatrix>& full) { return max_abs(product(full, r) - CMatrix::Identity(n, n)); };

  MembershipResult out;
  Rng rng(opt.seed);
  std::vector<CMatrix> h0(free), h(free);
  auto chart = [&](std::span<const double> x) {
    for (std::size_t i = 0; i < free; ++i) h[i] = h0[i] * exp_skew_hermitian(su_element(basis, x.subspan(i * dim, dim)));
  };
  auto f = [&](std::span<const double> x) {
    chart(x);
    if (reduced) {
      Eigen::ComplexEigenSolver<CMatrix> es(CMatrix(product(h, r - 1).adjoint()), false);
      return detail::matching_distance(es.eigenvalues(), mu);
    }
    return (product(h, r) - CMatrix::Identity(n, n)).squaredNorm();
  };
  const double target = kMemberThreshold * kMemberThreshold * 1e-4;

  for (int start = 0; start < std::max(1, opt.restarts) && !out.member; ++start) {
    for (auto& x : h0) x = start == 0 ? CMatrix(CMatrix::Identity(n, n)) : haar_matrix(n, rng);
    int used = 0;
    double step = opt.step, best = INFINITY;
    while (used < opt.budget && best > target) {
      MinimizeOptions mo;
      mo.step = step;
      mo.budget = opt.budget - used;
      mo.size_tolerance = 1e-13;
      mo.target = target;
      const auto res = nelder_mead(f, std::vector<double>(free * dim, 0.0), mo);
      used += std::max(res.evaluations, 1);
      out.evaluations += res.evaluations;
      if (res.value < best) {
        best = res.value;
        chart(res.x);
        h0 = h;
      }
      step = std::max(step * 0.3, 1e-7);
    }
    const auto full = complete(h0);
    const double resid = residual_of(full);
    if (resid < out.residual) {
      out.residual = resid;
      out.witness = full;
    }
    out.member = out.residual <= kMemberThreshold;
  }
  return out;
}

/// Cloud of q^(1)(a b kappa(a^{-1}) kappa(b^{-1})) for Haar a, b.
inline SampleCloud twisted_commutator_sample(const TwistRealization& k, std::size_t count, std::uint64_t master_seed,
                                             std::size_t workers = 1) {
  if (k.order() != 2) throw ValidationError("twisted_commutator_sample needs an order-2 twist");
  workers = std::max<std::size_t>(1, std::min(workers, std::max<std::size_t>(count, 1)));
  std::vector<SampleCloud> blocks(workers);
  const TwistedAlcove& alc = k.untwisted_alcove_ref();
  run_blocks(count, workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    const std::uint64_t seed = worker_seed(master_seed, w);
    Rng rng(seed);
    for (std::size_t s = begin; s < end; ++s) {
      const CMatrix a = haar_matrix(k.n(), rng), b = haar_matrix(k.n(), rng);
      const CMatrix c = a * b * k.apply(a).adjoint() * k.apply(b).adjoint();
      try {
        blocks[w].append({ordinary_class_point(c, alc).coords, w, seed, s - begin, false});
      } catch (const Error&) {
        ++blocks[w].unresolved;
      }
    }
  });
  SampleCloud out;
  out.requested = count;
  detail::merge_blocks(out, blocks);
  detail::check_unresolved(out);
  return out;
}

/// xi_i given in chamber coordinates (<alpha_j, xi_i>)_j, all >= 0. Samples
/// zeta_i = u_i diag(xi_i) u_i^* and records the dominant chamber coordinates of
/// the spectrum of -(zeta_1 + ... + zeta_{r-1}).
inline SampleCloud horn_sum_sample(const RootDatum& d, const std::vector<std::vector<double>>& xi_coords, std::size_t count,
                                   std::uint64_t master_seed, std::size_t workers = 1) {
  if (d.family != Family::A) throw ConfigError("horn_sum_sample: Hermitian realization exists only for type A");
  if (xi_coords.empty()) throw ValidationError("horn_sum_sample: need at least one summand");
  const auto n = static_cast<Eigen::Index>(d.ambient_dim);
  std::vector<Eigen::VectorXd> diag;
  for (const auto& c : xi_coords) {
    if (c.size() != static_cast<std::size_t>(d.rank)) throw ValidationError("horn_sum_sample: wrong number of coordinates");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < d.rank; ++i) {
      if (c[i] < 0) throw ValidationError("horn_sum_sample: summand is not dominant");
      const auto w = to_double(d.fundamental_coweights[i]);
      for (Eigen::Index k = 0; k < n; ++k) v(k) += c[i] * w[k];
    }
    diag.push_back(v);
  }
  workers = std::max<std::size_t>(1, std::min(workers, std::max<std::size_t>(count, 1)));
  std::vector<SampleCloud> blocks(workers);
  run_blocks(count, workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    const std::uint64_t seed = worker_seed(master_seed, w);
    Rng rng(seed);
    for (std::size_t s = begin; s < end; ++s) {
      CMatrix sum = CMatrix::Zero(n, n);
      for (const auto& v : diag) {
        const CMatrix u = haar_matrix(n, rng);
        sum += u * v.cast<Complex>().asDiagonal() * u.adjoint();
      }
      Eigen::SelfAdjointEigenSolver<CMatrix> es(CMatrix(-0.5 * (sum + sum.adjoint())), Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success) throw NumericError("horn_sum_sample: Hermitian eigenvalue computation failed");
      std::vector<double> spec(es.eigenvalues().data(), es.eigenvalues().data() + n);
      const auto folded = fold_to_chamber(d, spec).dominant;
      std::vector<double> coords;
      for (const auto& a : d.simple_roots) coords.push_back(detail::pair(a, folded));
      blocks[w].append({std::move(coords), w, seed, s - begin, false});
    }
  });
  SampleCloud out;
  out.requested = count;
  detail::merge_blocks(out, blocks);
  return out;
}

/// Alcove coordinates of the class of c g where c = exp(omega_1^vee) generates
/// the center: the point xi + omega_1^vee folded back (untwisted alcove).
inline std::vector<double> central_shift(const RootDatum& d, const TwistedAlcove& alc, std::span<const double> coords) {
  auto xi = alc.ambient(coords);
  const auto w = to_double(d.fundamental_coweights.front());
  for (std::size_t i = 0; i < xi.size(); ++i) xi[i] += w[i];
  return fold_to_twisted_alcove(alc, xi).coords;
}

}  // namespace twistcvx
