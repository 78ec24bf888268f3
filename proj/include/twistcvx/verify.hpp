#pragma once

// The SU(3) verification grid: ten checks with pass/fail status, metrics and
// timings, plus the slice artifacts (CSV cloud, hull JSON, SVG overlay).

#include <chrono>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "twistcvx/hull.hpp"
#include "twistcvx/io.hpp"
#include "twistcvx/sampler.hpp"
#include "twistcvx/sun/adjoint.hpp"
#include "twistcvx/sun/class_point.hpp"
#include "twistcvx/sun/identities.hpp"
#include "twistcvx/twist.hpp"

namespace twistcvx {

struct VerifyConfig {
  std::uint64_t seed = 20260101;
  std::size_t workers = 1;
  bool quick = false;
  bool tamper_reference = false;
  std::vector<double> grid{0.0, 0.1, 0.25, 0.4, 0.5};
  std::size_t samples = 20000;
  std::size_t refine = 200;
  int refine_budget = 2000;
  std::size_t roundtrip = 1000;
  std::size_t oracle_cases = 100;
  std::size_t invariance = 1000;
  std::size_t kernel_points = 200;
  std::size_t identity_instances = 100;
  std::size_t horn_samples = 100000;
  std::size_t convexity_pairs = 100;
  int member_budget = 2000;
  int member_restarts = 8;
  double hausdorff_tolerance = 0.02;

  /// Reduced counts; Hausdorff tolerance relaxed to 0.05.
  static VerifyConfig quick_defaults() {
    VerifyConfig c;
    c.quick = true;
    c.samples = 4000;
    c.refine = 60;
    c.refine_budget = 800;
    c.roundtrip = 200;
    c.oracle_cases = 20;
    c.invariance = 200;
    c.kernel_points = 50;
    c.identity_instances = 30;
    c.horn_samples = 20000;
    c.convexity_pairs = 20;
    c.hausdorff_tolerance = 0.05;
    return c;
  }

  Json to_json() const {
    return Json{{"seed", seed},
                {"workers", workers},
                {"quick", quick},
                {"tamper_reference", tamper_reference},
                {"grid", grid},
                {"samples", samples},
                {"refine", refine},
                {"refine_budget", refine_budget},
                {"roundtrip", roundtrip},
                {"oracle_cases", oracle_cases},
                {"invariance", invariance},
                {"kernel_points", kernel_points},
                {"identity_instances", identity_instances},
                {"horn_samples", horn_samples},
                {"convexity_pairs", convexity_pairs},
                {"member_budget", member_budget},
                {"member_restarts", member_restarts},
                {"hausdorff_tolerance", hausdorff_tolerance}};
  }
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  std::string message;
  Json details = Json::object();
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }

  Json to_json() const {
    Json arr = Json::array();
    for (const auto& c : checks)
      arr.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"seconds", c.seconds}, {"message", c.message}, {"details", c.details}});
    return Json{{"passed", all_passed()}, {"checks", arr}};
  }
};

namespace verify {

inline std::uint64_t check_seed(const VerifyConfig& c, int id) { return splitmix64(c.seed + static_cast<std::uint64_t>(id)); }

inline RealizationPtr su3(const char* twist) { return std::make_shared<const TwistRealization>(TwistRealization::create("A2", twist)); }

/// Same set of halfspaces up to positive rescaling of each inequality.
inline bool same_halfspaces(const std::vector<Halfspace>& a, const std::vector<Halfspace>& b) {
  auto normalize = [](const Halfspace& h) {
    Rational scale = 0;
    for (const auto& x : h.normal) scale = std::max(scale, Rational(abs(x)));
    if (scale == 0) scale = 1;
    return std::make_pair(Rational(1 / scale) * h.normal, Rational(h.offset / scale));
  };
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    const auto nx = normalize(x);
    bool found = false;
    for (const auto& y : b) found = found || normalize(y) == nx;
    if (!found) return false;
  }
  return true;
}

inline double coord_gap(std::span<const double> a, std::span<const double> b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline ClassPoint twisted_point(const TwistRealization& k, double s) {
  const std::vector<double> c{s};
  return {c, k.alcove().ambient(c)};
}

/// Check 1: A2 with the diagram flip gives exactly {0 <= <gamma, xi> <= 1/2}.
inline CheckResult twisted_alcove_exact(const VerifyConfig&) {
  CheckResult r{1, "twisted_alcove_exactness"};
  const auto d = parse_group("A2");
  const auto alc = build_twisted_alcove(parse_twist(d, "flip"));
  const RVec gamma = d.highest_root;
  const std::vector<Halfspace> expected{{-gamma, Rational(0)}, {gamma, rat(1, 2)}};
  const bool ok = same_halfspaces(alc.halfspaces(), expected);
  r.passed = ok;
  r.details["halfspaces"] = alcove_json(parse_twist(d, "flip"), alc)["halfspaces"];
  r.message = ok ? "H-rep is {0 <= <gamma,xi> <= 1/2}" : "H-rep differs from {0 <= <gamma,xi> <= 1/2}";
  return r;
}

/// Check 2: identity twist reproduces the ordinary alcove for A1, A2, A3, D4.
inline CheckResult untwisted_reduction(const VerifyConfig&) {
  CheckResult r{2, "untwisted_reduction"};
  r.passed = true;
  for (const char* g : {"A1", "A2", "A3", "D4"}) {
    const auto d = parse_group(g);
    const bool ok = same_halfspaces(build_twisted_alcove(parse_twist(d, "identity")).halfspaces(), untwisted_alcove(d).halfspaces());
    r.details[g] = ok;
    r.passed = r.passed && ok;
  }
  r.message = r.passed ? "identity twist matches the standard alcove on A1, A2, A3, D4" : "mismatch against the standard alcove";
  return r;
}

/// Check 3: q(Ad_h exp xi) = xi and agreement with the optimization oracle.
inline CheckResult roundtrip(const VerifyConfig& c) {
  CheckResult r{3, "class_projection_roundtrip"};
  const auto k = su3("flip");
  Rng rng(check_seed(c, 3));
  double worst = 0;
  std::size_t failures = 0;
  for (std::size_t t = 0; t < c.roundtrip; ++t) {
    const ClassPoint xi = twisted_point(*k, 0.5 * rng.uniform());
    const CMatrix g = sample_class_matrix(xi, *k, rng);
    const double gap = coord_gap(class_point(g, *k).coords, xi.coords);
    worst = std::max(worst, gap);
    if (gap > 1e-8) ++failures;
  }
  std::size_t resolved = 0, attempts = 0, disagreements = 0;
  double worst_oracle = 0;
  while (resolved < c.oracle_cases && attempts < 3 * c.oracle_cases) {
    ++attempts;
    const ClassPoint xi = twisted_point(*k, 0.5 * rng.uniform());
    const CMatrix g = sample_class_matrix(xi, *k, rng);
    OracleOptions oo;
    oo.seed = rng.next_u64();
    const auto o = class_point_oracle(g, *k, oo);
    if (!o.resolved) continue;
    ++resolved;
    const double gap = coord_gap(o.point.coords, class_point(g, *k).coords);
    worst_oracle = std::max(worst_oracle, gap);
    if (gap > 1e-6) ++disagreements;
  }
  r.details = {{"trials", c.roundtrip}, {"max_error", worst}, {"failures", failures}, {"oracle_resolved", resolved},
               {"oracle_attempts", attempts}, {"oracle_max_gap", worst_oracle}, {"oracle_disagreements", disagreements}};
  r.passed = failures == 0 && resolved >= c.oracle_cases && disagreements == 0;
  r.message = "round trip max error " + format_double(worst) + ", oracle max gap " + format_double(worst_oracle) + " on " +
              std::to_string(resolved) + " resolved cases";
  return r;
}

/// Check 4: invariance of q under twisted conjugation and central multiplication.
inline CheckResult invariance(const VerifyConfig& c) {
  CheckResult r{4, "class_point_invariance"};
  const auto k = su3("flip");
  Rng rng(check_seed(c, 4));
  const Complex w = std::polar(1.0, 2 * std::numbers::pi / 3);
  double worst_conj = 0, worst_central = 0;
  for (std::size_t t = 0; t < c.invariance; ++t) {
    const CMatrix g = haar_matrix(3, rng), h = haar_matrix(3, rng);
    const auto q = class_point(g, *k).coords;
    worst_conj = std::max(worst_conj, coord_gap(class_point(twisted_conjugate(h, g, *k), *k).coords, q));
    for (const Complex z : {w, w * w}) worst_central = std::max(worst_central, coord_gap(class_point(CMatrix(z * g), *k).coords, q));
  }
  r.details = {{"trials", c.invariance}, {"max_conjugation_error", worst_conj}, {"max_central_error", worst_central}};
  r.passed = worst_conj <= 1e-8 && worst_central <= 1e-8;
  r.message = "twisted conjugation error " + format_double(worst_conj) + ", central multiplication error " + format_double(worst_central);
  return r;
}

/// Check 5: rank(A - I) = 7 and dim ker Omega = dim ker(A + I) at interior points.
inline CheckResult kernel_dimensions(const VerifyConfig& c) {
  CheckResult r{5, "class_dimension_and_kernel"};
  const auto k = su3("flip");
  Rng rng(check_seed(c, 5));
  std::size_t failures = 0, warnings = 0;
  Json ranks = Json::object();
  for (std::size_t t = 0; t < c.kernel_points; ++t) {
    const ClassPoint xi = twisted_point(*k, 0.005 + 0.49 * rng.uniform());
    const CMatrix phi = sample_class_matrix(xi, *k, rng);
    const auto kern = class_form_kernel(adjoint_twist_operator(phi, *k));
    if (kern.warning) ++warnings;
    if (kern.tangent_dim != 7 || kern.dim_ker_omega != kern.dim_ker_AplusI) ++failures;
    const std::string key = std::to_string(kern.tangent_dim) + "/" + std::to_string(kern.dim_ker_omega) + "/" + std::to_string(kern.dim_ker_AplusI);
    ranks[key] = ranks.value(key, 0) + 1;
  }
  r.details = {{"points", c.kernel_points}, {"failures", failures}, {"near_threshold_warnings", warnings},
               {"rank_AminusI/dim_ker_omega/dim_ker_AplusI", ranks}};
  r.passed = failures == 0;
  r.message = std::to_string(failures) + " failures over " + std::to_string(c.kernel_points) + " points";
  return r;
}

struct SliceOutcome {
  double s1 = 0, s2 = 0;
  SampleCloud cloud;
  Polygon2 reference;
  PolytopeComparison comparison;
};

inline std::vector<Point2> points2(const SampleCloud& cloud) {
  std::vector<Point2> p;
  for (const auto& x : cloud.points) p.push_back({x.coords.at(0), x.coords.at(1)});
  return p;
}

inline std::string slice_name(double s1, double s2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "slice_%g_%g", s1, s2);
  return buf;
}

/// Runs one (flip, flip, identity) slice: sampling, refinement, comparison.
inline SliceOutcome run_slice(const VerifyConfig& c, double s1, double s2, std::uint64_t seed) {
  SliceOutcome out{s1, s2};
  const auto flip = su3("flip");
  const auto prob = ProductProblem::from_coords({flip, flip, su3("identity")}, {{s1}, {s2}});
  out.cloud = product_image_sample(prob, c.samples, seed, c.workers);
  refine_cloud(prob, out.cloud, c.refine, {c.refine_budget, 0.3}, c.workers);
  // tampering pretends the slice bound is 0.05 larger than it is
  out.reference = c.tamper_reference ? su3_reference_slice(std::min(0.5, std::max(s1, s2) + 0.05), std::min(s1, s2))
                                     : su3_reference_slice(s1, s2);
  const auto pts = points2(out.cloud);
  out.comparison = polytope_compare(pts, out.reference);
  return out;
}

inline void write_slice(const std::filesystem::path& dir, const SliceOutcome& s) {
  const std::string base = slice_name(s.s1, s.s2);
  write_text(dir / (base + ".csv"), cloud_csv(s.cloud));
  Json j{{"s1", s.s1},
         {"s2", s.s2},
         {"samples", s.cloud.requested},
         {"points", s.cloud.points.size()},
         {"unresolved", s.cloud.unresolved},
         {"problem_hash", s.cloud.problem_hash},
         {"max_violation", s.comparison.max_violation},
         {"hausdorff", s.comparison.hausdorff},
         {"coverage_fraction", s.comparison.coverage_fraction},
         {"reference", polygon_json(s.reference)},
         {"sampled_hull", polygon_json(s.comparison.sampled_hull)}};
  write_text(dir / (base + ".json"), j.dump(2) + "\n");
  const auto pts = points2(s.cloud);
  write_text(dir / (base + ".svg"), polygon_svg(s.reference, s.comparison.sampled_hull, pts));
}

/// Checks 6 and 7: the slice grid against the reference polygons, and the
/// (0, 0) slice against the whole alcove triangle.
inline std::pair<CheckResult, CheckResult> polytope_grid(const VerifyConfig& c, const std::filesystem::path& out_dir) {
  CheckResult r6{6, "su3_polytope_reproduction"}, r7{7, "full_alcove_slice"};
  r6.passed = true;
  r7.passed = false;
  r7.message = "grid has no (0, 0) slice";
  Json slices = Json::array();
  std::uint64_t idx = 0;
  double worst_v = -INFINITY, worst_h = 0;
  std::string failing;
  for (double s1 : c.grid)
    for (double s2 : c.grid) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto s = run_slice(c, s1, s2, splitmix64(check_seed(c, 6) + idx++));
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (!out_dir.empty()) write_slice(out_dir / "slices", s);
      const bool ok = s.comparison.max_violation <= 1e-7 && s.comparison.hausdorff <= c.hausdorff_tolerance;
      if (!ok) {
        r6.passed = false;
        failing += (failing.empty() ? "" : ", ") + slice_name(s1, s2);
      }
      worst_v = std::max(worst_v, s.comparison.max_violation);
      worst_h = std::max(worst_h, s.comparison.hausdorff);
      slices.push_back({{"s1", s1}, {"s2", s2}, {"max_violation", s.comparison.max_violation}, {"hausdorff", s.comparison.hausdorff},
                        {"coverage_fraction", s.comparison.coverage_fraction}, {"points", s.cloud.points.size()},
                        {"unresolved", s.cloud.unresolved}, {"seconds", secs}, {"passed", ok}});
      if (s1 == 0.0 && s2 == 0.0) {
        const std::vector<Point2> triangle{{0, 0}, {1, 0}, {0, 1}};
        const double h = hausdorff(s.comparison.sampled_hull, hull_2d(triangle));
        r7.passed = h <= c.hausdorff_tolerance;
        r7.details = {{"hausdorff_to_alcove", h}, {"coverage_fraction", s.comparison.coverage_fraction}};
        r7.message = "Hausdorff distance to the alcove " + format_double(h);
      }
    }
  r6.details = {{"slices", slices}, {"max_violation", worst_v}, {"max_hausdorff", worst_h}};
  r6.message = r6.passed ? "all slices within tolerance (max violation " + format_double(worst_v) + ", max Hausdorff " + format_double(worst_h) + ")"
                         : "failing slices: " + failing;
  return {r6, r7};
}

/// Check 8: change_twist_chain and holonomy_product_setup residuals.
inline CheckResult algebraic_identities(const VerifyConfig& c) {
  CheckResult r{8, "algebraic_identities"};
  const auto flip = su3("flip"), id = su3("identity");
  Rng rng(check_seed(c, 8));
  double worst_chain = 0, worst_holo = 0;
  std::size_t failures = 0, mixed = 0;
  const std::vector<std::vector<RealizationPtr>> holo_lists{{flip, flip, id}, {flip, id, flip}, {id, flip, flip}, {id, id, id}, {flip, flip}};
  for (std::size_t t = 0; t < c.identity_instances; ++t) {
    // even instances use the mixed list (kappa, kappa, 1)
    std::vector<RealizationPtr> chain_twists;
    if (t % 2 == 0) {
      chain_twists = {flip, flip, id};
      ++mixed;
    } else {
      const std::size_t len = 2 + static_cast<std::size_t>(rng.uniform() * 3);
      for (std::size_t i = 0; i < len; ++i) chain_twists.push_back(rng.uniform() < 0.5 ? flip : id);
    }
    std::vector<const TwistRealization*> raw;
    std::vector<CMatrix> a, h;
    for (const auto& k : chain_twists) {
      raw.push_back(k.get());
      a.push_back(haar_matrix(3, rng));
      h.push_back(haar_matrix(3, rng));
    }
    try {
      worst_chain = std::max(worst_chain, change_twist_chain(a, raw, h).residual);
    } catch (const Error&) {
      ++failures;
    }
    const auto& list = t % 2 == 0 ? holo_lists.front() : holo_lists[1 + t / 2 % (holo_lists.size() - 1)];
    std::vector<const TwistRealization*> hk;
    std::vector<CMatrix> d, aa;
    for (std::size_t i = 0; i < list.size(); ++i) {
      hk.push_back(list[i].get());
      if (i + 1 < list.size()) {
        d.push_back(haar_matrix(3, rng));
        aa.push_back(haar_matrix(3, rng));
      }
    }
    try {
      worst_holo = std::max(worst_holo, holonomy_product_setup(hk, d, aa).residual);
    } catch (const Error&) {
      ++failures;
    }
  }
  r.details = {{"instances", c.identity_instances}, {"mixed_instances", mixed}, {"max_chain_residual", worst_chain},
               {"max_holonomy_residual", worst_holo}, {"failures", failures}};
  r.passed = failures == 0 && worst_chain <= kIdentityResidual && worst_holo <= kIdentityResidual;
  r.message = "chain residual " + format_double(worst_chain) + ", holonomy residual " + format_double(worst_holo);
  return r;
}

/// Relative-angle scan for su(2): |a v + b R(theta) v| over theta, in root units.
inline std::pair<double, double> su2_sum_interval_scan(double a, double b, int steps = 100000) {
  double lo = INFINITY, hi = -INFINITY;
  for (int i = 0; i <= steps; ++i) {
    const double th = std::numbers::pi * i / steps;
    const double v = std::sqrt(std::max(0.0, a * a + b * b + 2 * a * b * std::cos(th)));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

/// Check 9: su(2) Horn slice for (a, b) = (0.3, 0.2).
inline CheckResult horn_baseline(const VerifyConfig& c, const std::filesystem::path& out_dir) {
  CheckResult r{9, "horn_baseline"};
  const double a = 0.3, b = 0.2;
  const auto cloud = horn_sum_sample(parse_group("A1"), {{a}, {b}}, c.horn_samples, check_seed(c, 9), c.workers);
  if (!out_dir.empty()) write_text(out_dir / "horn_su2.csv", cloud_csv(cloud));
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& p : cloud.points) {
    lo = std::min(lo, p.coords[0]);
    hi = std::max(hi, p.coords[0]);
  }
  const auto [slo, shi] = su2_sum_interval_scan(a, b);
  r.details = {{"samples", c.horn_samples}, {"cloud_min", lo}, {"cloud_max", hi}, {"scan_min", slo}, {"scan_max", shi},
               {"expected", {std::abs(a - b), a + b}}};
  r.passed = std::abs(lo - slo) <= 0.01 && std::abs(hi - shi) <= 0.01 && lo >= slo - 1e-9 && hi <= shi + 1e-9 &&
             std::abs(slo - std::abs(a - b)) <= 1e-9 && std::abs(shi - (a + b)) <= 1e-9;
  r.message = "cloud spans [" + format_double(lo) + ", " + format_double(hi) + "], scan gives [" + format_double(slo) + ", " + format_double(shi) + "]";
  return r;
}

/// Check 10: midpoints of certified member tuples are certified members.
inline CheckResult convexity(const VerifyConfig& c) {
  CheckResult r{10, "convexity_midpoints"};
  const auto flip = su3("flip"), id = su3("identity");
  const std::vector<RealizationPtr> tw{flip, flip, id};
  Rng rng(check_seed(c, 10));
  MembershipOptions mo;
  mo.budget = c.member_budget;
  mo.restarts = c.member_restarts;
  auto random_member = [&]() {
    const double s1 = 0.5 * rng.uniform(), s2 = 0.5 * rng.uniform();
    const auto prob = ProductProblem::from_coords(tw, {{s1}, {s2}});
    const std::vector<CMatrix> h{haar_matrix(3, rng), haar_matrix(3, rng)};
    const auto q = prob.image(h);
    return std::vector<ClassPoint>{twisted_point(*flip, s1), twisted_point(*flip, s2), {q.coords, q.theta}};
  };
  std::size_t certified_pairs = 0, member_mid = 0, endpoint_failures = 0, attempts = 0;
  double worst = 0;
  while (certified_pairs < c.convexity_pairs && attempts < 3 * c.convexity_pairs) {
    ++attempts;
    const auto t1 = random_member(), t2 = random_member();
    mo.seed = rng.next_u64();
    if (!membership_test(t1, tw, mo).member || !membership_test(t2, tw, mo).member) {
      ++endpoint_failures;
      continue;
    }
    ++certified_pairs;
    std::vector<ClassPoint> mid;
    for (std::size_t i = 0; i < 3; ++i) {
      std::vector<double> m;
      for (std::size_t j = 0; j < t1[i].coords.size(); ++j) m.push_back(0.5 * (t1[i].coords[j] + t2[i].coords[j]));
      mid.push_back({m, tw[i]->alcove().ambient(m)});
    }
    const auto res = membership_test(mid, tw, mo);
    worst = std::max(worst, res.residual);
    if (res.member) ++member_mid;
  }
  // residual at a point outside the slice, for the member / non-member gap
  const auto outside = membership_test({twisted_point(*flip, 0.5), twisted_point(*flip, 0.0), {{0.1, 0.1}, id->alcove().ambient(std::vector<double>{0.1, 0.1})}}, tw, mo);
  r.details = {{"pairs", certified_pairs}, {"member_midpoints", member_mid}, {"endpoint_failures", endpoint_failures},
               {"max_midpoint_residual", worst}, {"exterior_probe_residual", outside.residual}};
  r.passed = certified_pairs == c.convexity_pairs && static_cast<double>(member_mid) >= 0.99 * static_cast<double>(certified_pairs);
  r.message = std::to_string(member_mid) + " of " + std::to_string(certified_pairs) + " midpoints certified; exterior probe residual " +
              format_double(outside.residual);
  return r;
}

template <class F>
CheckResult timed(F&& f, double limit_seconds = INFINITY) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r = f();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.seconds > limit_seconds) {
    r.passed = false;
    r.message += "; runtime " + format_double(r.seconds) + " s exceeds " + format_double(limit_seconds) + " s";
  }
  return r;
}

}  // namespace verify

/// Runs checks 1-10; artifacts go under out_dir when it is non-empty.
/// `progress` receives each finished check.
inline VerifyReport run_verify_su3(const VerifyConfig& c, const std::filesystem::path& out_dir,
                                   const std::function<void(const CheckResult&)>& progress = {}) {
  VerifyReport rep;
  auto add = [&](CheckResult r) {
    if (progress) progress(r);
    rep.checks.push_back(std::move(r));
  };
  add(verify::timed([&] { return verify::twisted_alcove_exact(c); }, 1.0));
  add(verify::timed([&] { return verify::untwisted_reduction(c); }, 10.0));
  add(verify::timed([&] { return verify::roundtrip(c); }, 120.0));
  add(verify::timed([&] { return verify::invariance(c); }));
  add(verify::timed([&] { return verify::kernel_dimensions(c); }));
  {
    const auto t0 = std::chrono::steady_clock::now();
    auto [r6, r7] = verify::polytope_grid(c, out_dir);
    r6.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r6.seconds > 900.0) {
      r6.passed = false;
      r6.message += "; runtime exceeds 15 min";
    }
    add(std::move(r6));
    add(std::move(r7));
  }
  add(verify::timed([&] { return verify::algebraic_identities(c); }));
  add(verify::timed([&] { return verify::horn_baseline(c, out_dir); }));
  add(verify::timed([&] { return verify::convexity(c); }));
  return rep;
}

}  // namespace twistcvx
