// twistcvx command-line interface.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration or schema
// error, 3 bad input data, 4 numeric resolution breach.

#include <CLI11.hpp>
#include <gsl/gsl_version.h>

#include <boost/version.hpp>
#include <chrono>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "twistcvx/hull.hpp"
#include "twistcvx/io.hpp"
#include "twistcvx/sampler.hpp"
#include "twistcvx/sun/class_point.hpp"
#include "twistcvx/verify.hpp"

namespace fs = std::filesystem;
using namespace twistcvx;

namespace {

constexpr const char* kVersion = "0.1.0";

Json versions() {
  return Json{{"twistcvx", kVersion},
              {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." + std::to_string(EIGEN_MINOR_VERSION)},
              {"boost", BOOST_LIB_VERSION},
              {"gsl", GSL_VERSION},
              {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                    std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
              {"cli11", CLI11_VERSION}};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> parse_coords(const std::string& text) {
  std::vector<double> out;
  for (const auto& t : split(text, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size() || used == 0) throw ConfigError("cannot parse number '" + t + "'");
    out.push_back(v);
  }
  return out;
}

/// A subcommand whose options feed a JSON config: values from --config or
/// --manifest first, then every flag given on the command line on top.
class Command {
 public:
  Command(CLI::App& parent, const std::string& name, const std::string& help) : app_(parent.add_subcommand(name, help)) {
    app_->add_option("--config", config_path_, "JSON config file");
    app_->add_option("--manifest", manifest_path_, "re-run from a manifest written by an earlier run");
  }

  CLI::App* app() const { return app_; }

  template <class T>
  CLI::Option* option(const std::string& flag, const std::string& key, const std::string& help) {
    auto holder = std::make_shared<T>();
    CLI::Option* o = app_->add_option(flag, *holder, help);
    setters_.push_back([o, holder, key](Json& j) {
      if (o->count() > 0) j[key] = *holder;
    });
    return o;
  }

  CLI::Option* toggle(const std::string& flag, const std::string& key, const std::string& help) {
    auto holder = std::make_shared<bool>(false);
    CLI::Option* o = app_->add_flag(flag, *holder, help);
    setters_.push_back([o, holder, key](Json& j) {
      if (o->count() > 0) j[key] = *holder;
    });
    return o;
  }

  Json config(const std::string& command) const {
    Json cfg = Json::object();
    if (!manifest_path_.empty()) {
      const Json m = read_json(manifest_path_);
      if (m.value("command", "") != command) throw ConfigError("manifest was written by '" + m.value("command", "?") + "', not " + command);
      cfg = m.at("config");
    }
    if (!config_path_.empty()) {
      const Json file = read_json(config_path_);
      if (!file.is_object()) throw ConfigError("config file must hold a JSON object");
      for (const auto& [k, v] : file.items()) cfg[k] = v;
    }
    for (const auto& s : setters_) s(cfg);
    return cfg;
  }

 private:
  CLI::App* app_;
  std::string config_path_, manifest_path_;
  std::vector<std::function<void(Json&)>> setters_;
};

template <class T>
T get(const Json& cfg, const char* key, T fallback) {
  if (!cfg.contains(key)) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

template <class T>
T require(const Json& cfg, const char* key) {
  if (!cfg.contains(key)) throw ConfigError(std::string("missing required setting '") + key + "'");
  return get<T>(cfg, key, T{});
}

/// Either "0.4,0.1" or an array of numbers.
std::vector<double> coords_setting(const Json& v) {
  if (v.is_string()) return parse_coords(v.get<std::string>());
  try {
    if (v.is_number()) return {v.get<double>()};
    return v.get<std::vector<double>>();
  } catch (const Json::exception&) {
    throw ConfigError("coordinates must be a number, a list of numbers or a comma separated string");
  }
}

std::vector<std::vector<double>> coord_list_setting(const Json& cfg, const char* key) {
  std::vector<std::vector<double>> out;
  if (!cfg.contains(key)) return out;
  const Json& v = cfg.at(key);
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(coords_setting(e));
  } else {
    out.push_back(coords_setting(v));
  }
  return out;
}

/// "flip,flip,identity", or a JSON array of twist names.
std::vector<std::string> twist_list_setting(const Json& cfg) {
  const Json v = cfg.contains("twists") ? cfg.at("twists") : Json("flip,flip,identity");
  if (v.is_string()) return split(v.get<std::string>(), ',');
  try {
    return v.get<std::vector<std::string>>();
  } catch (const Json::exception&) {
    throw ConfigError("twists must be a string or a list of strings");
  }
}

RealizationPtr realization(const std::string& group, const std::string& twist) {
  return std::make_shared<const TwistRealization>(TwistRealization::create(group, twist));
}

void emit(const Json& out, const std::string& path) {
  const std::string text = out.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

Json manifest(const std::string& command, const Json& cfg, double seconds, Json extra = Json::object()) {
  Json m{{"command", command}, {"config", cfg}, {"master_seed", cfg.value("seed", std::uint64_t{0})}, {"versions", versions()},
         {"timings", {{"total_seconds", seconds}}}};
  for (const auto& [k, v] : extra.items()) m[k] = v;
  return m;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t workers_setting(const Json& cfg) {
  const auto w = get<std::size_t>(cfg, "workers", 0);
  return w == 0 ? default_workers() : w;
}

// cfg with the master seed and worker count filled in, so the manifest alone reproduces the run
Json resolved_run(const Json& cfg) {
  Json out = cfg;
  out["seed"] = get<std::uint64_t>(cfg, "seed", 1);
  out["workers"] = workers_setting(cfg);
  return out;
}

Json class_point_json(const ClassPoint& p) { return Json{{"coords", p.coords}, {"xi", p.theta}}; }

// ---------------------------------------------------------------- alcove
int cmd_alcove(const Json& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto d = parse_group(get<std::string>(cfg, "group", "A2"));
  const auto tw = parse_twist(d, get<std::string>(cfg, "twist", "identity"));
  const auto alc = build_twisted_alcove(tw);
  Json out{{"group", get<std::string>(cfg, "group", "A2")}, {"twist", get<std::string>(cfg, "twist", "identity")}};
  out.update(alcove_json(tw, alc));
  out["manifest"] = manifest("alcove", cfg, elapsed(t0));
  emit(out, get<std::string>(cfg, "out", ""));
  return 0;
}

// ---------------------------------------------------------------- project
int cmd_project(const Json& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto k = realization(get<std::string>(cfg, "group", "A2"), get<std::string>(cfg, "twist", "flip"));
  const UnitaryElement g(matrix_from_json(read_json(require<std::string>(cfg, "matrix"))));
  if (g.n() != k->n()) throw InputError("matrix size does not match the group");
  const ClassPoint q = class_point(g, *k);
  Json out{{"class_point", class_point_json(q)}};
  if (get<bool>(cfg, "oracle", true)) {
    OracleOptions oo;
    oo.seed = get<std::uint64_t>(cfg, "seed", oo.seed);
    const auto o = class_point_oracle(g.matrix(), *k, oo);
    const double gap = verify::coord_gap(o.point.coords, q.coords);
    out["oracle"] = {{"coords", o.point.coords}, {"residual", o.residual}, {"resolved", o.resolved}, {"gap", gap},
                     {"agrees", o.resolved && gap <= 1e-6}};
  }
  out["manifest"] = manifest("project", cfg, elapsed(t0));
  emit(out, get<std::string>(cfg, "out", ""));
  return 0;
}

// ---------------------------------------------------------------- sample
int cmd_sample(const Json& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto k = realization(get<std::string>(cfg, "group", "A2"), get<std::string>(cfg, "twist", "flip"));
  const auto lists = coord_list_setting(cfg, "xi");
  if (lists.size() != 1) throw ConfigError("sample needs one --xi");
  const ClassPoint xi{lists.front(), k->alcove().ambient(lists.front())};
  Rng rng(get<std::uint64_t>(cfg, "seed", 1));
  const auto g = sample_class_element(xi, *k, rng);
  Json out{{"xi", class_point_json(xi)}};
  const auto emit_path = get<std::string>(cfg, "emit_matrix", "");
  if (!emit_path.empty()) {
    write_text(emit_path, matrix_json(g.matrix()).dump(2) + "\n");
    out["matrix_file"] = emit_path;
  } else {
    out["matrix"] = matrix_json(g.matrix())["matrix"];
  }
  out["manifest"] = manifest("sample", cfg, elapsed(t0));
  emit(out, get<std::string>(cfg, "out", ""));
  return 0;
}

// ---------------------------------------------------------------- fold
int cmd_fold(const Json& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto d = parse_group(get<std::string>(cfg, "group", "A2"));
  const auto tw = parse_twist(d, get<std::string>(cfg, "twist", "identity"));
  const auto alc = build_twisted_alcove(tw);
  FoldResult f;
  if (cfg.contains("ambient")) {
    f = fold_to_twisted_alcove(alc, coords_setting(cfg.at("ambient")));
  } else {
    const auto lists = coord_list_setting(cfg, "xi");
    if (lists.size() != 1) throw ConfigError("fold needs --xi (alcove coordinates) or --ambient");
    if (lists.front().size() != alc.dimension())
      throw ConfigError("fold: expected " + std::to_string(alc.dimension()) + " coordinates");
    f = fold_coords(alc, lists.front());
  }
  Json out{{"coords", f.coords}, {"xi", f.xi}, {"reflections", f.reflections}};
  out["manifest"] = manifest("fold", cfg, elapsed(t0));
  emit(out, get<std::string>(cfg, "out", ""));
  return 0;
}

// ---------------------------------------------------------------- polytope
int cmd_polytope(const Json& raw) {
  const Json cfg = resolved_run(raw);
  const auto t0 = std::chrono::steady_clock::now();
  const auto group = get<std::string>(cfg, "group", "A2");
  std::vector<RealizationPtr> twists;
  for (const auto& t : twist_list_setting(cfg)) twists.push_back(realization(group, t));
  const auto fixed = coord_list_setting(cfg, "xi");
  const auto prob = ProductProblem::from_coords(twists, fixed);
  if (fixed.size() + 1 != twists.size()) throw ConfigError("polytope needs one --xi per twist except the last");

  const auto seed = get<std::uint64_t>(cfg, "seed", 1);
  const auto samples = get<std::size_t>(cfg, "samples", 20000);
  const auto refine = get<std::size_t>(cfg, "refine", 200);
  const auto workers = workers_setting(cfg);
  const SupportOptions so{get<int>(cfg, "budget", 2000), 0.3};
  const fs::path out_dir = get<std::string>(cfg, "out", "polytope_out");

  auto cloud = product_image_sample(prob, samples, seed, workers);
  const double t_sample = elapsed(t0);
  if (!cloud.points.empty()) refine_cloud(prob, cloud, refine, so, workers);
  if (cloud.points.empty()) throw ValidationError("polytope: empty cloud (no samples and no refinements)");
  const double t_refine = elapsed(t0) - t_sample;

  write_text(out_dir / "cloud.csv", cloud_csv(cloud));
  Json report{{"problem", prob.descriptor()}, {"problem_hash", cloud.problem_hash}, {"points", cloud.points.size()},
              {"unresolved", cloud.unresolved}};
  const std::size_t dim = prob.target().alcove().dimension();
  if (dim == 2) {
    const auto pts = verify::points2(cloud);
    const auto hull = hull_2d(pts);
    report["hull"] = polygon_json(hull);
    const bool su3_case = prob.n() == 3 && twists.size() == 3 && !twists[0]->is_identity() && !twists[1]->is_identity() &&
                          twists[2]->is_identity();
    std::optional<Polygon2> ref;
    if (su3_case) {
      ref = su3_reference_slice(fixed[0][0], fixed[1][0]);
      const auto cmp = polytope_compare(pts, *ref);
      report["reference"] = polygon_json(*ref);
      report["comparison"] = {{"max_violation", cmp.max_violation}, {"hausdorff", cmp.hausdorff}, {"coverage_fraction", cmp.coverage_fraction}};
    }
    if (get<bool>(cfg, "svg", true)) write_text(out_dir / "overlay.svg", polygon_svg(ref ? *ref : hull, hull, pts));
  } else {
    std::vector<double> lo(dim, INFINITY), hi(dim, -INFINITY);
    for (const auto& p : cloud.points)
      for (std::size_t i = 0; i < dim; ++i) {
        lo[i] = std::min(lo[i], p.coords[i]);
        hi[i] = std::max(hi[i], p.coords[i]);
      }
    report["bounding_box"] = {{"min", lo}, {"max", hi}};
  }
  write_text(out_dir / "hull.json", report.dump(2) + "\n");
  write_text(out_dir / "manifest.json",
             manifest("polytope", cfg, elapsed(t0), {{"timings", {{"sample_seconds", t_sample}, {"refine_seconds", t_refine}, {"total_seconds", elapsed(t0)}}},
                                                     {"counts", {{"samples", samples}, {"refine", refine}, {"workers", workers}}}})
                     .dump(2) +
                 "\n");
  std::cout << report.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- membership
int cmd_membership(const Json& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto group = get<std::string>(cfg, "group", "A2");
  std::vector<RealizationPtr> twists;
  for (const auto& t : twist_list_setting(cfg)) twists.push_back(realization(group, t));
  const auto lists = coord_list_setting(cfg, "xi");
  if (lists.size() != twists.size()) throw ConfigError("membership needs one --xi per twist");
  std::vector<ClassPoint> xi;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    if (lists[i].size() != twists[i]->alcove().dimension()) throw ConfigError("membership: wrong number of coordinates in --xi " + std::to_string(i + 1));
    xi.push_back({lists[i], twists[i]->alcove().ambient(lists[i])});
  }
  MembershipOptions mo;
  mo.budget = get<int>(cfg, "budget", mo.budget);
  mo.restarts = get<int>(cfg, "restarts", mo.restarts);
  mo.seed = get<std::uint64_t>(cfg, "seed", mo.seed);
  const auto r = membership_test(xi, twists, mo);
  Json out{{"status", r.member ? "member" : "unresolved"}, {"residual", r.residual}, {"evaluations", r.evaluations},
           {"threshold", kMemberThreshold}};
  out["manifest"] = manifest("membership", cfg, elapsed(t0));
  emit(out, get<std::string>(cfg, "out", ""));
  return 0;
}

// ---------------------------------------------------------------- verify-su3
int cmd_verify_su3(const Json& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyConfig vc = get<bool>(cfg, "quick", false) ? VerifyConfig::quick_defaults() : VerifyConfig{};
  vc.seed = get<std::uint64_t>(cfg, "seed", vc.seed);
  vc.workers = workers_setting(cfg);
  vc.tamper_reference = get<bool>(cfg, "tamper_reference", false);
  vc.samples = get<std::size_t>(cfg, "samples", vc.samples);
  vc.refine = get<std::size_t>(cfg, "refine", vc.refine);
  const fs::path out_dir = get<std::string>(cfg, "out", "verify_su3_out");

  // resolved settings, so that a manifest re-run needs nothing else
  Json resolved = cfg;
  resolved["seed"] = vc.seed;
  resolved["workers"] = vc.workers;
  resolved["quick"] = vc.quick;
  if (vc.tamper_reference) resolved["tamper_reference"] = true;

  const auto report = run_verify_su3(vc, out_dir, [](const CheckResult& c) {
    std::cerr << (c.passed ? "PASS " : "FAIL ") << c.id << " " << c.name << " (" << std::fixed << std::setprecision(2) << c.seconds << std::defaultfloat << " s): " << c.message << "\n";
  });
  Json rep = report.to_json();
  rep["settings"] = vc.to_json();
  write_text(out_dir / "report.json", rep.dump(2) + "\n");
  Json timings = Json::object();
  for (const auto& c : report.checks) timings[c.name] = c.seconds;
  timings["total_seconds"] = elapsed(t0);
  write_text(out_dir / "manifest.json", manifest("verify-su3", resolved, elapsed(t0), {{"timings", timings}}).dump(2) + "\n");

  std::cout << "verify-su3: " << (report.all_passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : report.checks)
    if (!c.passed) std::cout << "failed check: " << c.name << "\n";
  return report.all_passed() ? 0 : 1;
}

// ---------------------------------------------------------------- horn
int cmd_horn(const Json& raw) {
  const Json cfg = resolved_run(raw);
  const auto t0 = std::chrono::steady_clock::now();
  const auto d = parse_group(get<std::string>(cfg, "group", "A1"));
  std::vector<std::vector<double>> xi = coord_list_setting(cfg, "xi");
  for (const char* key : {"xi1", "xi2", "xi3", "xi4"})
    if (cfg.contains(key)) xi.push_back(coords_setting(cfg.at(key)));
  if (xi.empty()) throw ConfigError("horn needs at least one summand (--xi1 ...)");
  const auto samples = get<std::size_t>(cfg, "samples", 100000);
  const auto cloud = horn_sum_sample(d, xi, samples, get<std::uint64_t>(cfg, "seed", 1), workers_setting(cfg));
  std::vector<double> lo(static_cast<std::size_t>(d.rank), INFINITY), hi(static_cast<std::size_t>(d.rank), -INFINITY);
  for (const auto& p : cloud.points)
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] = std::min(lo[i], p.coords[i]);
      hi[i] = std::max(hi[i], p.coords[i]);
    }
  Json out{{"samples", samples}, {"min", lo}, {"max", hi}};
  const auto csv = get<std::string>(cfg, "out", "");
  if (!csv.empty()) {
    write_text(csv, cloud_csv(cloud));
    write_text(csv + ".manifest.json", manifest("horn", cfg, elapsed(t0)).dump(2) + "\n");
    out["cloud"] = csv;
  }
  out["manifest"] = manifest("horn", cfg, elapsed(t0));
  std::cout << out.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- commutator
int cmd_commutator(const Json& raw) {
  const Json cfg = resolved_run(raw);
  const auto t0 = std::chrono::steady_clock::now();
  const auto k = realization(get<std::string>(cfg, "group", "A2"), get<std::string>(cfg, "twist", "flip"));
  const auto samples = get<std::size_t>(cfg, "samples", 10000);
  const auto cloud = twisted_commutator_sample(*k, samples, get<std::uint64_t>(cfg, "seed", 1), workers_setting(cfg));
  double worst = -INFINITY;
  const auto& alc = k->untwisted_alcove_ref();
  for (const auto& p : cloud.points) worst = std::max(worst, alc.max_violation(alc.ambient(p.coords)));
  Json out{{"samples", samples}, {"points", cloud.points.size()}, {"unresolved", cloud.unresolved}, {"max_alcove_violation", worst}};
  if (alc.dimension() == 2 && !cloud.points.empty()) {
    const auto hull = hull_2d(verify::points2(cloud));
    std::vector<Point2> corners;
    for (const auto& v : alc.vertices()) {
      const auto c = to_double(alc.coords(v));
      corners.push_back({c[0], c[1]});
    }
    const auto full = hull_2d(corners);
    out["hull"] = polygon_json(hull);
    out["coverage_fraction"] = hull.area() / full.area();
    out["hausdorff_to_alcove"] = hausdorff(hull, full);
  }
  const auto csv = get<std::string>(cfg, "out", "commutator.csv");
  write_text(csv, cloud_csv(cloud));
  write_text(csv + ".manifest.json", manifest("commutator", cfg, elapsed(t0)).dump(2) + "\n");
  out["cloud"] = csv;
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twisted conjugacy classes, alcoves and product polytopes"};
  app.require_subcommand(1);
  std::deque<Command> cmds;
  std::vector<std::pair<CLI::App*, std::function<int(const Json&)>>> handlers;
  auto add = [&](const std::string& name, const std::string& help, std::function<int(const Json&)> run) -> Command& {
    cmds.emplace_back(app, name, help);
    handlers.emplace_back(cmds.back().app(), std::move(run));
    return cmds.back();
  };

  auto& alcove = add("alcove", "print the twisted alcove (H-rep, vertices, lattice, W^kappa order)", cmd_alcove);
  alcove.option<std::string>("--group", "group", "A<n> or D<n>");
  alcove.option<std::string>("--twist", "twist", "identity, flip, or a node permutation such as 1,2,4,3");
  alcove.option<std::string>("--out", "out", "output file (default stdout)");

  auto& project = add("project", "class point of an SU(N) matrix", cmd_project);
  project.option<std::string>("--group", "group", "A<n>");
  project.option<std::string>("--twist", "twist", "identity or flip");
  project.option<std::string>("--matrix", "matrix", "matrix JSON file");
  project.option<bool>("--oracle", "oracle", "cross-check with the optimization oracle (default true)");
  project.option<std::uint64_t>("--seed", "seed", "oracle seed");
  project.option<std::string>("--out", "out", "output file (default stdout)");

  auto& sample = add("sample", "draw an element of the twisted class of xi", cmd_sample);
  sample.option<std::string>("--group", "group", "A<n>");
  sample.option<std::string>("--twist", "twist", "identity or flip");
  sample.option<std::string>("--xi", "xi", "alcove coordinates, comma separated");
  sample.option<std::uint64_t>("--seed", "seed", "seed");
  sample.option<std::string>("--emit-matrix", "emit_matrix", "write the matrix JSON here");
  sample.option<std::string>("--out", "out", "output file (default stdout)");

  auto& fold = add("fold", "fold a point of t^kappa into the alcove", cmd_fold);
  fold.option<std::string>("--group", "group", "A<n> or D<n>");
  fold.option<std::string>("--twist", "twist", "twist");
  fold.option<std::string>("--xi", "xi", "alcove coordinates, comma separated");
  fold.option<std::string>("--ambient", "ambient", "ambient coordinates, comma separated");
  fold.option<std::string>("--out", "out", "output file (default stdout)");

  auto& poly = add("polytope", "sample a slice of a product-of-classes polytope", cmd_polytope);
  poly.option<std::string>("--group", "group", "A<n>");
  poly.option<std::string>("--twists", "twists", "comma separated twist list, e.g. flip,flip,identity");
  poly.option<std::vector<std::string>>("--xi", "xi", "fixed class coordinates, one per twist except the last")->take_all();
  poly.option<std::size_t>("--samples", "samples", "Monte-Carlo samples (default 20000)");
  poly.option<std::size_t>("--refine", "refine", "support refinements (default 200)");
  poly.option<int>("--budget", "budget", "evaluations per refinement (default 2000)");
  poly.option<std::uint64_t>("--seed", "seed", "master seed");
  poly.option<std::size_t>("--workers", "workers", "worker threads (0 = hardware)");
  poly.option<bool>("--svg", "svg", "write overlay.svg (default true)");
  poly.option<std::string>("--out", "out", "output directory");

  auto& member = add("membership", "one-sided membership certification for a tuple of classes", cmd_membership);
  member.option<std::string>("--group", "group", "A<n>");
  member.option<std::string>("--twists", "twists", "comma separated twist list");
  member.option<std::vector<std::string>>("--xi", "xi", "class coordinates, one per twist")->take_all();
  member.option<int>("--budget", "budget", "evaluations per restart");
  member.option<int>("--restarts", "restarts", "restarts");
  member.option<std::uint64_t>("--seed", "seed", "seed");
  member.option<std::string>("--out", "out", "output file (default stdout)");

  auto& verify = add("verify-su3", "run the SU(3) verification grid", cmd_verify_su3);
  verify.toggle("--quick", "quick", "reduced counts, Hausdorff tolerance 0.05");
  verify.option<std::uint64_t>("--seed", "seed", "master seed");
  verify.option<std::size_t>("--workers", "workers", "worker threads (0 = hardware)");
  verify.option<std::size_t>("--samples", "samples", "samples per slice");
  verify.option<std::size_t>("--refine", "refine", "support refinements per slice");
  verify.option<std::string>("--out", "out", "output directory");
  verify.toggle("--tamper-reference", "tamper_reference", "")->group("");

  auto& horn = add("horn", "Hermitian sum (Horn) slice sampler", cmd_horn);
  horn.option<std::string>("--group", "group", "A<n>");
  horn.option<std::string>("--xi1", "xi1", "first summand, chamber coordinates");
  horn.option<std::string>("--xi2", "xi2", "second summand");
  horn.option<std::string>("--xi3", "xi3", "third summand");
  horn.option<std::size_t>("--samples", "samples", "samples (default 100000)");
  horn.option<std::uint64_t>("--seed", "seed", "master seed");
  horn.option<std::size_t>("--workers", "workers", "worker threads (0 = hardware)");
  horn.option<std::string>("--out", "out", "CSV output path");

  auto& comm = add("commutator", "twisted commutator image sampler", cmd_commutator);
  comm.option<std::string>("--group", "group", "A<n>");
  comm.option<std::string>("--twist", "twist", "order-2 twist (default flip)");
  comm.option<std::size_t>("--samples", "samples", "samples (default 10000)");
  comm.option<std::uint64_t>("--seed", "seed", "master seed");
  comm.option<std::size_t>("--workers", "workers", "worker threads (0 = hardware)");
  comm.option<std::string>("--out", "out", "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (std::size_t i = 0; i < handlers.size(); ++i) {
    if (!handlers[i].first->parsed()) continue;
    try {
      return handlers[i].second(cmds[i].config(handlers[i].first->get_name()));
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return e.exit_code();
    } catch (const Json::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "internal error: " << e.what() << "\n";
      return 1;
    }
  }
  return 2;
}
