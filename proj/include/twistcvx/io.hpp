#pragma once

// Flat-file formats: CSV clouds, JSON for alcoves, polygons and matrices.

#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistcvx/hull.hpp"
#include "twistcvx/sampler.hpp"
#include "twistcvx/twist.hpp"

namespace twistcvx {

using Json = nlohmann::ordered_json;

/// Header `worker,seed,coord1..coordd,refined`, LF endings, %.17g floats.
inline std::string cloud_csv(const SampleCloud& cloud) {
  std::ostringstream os;
  const std::size_t d = cloud.points.empty() ? 0 : cloud.points.front().coords.size();
  os << "worker,seed";
  for (std::size_t k = 1; k <= d; ++k) os << ",coord" << k;
  os << ",refined\n";
  for (const auto& p : cloud.points) {
    os << p.worker << ',' << p.seed;
    for (double x : p.coords) os << ',' << format_double(x);
    os << ',' << (p.refined ? 1 : 0) << '\n';
  }
  return os.str();
}

inline void ensure_parent(const std::filesystem::path& path) {
  const auto parent = path.parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(parent, ec);
  if (ec) throw ConfigError("cannot create directory " + parent.string() + ": " + ec.message());
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  ensure_parent(path);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
  if (!f) throw ConfigError("write failed for " + path.string());
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path.string());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

inline Json read_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

inline Json rvec_json(const RVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline Json alcove_json(const TwistData& tw, const TwistedAlcove& alc) {
  Json out;
  out["rank"] = tw.base.rank;
  out["twist_order"] = tw.order;
  Json perm = Json::array();
  for (int p : tw.node_permutation) perm.push_back(p + 1);
  out["node_permutation"] = perm;
  out["dimension"] = alc.dimension();
  Json basis = Json::array(), funcs = Json::array();
  for (const auto& b : alc.basis()) basis.push_back(rvec_json(b));
  for (const auto& f : alc.coordinate_functionals()) funcs.push_back(rvec_json(f));
  out["basis"] = basis;
  out["coordinate_functionals"] = funcs;
  Json hs = Json::array();
  for (const auto& h : alc.halfspaces()) {
    Json e;
    e["normal"] = rvec_json(h.normal);
    e["offset"] = to_string(h.offset);
    e["coord_coefficients"] = rvec_json(RMatrix::from_rows(alc.basis()) * h.normal);
    hs.push_back(e);
  }
  out["halfspaces"] = hs;
  Json verts = Json::array();
  for (const auto& v : alc.vertices()) {
    Json e;
    e["ambient"] = rvec_json(v);
    e["coords"] = rvec_json(alc.coords(v));
    verts.push_back(e);
  }
  out["vertices"] = verts;
  Json lat = Json::array();
  for (const auto& l : alc.lattice_basis()) lat.push_back(rvec_json(l));
  out["lattice_basis"] = lat;
  out["weyl_centralizer_order"] = tw.weyl_centralizer.size();
  return out;
}

inline Json polygon_json(const Polygon2& p) {
  Json out;
  out["kind"] = hull_kind_name(p.kind);
  Json v = Json::array();
  for (const auto& x : p.vertices) v.push_back({x[0], x[1]});
  out["vertices"] = v;
  Json h = Json::array();
  for (const auto& e : p.halfspaces) h.push_back({{"normal", {e.normal[0], e.normal[1]}}, {"offset", e.offset}});
  out["halfspaces"] = h;
  return out;
}

/// {"matrix": [[[re, im], ...], ...]}
inline Json matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return Json{{"matrix", rows}};
}

inline CMatrix matrix_from_json(const Json& j) {
  try {
    const auto& rows = j.at("matrix");
    const auto n = static_cast<Eigen::Index>(rows.size());
    if (n == 0) throw InputError("matrix file: empty matrix");
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows.at(static_cast<std::size_t>(i));
      if (static_cast<Eigen::Index>(row.size()) != n) throw InputError("matrix file: matrix is not square");
      for (Eigen::Index k = 0; k < n; ++k) {
        const auto& e = row.at(static_cast<std::size_t>(k));
        m(i, k) = e.is_array() ? Complex(e.at(0).get<double>(), e.at(1).get<double>()) : Complex(e.get<double>(), 0.0);
      }
    }
    return m;
  } catch (const Json::exception& e) {
    throw InputError(std::string("matrix file: ") + e.what());
  }
}

}  // namespace twistcvx
