#pragma once

// Planar convex geometry for alcove slices: hulls, the SU(3) reference slice,
// comparison metrics and SVG overlays.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "twistcvx/alcove.hpp"
#include "twistcvx/error.hpp"
#include "twistcvx/rational.hpp"

namespace twistcvx {

using Point2 = std::array<double, 2>;

constexpr double kCollinearEps = 1e-12;

enum class HullKind { Point, Segment, Polygon };

struct Edge2 {
  Point2 normal;  // outward unit normal
  double offset;  // normal . x <= offset
};

/// Convex polygon, counterclockwise, no three consecutive vertices collinear.
/// Degenerate hulls keep one (point) or two (segment) vertices.
struct Polygon2 {
  std::vector<Point2> vertices;
  std::vector<Edge2> halfspaces;
  HullKind kind = HullKind::Polygon;

  double area() const {
    double a = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const auto& p = vertices[i];
      const auto& q = vertices[(i + 1) % vertices.size()];
      a += p[0] * q[1] - p[1] * q[0];
    }
    return 0.5 * a;
  }
};

inline double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline std::string hull_kind_name(HullKind k) {
  switch (k) {
    case HullKind::Point: return "point";
    case HullKind::Segment: return "segment";
    default: return "polygon";
  }
}

namespace detail {
inline void attach_halfspaces(Polygon2& p) {
  p.halfspaces.clear();
  if (p.kind != HullKind::Polygon) return;
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    const auto& a = p.vertices[i];
    const auto& b = p.vertices[(i + 1) % p.vertices.size()];
    const double dx = b[0] - a[0], dy = b[1] - a[1], len = std::hypot(dx, dy);
    const Point2 nrm{dy / len, -dx / len};
    p.halfspaces.push_back({nrm, nrm[0] * a[0] + nrm[1] * a[1]});
  }
}
}  // namespace detail

/// Andrew's monotone chain; points within kCollinearEps (relative to the
/// coordinate scale) of a hull edge are dropped.
inline Polygon2 hull_2d(std::span<const Point2> input) {
  if (input.empty()) throw ValidationError("hull_2d: empty point set");
  std::vector<Point2> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  double scale = 0;
  for (const auto& p : pts) scale = std::max({scale, std::abs(p[0]), std::abs(p[1])});
  const double eps = kCollinearEps * std::max(1.0, scale * scale);

  Polygon2 out;
  if (pts.size() == 1) {
    out.vertices = pts;
    out.kind = HullKind::Point;
    return out;
  }
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= eps) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() <= 2) {
    out.vertices = {pts.front(), pts.back()};
    out.kind = HullKind::Segment;
    return out;
  }
  out.vertices = std::move(h);
  detail::attach_halfspaces(out);
  return out;
}

inline Polygon2 hull_2d(const std::vector<std::vector<double>>& points) {
  std::vector<Point2> p;
  for (const auto& x : points) {
    if (x.size() != 2) throw ValidationError("hull_2d: points must be two-dimensional");
    p.push_back({x[0], x[1]});
  }
  return hull_2d(std::span<const Point2>(p));
}

/// Exact halfspace intersection in the plane: returns the counterclockwise
/// vertex chain of {x : a_i . x <= c_i}, assumed bounded.
inline std::vector<std::array<Rational, 2>> exact_polygon(const std::vector<std::array<Rational, 2>>& a, const std::vector<Rational>& c) {
  std::vector<std::array<Rational, 2>> verts;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const Rational det = a[i][0] * a[j][1] - a[i][1] * a[j][0];
      if (det == 0) continue;
      const std::array<Rational, 2> x{(c[i] * a[j][1] - a[i][1] * c[j]) / det, (a[i][0] * c[j] - c[i] * a[j][0]) / det};
      bool inside = true;
      for (std::size_t k = 0; k < a.size() && inside; ++k) inside = a[k][0] * x[0] + a[k][1] * x[1] <= c[k];
      if (inside && std::find(verts.begin(), verts.end(), x) == verts.end()) verts.push_back(x);
    }
  if (verts.size() < 3) return verts;
  // sort counterclockwise around the (exact) centroid, exact orientation tests
  std::array<Rational, 2> ctr{Rational(0), Rational(0)};
  for (const auto& v : verts) {
    ctr[0] += v[0];
    ctr[1] += v[1];
  }
  ctr[0] /= static_cast<long long>(verts.size());
  ctr[1] /= static_cast<long long>(verts.size());
  auto half = [&](const std::array<Rational, 2>& v) { return (v[1] - ctr[1] < 0 || (v[1] == ctr[1] && v[0] - ctr[0] < 0)) ? 1 : 0; };
  std::sort(verts.begin(), verts.end(), [&](const auto& p, const auto& q) {
    const int hp = half(p), hq = half(q);
    if (hp != hq) return hp < hq;
    return (p[0] - ctr[0]) * (q[1] - ctr[1]) - (p[1] - ctr[1]) * (q[0] - ctr[0]) > 0;
  });
  return verts;
}

/// SU(3) slice for fixed twisted classes s1, s2 in [0, 1/2], in the chart
/// (<alpha, xi>, <beta, xi>): the alcove cut by <gamma, xi> >= d,
/// <alpha, xi> <= 1 - d, <beta, xi> <= 1 - d with d = |s1 - s2|.
inline Polygon2 su3_reference_slice(double s1, double s2) {
  for (double s : {s1, s2})
    if (!(s >= 0 && s <= 0.5)) throw ValidationError("su3_reference_slice: parameters must lie in [0, 1/2]");
  const Rational d = abs(Rational(s1) - Rational(s2));
  const std::vector<std::array<Rational, 2>> a{
      {Rational(-1), Rational(0)}, {Rational(0), Rational(-1)}, {Rational(1), Rational(1)},
      {Rational(-1), Rational(-1)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  const std::vector<Rational> c{Rational(0), Rational(0), Rational(1), -d, 1 - d, 1 - d};
  Polygon2 out;
  for (const auto& v : exact_polygon(a, c)) out.vertices.push_back({to_double(v[0]), to_double(v[1])});
  out.kind = out.vertices.size() >= 3 ? HullKind::Polygon : out.vertices.size() == 2 ? HullKind::Segment : HullKind::Point;
  detail::attach_halfspaces(out);
  return out;
}

inline double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy);
}

/// Euclidean distance from p to the convex set (0 inside).
inline double distance_to_polygon(const Point2& p, const Polygon2& poly) {
  const auto& v = poly.vertices;
  if (v.size() == 1) return std::hypot(p[0] - v[0][0], p[1] - v[0][1]);
  if (poly.kind == HullKind::Polygon) {
    bool inside = true;
    for (const auto& h : poly.halfspaces) inside = inside && h.normal[0] * p[0] + h.normal[1] * p[1] <= h.offset;
    if (inside) return 0.0;
  }
  double d = INFINITY;
  const std::size_t m = poly.kind == HullKind::Polygon ? v.size() : 1;
  for (std::size_t i = 0; i < m; ++i) d = std::min(d, point_segment_distance(p, v[i], v[(i + 1) % v.size()]));
  return d;
}

/// Hausdorff distance of convex polygons, from vertices to the other set in both directions.
inline double hausdorff(const Polygon2& a, const Polygon2& b) {
  double h = 0;
  for (const auto& p : a.vertices) h = std::max(h, distance_to_polygon(p, b));
  for (const auto& p : b.vertices) h = std::max(h, distance_to_polygon(p, a));
  return h;
}

/// Largest signed distance of p beyond an edge of poly (<= 0 inside).
inline double signed_violation(const Point2& p, const Polygon2& poly) {
  if (poly.kind != HullKind::Polygon) return distance_to_polygon(p, poly);
  double worst = -INFINITY;
  for (const auto& h : poly.halfspaces) worst = std::max(worst, h.normal[0] * p[0] + h.normal[1] * p[1] - h.offset);
  return worst;
}

struct PolytopeComparison {
  double max_violation = -INFINITY;
  double hausdorff = 0;
  double coverage_fraction = 0;
  Polygon2 sampled_hull;
};

inline PolytopeComparison polytope_compare(std::span<const Point2> cloud, const Polygon2& ref) {
  if (cloud.empty()) throw ValidationError("polytope_compare: empty cloud");
  PolytopeComparison out;
  for (const auto& p : cloud) out.max_violation = std::max(out.max_violation, signed_violation(p, ref));
  out.sampled_hull = hull_2d(cloud);
  out.hausdorff = hausdorff(out.sampled_hull, ref);
  const double ref_area = ref.area();
  out.coverage_fraction = ref_area > 0 ? out.sampled_hull.area() / ref_area : 1.0;
  return out;
}

/// Reference polygon in outline, sampled hull dashed, cloud as dots, in a fixed 600x600 viewBox.
inline std::string polygon_svg(const Polygon2& ref, const Polygon2& sampled, std::span<const Point2> cloud, std::size_t max_points = 5000) {
  double lo0 = INFINITY, lo1 = INFINITY, hi0 = -INFINITY, hi1 = -INFINITY;
  auto grow = [&](const Point2& p) {
    lo0 = std::min(lo0, p[0]);
    hi0 = std::max(hi0, p[0]);
    lo1 = std::min(lo1, p[1]);
    hi1 = std::max(hi1, p[1]);
  };
  for (const auto& p : ref.vertices) grow(p);
  for (const auto& p : sampled.vertices) grow(p);
  const double span = std::max({hi0 - lo0, hi1 - lo1, 1e-9});
  const double margin = 40, size = 600 - 2 * margin;
  char buf[160];
  auto xy = [&](const Point2& p) {
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", margin + (p[0] - lo0) / span * size, 600 - margin - (p[1] - lo1) / span * size);
    return std::string(buf);
  };
  auto path = [&](const Polygon2& poly) {
    std::string s;
    for (const auto& v : poly.vertices) s += xy(v) + " ";
    return s;
  };
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 600 600\" width=\"600\" height=\"600\">\n";
  svg += "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
  const std::size_t stride = std::max<std::size_t>(1, cloud.size() / std::max<std::size_t>(max_points, 1));
  for (std::size_t i = 0; i < cloud.size(); i += stride) {
    const auto p = xy(cloud[i]);
    const auto comma = p.find(',');
    svg += "<circle cx=\"" + p.substr(0, comma) + "\" cy=\"" + p.substr(comma + 1) + "\" r=\"1\" fill=\"#4477aa\"/>\n";
  }
  svg += "<polygon points=\"" + path(sampled) + "\" fill=\"none\" stroke=\"#4477aa\" stroke-dasharray=\"4 3\"/>\n";
  svg += "<polygon points=\"" + path(ref) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace twistcvx
