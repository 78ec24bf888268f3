#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "twistcvx/hull.hpp"

using namespace twistcvx;

namespace {

bool same_vertex_set(const Polygon2& a, const Polygon2& b, double tol = 0) {
  if (a.vertices.size() != b.vertices.size()) return false;
  for (const auto& p : a.vertices) {
    const bool found = std::any_of(b.vertices.begin(), b.vertices.end(),
                                   [&](const Point2& q) { return std::abs(p[0] - q[0]) <= tol && std::abs(p[1] - q[1]) <= tol; });
    if (!found) return false;
  }
  return true;
}

// Direct inequality test for the SU(3) slice, independent of the polygon code.
bool in_slice(double a, double b, double s1, double s2, double tol) {
  const double d = std::abs(s1 - s2);
  return a >= -tol && b >= -tol && a + b <= 1 + tol && a + b >= d - tol && a <= 1 - d + tol && b <= 1 - d + tol;
}

// Brute-force Hausdorff distance from densely sampled boundaries and interiors.
double sampled_hausdorff(const Polygon2& a, const Polygon2& b, int per_edge = 400) {
  auto boundary = [&](const Polygon2& p) {
    std::vector<Point2> pts;
    const std::size_t m = p.vertices.size();
    for (std::size_t i = 0; i < m; ++i) {
      const auto& u = p.vertices[i];
      const auto& v = p.vertices[(i + 1) % m];
      for (int k = 0; k < per_edge; ++k) {
        const double t = static_cast<double>(k) / per_edge;
        pts.push_back({u[0] + t * (v[0] - u[0]), u[1] + t * (v[1] - u[1])});
      }
    }
    return pts;
  };
  double h = 0;
  for (const auto& p : boundary(a)) h = std::max(h, distance_to_polygon(p, b));
  for (const auto& p : boundary(b)) h = std::max(h, distance_to_polygon(p, a));
  return h;
}

Polygon2 random_polygon(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Point2> pts;
  for (int i = 0; i < 8; ++i) pts.push_back({u(gen), u(gen)});
  return hull_2d(pts);
}

}  // namespace

TEST_CASE("hull of a square with interior points is its four corners") {
  const std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.2, 0.7}, {0.5, 0}};
  const auto h = hull_2d(pts);
  CHECK(h.kind == HullKind::Polygon);
  CHECK(same_vertex_set(h, hull_2d(std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}})));
  CHECK(h.vertices.size() == 4);
  CHECK(h.area() == Catch::Approx(1.0));
}

TEST_CASE("degenerate hulls are flagged") {
  const auto seg = hull_2d(std::vector<Point2>{{0, 0}, {1, 1}, {0.5, 0.5}, {2, 2}});
  CHECK(seg.kind == HullKind::Segment);
  CHECK(seg.vertices.size() == 2);
  CHECK(seg.halfspaces.empty());
  const auto pt = hull_2d(std::vector<Point2>{{0.3, 0.3}, {0.3, 0.3}});
  CHECK(pt.kind == HullKind::Point);
  CHECK_THROWS_AS(hull_2d(std::vector<Point2>{}), ValidationError);
}

TEST_CASE("hull is invariant under permutation and duplication") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point2> pts;
    for (int i = 0; i < 60; ++i) pts.push_back({u(gen), u(gen)});
    const auto h = hull_2d(pts);
    auto shuffled = pts;
    shuffled.insert(shuffled.end(), pts.begin(), pts.begin() + 20);
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    const auto h2 = hull_2d(shuffled);
    CHECK(h.vertices == h2.vertices);
  }
}

TEST_CASE("hull vertices are counterclockwise, strictly convex and match the halfspaces") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto h = random_polygon(gen);
    REQUIRE(h.kind == HullKind::Polygon);
    const std::size_t m = h.vertices.size();
    REQUIRE(h.halfspaces.size() == m);
    CHECK(h.area() > 0);
    for (std::size_t i = 0; i < m; ++i) {
      CHECK(cross(h.vertices[i], h.vertices[(i + 1) % m], h.vertices[(i + 2) % m]) > 1e-12);
      const auto& e = h.halfspaces[i];
      for (std::size_t j = 0; j < m; ++j) {
        const double v = e.normal[0] * h.vertices[j][0] + e.normal[1] * h.vertices[j][1] - e.offset;
        CHECK(v <= 1e-12);
        if (j == i || j == (i + 1) % m) CHECK(std::abs(v) <= 1e-12);
      }
    }
  }
}

TEST_CASE("hull of uniform samples in a triangle approaches the triangle") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0, 1);
  const std::vector<Point2> corners{{0, 0}, {1, 0}, {0, 1}};
  std::vector<Point2> pts;
  while (pts.size() < 10000) {
    const double a = u(gen), b = u(gen);
    if (a + b <= 1) pts.push_back({a, b});
  }
  CHECK(hausdorff(hull_2d(pts), hull_2d(corners)) <= 0.02);
}

TEST_CASE("reference slice examples") {
  const auto full = hull_2d(std::vector<Point2>{{0, 0}, {1, 0}, {0, 1}});
  SECTION("(0, 0) is the whole alcove") {
    const auto p = su3_reference_slice(0, 0);
    CHECK(p.kind == HullKind::Polygon);
    CHECK(same_vertex_set(p, full));
  }
  SECTION("(1/2, 0) is the inner triangle") {
    const auto p = su3_reference_slice(0.5, 0);
    CHECK(same_vertex_set(p, hull_2d(std::vector<Point2>{{0.5, 0}, {0.5, 0.5}, {0, 0.5}})));
    CHECK(p.area() == Catch::Approx(0.125));
  }
  SECTION("(0.3, 0.3) is the whole alcove") { CHECK(same_vertex_set(su3_reference_slice(0.3, 0.3), full)); }
  SECTION("parameters outside [0, 1/2] are rejected") {
    CHECK_THROWS_AS(su3_reference_slice(-0.1, 0), ValidationError);
    CHECK_THROWS_AS(su3_reference_slice(0.2, 0.6), ValidationError);
  }
}

TEST_CASE("reference slice is symmetric in its parameters and matches the inequalities") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> s(0, 0.5), u(-0.1, 1.1);
  for (int trial = 0; trial < 40; ++trial) {
    const double s1 = s(gen), s2 = s(gen);
    const auto p = su3_reference_slice(s1, s2);
    const auto q = su3_reference_slice(s2, s1);
    CHECK(p.vertices == q.vertices);
    for (int k = 0; k < 500; ++k) {
      const Point2 x{u(gen), u(gen)};
      const double v = signed_violation(x, p);
      if (std::abs(v) < 1e-9) continue;
      CHECK((v < 0) == in_slice(x[0], x[1], s1, s2, 0));
    }
  }
}

TEST_CASE("reference slice vertices are exact for rational parameters") {
  const auto p = su3_reference_slice(0.25, 0);  // d = 1/4, binary exact
  const auto expected = hull_2d(std::vector<Point2>{{0.25, 0}, {0.75, 0}, {0.75, 0.25}, {0.25, 0.75}, {0, 0.75}, {0, 0.25}});
  CHECK(same_vertex_set(p, expected, 0.0));
}

TEST_CASE("polytope comparison") {
  const auto ref = su3_reference_slice(0.4, 0.1);
  SECTION("reference vertices as a cloud") {
    const auto c = polytope_compare(ref.vertices, ref);
    CHECK(c.hausdorff == Catch::Approx(0.0).margin(1e-15));
    CHECK(c.max_violation <= 1e-15);
    CHECK(c.coverage_fraction == Catch::Approx(1.0));
  }
  SECTION("cloud inside the reference") {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<Point2> pts;
    while (pts.size() < 5000) {
      const Point2 x{u(gen), u(gen)};
      if (in_slice(x[0], x[1], 0.4, 0.1, -1e-12)) pts.push_back(x);
    }
    const auto c = polytope_compare(pts, ref);
    CHECK(c.max_violation <= 0);
    CHECK(c.hausdorff <= 0.03);
    CHECK(c.coverage_fraction <= 1.0);
  }
  SECTION("a point outside is measured by its distance") {
    const std::vector<Point2> pts{{0.1, 0.1}};  // gamma = 0.2 < 0.3
    const auto c = polytope_compare(pts, ref);
    CHECK(c.max_violation == Catch::Approx(0.1 / std::sqrt(2.0)));
  }
  CHECK_THROWS_AS(polytope_compare(std::vector<Point2>{}, ref), ValidationError);
}

TEST_CASE("Hausdorff distance is a metric on convex polygons and is exact at vertices") {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_polygon(gen), b = random_polygon(gen), c = random_polygon(gen);
    const double ab = hausdorff(a, b), ba = hausdorff(b, a), bc = hausdorff(b, c), ac = hausdorff(a, c);
    CHECK(ab == ba);
    CHECK(ac <= ab + bc + 1e-12);
    CHECK(hausdorff(a, a) == 0.0);
    // sampling the boundaries can only underestimate, and not by much
    const double s = sampled_hausdorff(a, b);
    CHECK(s <= ab + 1e-12);
    CHECK(s >= ab - 0.01);
  }
}

TEST_CASE("SVG overlay uses a fixed 600 by 600 view box") {
  const auto ref = su3_reference_slice(0.4, 0.1);
  const auto svg = polygon_svg(ref, ref, ref.vertices);
  CHECK(svg.find("viewBox=\"0 0 600 600\"") != std::string::npos);
  CHECK(std::count(svg.begin(), svg.end(), '\n') >= 4);
  CHECK(svg.find("<circle") != std::string::npos);
}
