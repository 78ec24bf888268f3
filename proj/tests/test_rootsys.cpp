#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "twistcvx/rootsys.hpp"

using namespace twistcvx;

namespace {

RVec rv(std::initializer_list<int> xs) {
  RVec v;
  for (int x : xs) v.push_back(Rational(x));
  return v;
}

// Coefficients of v in the simple-root basis, by solving the normal equations.
RVec simple_root_coords(const RootDatum& d, const RVec& v) {
  const RMatrix a = RMatrix::from_columns(d.simple_roots);
  auto c = solve(a.transpose() * a, a.transpose() * v);
  REQUIRE(c.has_value());
  REQUIRE(a * *c == v);
  return *c;
}

bool dominant(const RootDatum& d, const RVec& v) {
  return std::all_of(d.simple_roots.begin(), d.simple_roots.end(), [&](const RVec& a) { return dot(a, v) >= 0; });
}

}  // namespace

TEST_CASE("Cartan matrices of small types") {
  CHECK(build_root_datum(Family::A, 2).cartan_matrix == std::vector<std::vector<int>>{{2, -1}, {-1, 2}});
  CHECK(build_root_datum(Family::A, 1).cartan_matrix == std::vector<std::vector<int>>{{2}});
  const auto d4 = build_root_datum(Family::D, 4);
  for (int j : {0, 2, 3}) {
    CHECK(d4.cartan_matrix[1][j] == -1);
    CHECK(d4.cartan_matrix[j][1] == -1);
  }
  CHECK(d4.cartan_matrix[0][2] == 0);
  CHECK(d4.cartan_matrix[2][3] == 0);
  const auto a2 = build_root_datum(Family::A, 2);
  CHECK(a2.simple_roots[0] == rv({1, -1, 0}));
  CHECK(a2.simple_roots[1] == rv({0, 1, -1}));
}

TEST_CASE("root datum invariants") {
  for (auto [fam, rank] : std::vector<std::pair<Family, int>>{{Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::A, 4},
                                                              {Family::D, 4}, {Family::D, 5}}) {
    const auto d = build_root_datum(fam, rank);
    INFO(d.name());
    for (int i = 0; i < rank; ++i) {
      CHECK(d.cartan_matrix[i][i] == 2);
      for (int j = 0; j < rank; ++j) {
        CHECK(Rational(d.cartan_matrix[i][j]) == dot(d.simple_roots[j], d.simple_coroots[i]));
        if (i != j) CHECK((d.cartan_matrix[i][j] == 0 || d.cartan_matrix[i][j] == -1));
      }
    }
    for (const auto& a : d.simple_roots) CHECK(d.in_t(a));
    const auto roots = all_roots(d);
    CHECK(roots.size() == 2 * num_positive_roots(d));
    CHECK(std::find(roots.begin(), roots.end(), d.highest_root) != roots.end());
    const RVec top = simple_root_coords(d, d.highest_root);
    for (const auto& r : roots) {
      const RVec c = simple_root_coords(d, r);
      for (std::size_t k = 0; k < c.size(); ++k) CHECK(c[k] <= top[k]);
    }
    for (std::size_t i = 0; i < d.fundamental_coweights.size(); ++i)
      for (std::size_t j = 0; j < d.simple_roots.size(); ++j)
        CHECK(dot(d.simple_roots[j], d.fundamental_coweights[i]) == (i == j ? 1 : 0));
  }
}

TEST_CASE("unsupported groups are configuration errors") {
  CHECK_THROWS_AS(build_root_datum(Family::A, 0), ConfigError);
  CHECK_THROWS_AS(build_root_datum(Family::D, 2), ConfigError);
  CHECK_THROWS_AS(parse_group("E6"), ConfigError);
  CHECK_THROWS_AS(parse_group("Ax"), ConfigError);
  CHECK(parse_group("d4").name() == "D4");
}

TEST_CASE("Weyl group orders and root permutation") {
  const std::vector<std::tuple<Family, int, std::size_t>> cases{
      {Family::A, 1, 2}, {Family::A, 2, 6}, {Family::A, 3, 24}, {Family::D, 4, 192}};
  for (auto [fam, rank, order] : cases) {
    const auto d = build_root_datum(fam, rank);
    INFO(d.name());
    const auto w = generate_weyl_group(d);
    CHECK(w.size() == order);
    const auto roots = all_roots(d);
    const std::set<RVec> root_set(roots.begin(), roots.end());
    std::set<std::vector<Rational>> distinct;
    for (const auto& e : w) {
      CHECK(e.matrix.transpose() * e.matrix == RMatrix::identity(d.ambient_dim));
      for (const auto& r : roots) CHECK(root_set.count(e.matrix * r) == 1);
      distinct.insert(e.matrix.data());
      RMatrix from_word = RMatrix::identity(d.ambient_dim);
      for (int i : e.word) from_word = from_word * simple_reflection(d, i);
      CHECK(from_word == e.matrix);
    }
    CHECK(distinct.size() == order);
  }
}

TEST_CASE("Weyl enumeration cap") {
  CHECK_THROWS_AS(generate_weyl_group(build_root_datum(Family::A, 3), 10), ResourceError);
}

TEST_CASE("A2 fold examples") {
  const auto d = build_root_datum(Family::A, 2);
  auto f = fold_to_chamber(d, rv({-1, 0, 1}));
  CHECK(f.dominant == rv({1, 0, -1}));
  CHECK(f.w.matrix * rv({-1, 0, 1}) == f.dominant);
  auto g = fold_to_chamber(d, rv({1, 0, -1}));
  CHECK(g.dominant == rv({1, 0, -1}));
  CHECK(g.w.word.empty());
  CHECK(g.w.matrix == RMatrix::identity(3));
}

TEST_CASE("A3 random folds match brute-force orbit search") {
  const auto d = build_root_datum(Family::A, 3);
  const auto group = generate_weyl_group(d);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-20, 20);
  for (int trial = 0; trial < 100; ++trial) {
    RVec theta(4);
    Rational sum = 0;
    for (int k = 0; k < 3; ++k) {
      theta[k] = Rational(num(rng), 7);
      sum += theta[k];
    }
    theta[3] = -sum;
    const auto f = fold_to_chamber(d, theta);
    CHECK(dominant(d, f.dominant));
    CHECK(f.w.matrix * theta == f.dominant);
    // oracle: the orbit has exactly one dominant point; for type A it is the sorted vector
    std::vector<RVec> dom;
    for (const auto& w : group) {
      const RVec img = w.matrix * theta;
      if (dominant(d, img) && std::find(dom.begin(), dom.end(), img) == dom.end()) dom.push_back(img);
    }
    REQUIRE(dom.size() == 1);
    CHECK(dom.front() == f.dominant);
    RVec sorted = theta;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    CHECK(sorted == f.dominant);
  }
}

TEST_CASE("fold is idempotent and Weyl invariant") {
  for (auto [fam, rank] : std::vector<std::pair<Family, int>>{{Family::A, 2}, {Family::A, 3}, {Family::D, 3}}) {
    const auto d = build_root_datum(fam, rank);
    const auto group = generate_weyl_group(d);
    RVec theta(d.ambient_dim, Rational(0));
    for (std::size_t k = 0; k < d.ambient_dim; ++k) theta[k] = Rational(static_cast<int>(3 * k + 1) % 5 - 2, 3);
    if (fam == Family::A) {
      Rational s = 0;
      for (std::size_t k = 0; k + 1 < d.ambient_dim; ++k) s += theta[k];
      theta.back() = -s;
    }
    const auto base = fold_to_chamber(d, theta).dominant;
    const auto again = fold_to_chamber(d, base);
    CHECK(again.dominant == base);
    CHECK(again.w.word.empty());
    for (const auto& w : group) CHECK(fold_to_chamber(d, w.matrix * theta).dominant == base);
  }
}

TEST_CASE("floating-point fold agrees with exact fold") {
  const auto d = build_root_datum(Family::D, 4);
  const RVec theta{Rational(-3, 4), Rational(1, 2), Rational(-1, 8), Rational(5, 16)};
  const auto exact = fold_to_chamber(d, theta);
  const auto approx = fold_to_chamber(d, to_double(theta));
  for (std::size_t k = 0; k < 4; ++k) CHECK(approx.dominant[k] == Catch::Approx(to_double(exact.dominant[k])).margin(1e-15));
  CHECK(approx.w.word == exact.w.word);
}

TEST_CASE("untwisted alcoves") {
  const auto a1 = untwisted_alcove(build_root_datum(Family::A, 1));
  CHECK(a1.dimension() == 1);
  CHECK(a1.halfspaces().size() == 2);
  CHECK(a1.halfspaces()[0].normal == rv({-1, 1}));
  CHECK(a1.halfspaces()[0].offset == 0);
  CHECK(a1.halfspaces()[1].normal == rv({1, -1}));
  CHECK(a1.halfspaces()[1].offset == 1);

  const auto d = build_root_datum(Family::A, 2);
  const auto a2 = untwisted_alcove(d);
  REQUIRE(a2.halfspaces().size() == 3);
  CHECK(a2.halfspaces()[0].normal == rv({-1, 1, 0}));
  CHECK(a2.halfspaces()[1].normal == rv({0, -1, 1}));
  CHECK(a2.halfspaces()[2].normal == rv({1, 0, -1}));
  CHECK(a2.halfspaces()[2].offset == 1);

  // vertices by solving each pair of wall equations directly
  std::set<RVec> expected;
  const std::vector<std::pair<RVec, Rational>> eqs{
      {rv({1, -1, 0}), 0}, {rv({0, 1, -1}), 0}, {rv({1, 0, -1}), 1}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      RMatrix m = RMatrix::from_rows({eqs[i].first, eqs[j].first, rv({1, 1, 1})});
      auto x = solve(m, RVec{eqs[i].second, eqs[j].second, Rational(0)});
      REQUIRE(x.has_value());
      expected.insert(*x);
    }
  const auto verts = a2.vertices();
  CHECK(std::set<RVec>(verts.begin(), verts.end()) == expected);
  CHECK(expected.count(RVec{Rational(2, 3), Rational(-1, 3), Rational(-1, 3)}) == 1);
  CHECK(expected.count(RVec{Rational(1, 3), Rational(1, 3), Rational(-2, 3)}) == 1);
}
