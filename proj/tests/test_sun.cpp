#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "twistcvx/sun/adjoint.hpp"
#include "twistcvx/sun/class_point.hpp"
#include "twistcvx/sun/identities.hpp"
#include "twistcvx/sun/realization.hpp"
#include "twistcvx/sun/unitary.hpp"

using namespace twistcvx;

namespace {

const TwistRealization& su3_flip() {
  static const TwistRealization k = TwistRealization::create("A2", "flip");
  return k;
}
const TwistRealization& su3_id() {
  static const TwistRealization k = TwistRealization::create("A2", "identity");
  return k;
}
const TwistRealization& su2_id() {
  static const TwistRealization k = TwistRealization::create("A1", "identity");
  return k;
}

std::vector<double> xi_s(double s) { return {s / 2, 0.0, -s / 2}; }

CMatrix diag3(Complex a, Complex b, Complex c) {
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

// Uniform point of the alcove by rejection from the bounding box of its vertices.
std::vector<double> random_alcove_point(const TwistedAlcove& alc, Rng& rng) {
  const auto verts = alc.vertices();
  const std::size_t d = alc.dimension();
  std::vector<double> lo(d, INFINITY), hi(d, -INFINITY);
  for (const auto& v : verts) {
    const auto c = to_double(alc.coords(v));
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], c[i]);
      hi[i] = std::max(hi[i], c[i]);
    }
  }
  while (true) {
    std::vector<double> c(d);
    for (std::size_t i = 0; i < d; ++i) c[i] = lo[i] + (hi[i] - lo[i]) * rng.uniform();
    const auto xi = alc.ambient(c);
    if (alc.max_violation(xi) <= 0) return xi;
  }
}

double coord_distance(const ClassPoint& a, const ClassPoint& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) m = std::max(m, std::abs(a.coords[i] - b.coords[i]));
  return m;
}

}  // namespace

TEST_CASE("unitary element validation") {
  CHECK_NOTHROW(UnitaryElement::identity(3));
  CMatrix m = CMatrix::Identity(3, 3);
  m(0, 1) = 1e-9;
  const UnitaryElement repaired(m);
  CHECK(max_abs(repaired.matrix().adjoint() * repaired.matrix() - CMatrix::Identity(3, 3)) <= 1e-14);
  CHECK(std::abs(repaired.matrix().determinant() - Complex(1.0)) <= 1e-14);
  m(0, 1) = 1e-6;
  CHECK_THROWS_AS(UnitaryElement(m), InputError);
  CHECK_THROWS_AS(UnitaryElement(CMatrix(-CMatrix::Identity(3, 3))), InputError);  // det -1
  CHECK_THROWS_AS(UnitaryElement(CMatrix::Identity(2, 3)), InputError);
}

TEST_CASE("torus exponential") {
  CHECK(max_abs(torus_exp(std::vector<double>{0, 0, 0}).matrix() - CMatrix::Identity(3, 3)) == 0);
  CHECK(max_abs(torus_exp(std::vector<double>{1, -1, 0}).matrix() - CMatrix::Identity(3, 3)) <= 1e-15);
  const auto e = torus_exp(xi_s(0.2)).matrix();
  const CMatrix expected = diag3(std::polar(1.0, 0.2 * std::numbers::pi), 1.0, std::polar(1.0, -0.2 * std::numbers::pi));
  CHECK(max_abs(e - expected) <= 1e-15);
  CHECK_THROWS_AS(torus_exp(std::vector<double>{0.1, 0, 0}), ValidationError);
}

TEST_CASE("random stream is the standard 64-bit Mersenne twister") {
  // C++ standard: the 10000th output of a default-constructed mt19937_64
  Rng rng(5489u);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.next_u64();
  CHECK(x == 9981545732273789042ull);
  Rng u(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("Haar sampling") {
  Rng a(42), b(42);
  const CMatrix x = haar_matrix(3, a), y = haar_matrix(3, b);
  CHECK((x.array() == y.array()).all());
  Rng rng(7);
  double mean = 0;
  const int count = 10000;
  for (int i = 0; i < count; ++i) {
    const CMatrix u = haar_matrix(2, rng);
    mean += std::norm(u(0, 0));
    if (i < 100) {
      CHECK(max_abs(u.adjoint() * u - CMatrix::Identity(2, 2)) <= 1e-12);
      CHECK(std::abs(u.determinant() - Complex(1.0)) <= 1e-12);
    }
  }
  mean /= count;
  CHECK(std::abs(mean - 0.5) <= 0.02);
  // second moment E|U11|^4 = 2/(n(n+1)) for n = 3
  double m4 = 0;
  for (int i = 0; i < count; ++i) m4 += std::pow(std::norm(haar_matrix(3, rng)(0, 0)), 2);
  CHECK(std::abs(m4 / count - 1.0 / 6.0) <= 0.01);
}

TEST_CASE("twist realization is an involutive automorphism matching kappa on t") {
  const auto& k = su3_flip();
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const CMatrix g = haar_matrix(3, rng), h = haar_matrix(3, rng);
    CHECK(max_abs(k.apply(g * h) - k.apply(g) * k.apply(h)) <= 1e-12);
    CHECK(max_abs(k.apply(k.apply(g)) - g) <= 1e-12);
  }
  const std::vector<double> theta{0.31, -0.12, -0.19};
  const auto kt = k.data().kappa_t;
  std::vector<double> image(3, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) image[i] += to_double(kt(i, j)) * theta[j];
  CHECK(max_abs(k.apply(torus_exp_matrix(theta)) - torus_exp_matrix(image)) <= 1e-14);
  CHECK_THROWS_AS(TwistRealization::create("D4", "identity"), ConfigError);
}

TEST_CASE("twisted conjugation") {
  const auto& k = su3_flip();
  Rng rng(11);
  const CMatrix e = CMatrix::Identity(3, 3);
  for (int t = 0; t < 20; ++t) {
    const CMatrix g = haar_matrix(3, rng), h1 = haar_matrix(3, rng), h2 = haar_matrix(3, rng);
    CHECK(max_abs(twisted_conjugate(e, g, k) - g) <= 1e-15);
    CHECK(max_abs(twisted_conjugate(h1, twisted_conjugate(h2, g, k), k) - twisted_conjugate(CMatrix(h1 * h2), g, k)) <= 1e-12);
    CHECK(max_abs(twisted_conjugate(h1, g, su3_id()) - h1 * g * h1.adjoint()) <= 1e-15);
    // central c = e^{2 pi i/3}: Ad^kappa_{c^{-1}}(g) = c g
    const CMatrix c = std::polar(1.0, 2 * std::numbers::pi / 3) * e;
    CHECK(max_abs(twisted_conjugate(CMatrix(c.adjoint()), g, k) - c * g) <= 1e-14);
  }
  CHECK_THROWS_AS(twisted_conjugate(CMatrix(CMatrix::Identity(2, 2)), e, k), ValidationError);
}

TEST_CASE("square map") {
  const auto& k = su3_flip();
  const CMatrix g = torus_exp_matrix(xi_s(0.3));
  CHECK(max_abs(square_map(g, k) - torus_exp_matrix(xi_s(0.6))) <= 1e-15);
  CHECK(max_abs(square_map(CMatrix(CMatrix::Identity(3, 3)), k) - CMatrix::Identity(3, 3)) == 0);
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const CMatrix h = haar_matrix(3, rng), x = haar_matrix(3, rng);
    CHECK(max_abs(square_map(twisted_conjugate(h, x, k), k) - h * square_map(x, k) * h.adjoint()) <= 1e-12);
  }
  CHECK_THROWS_AS(square_map(g, su3_id()), ValidationError);
}

TEST_CASE("twisted lattice generators exponentiate into the fixed-and-moved torus") {
  for (const std::string g : {"A2", "A3", "A4"}) {
    const auto k = TwistRealization::create(g, "flip");
    for (const auto& c : verify_lattice(k)) CHECK(c.ok);
  }
  const auto checks = verify_lattice(su3_flip());
  REQUIRE(checks.size() == 1);
  const CMatrix e = torus_exp_matrix(checks[0].generator);
  CHECK(max_abs(e - diag3(-1.0, 1.0, -1.0)) <= 1e-15);
}

TEST_CASE("class point examples") {
  const auto& k = su3_flip();
  const auto p = class_point(torus_exp_matrix(xi_s(0.2)), k);
  REQUIRE(p.coords.size() == 1);
  CHECK(p.coords[0] == Catch::Approx(0.2).margin(1e-12));
  CHECK(class_point(CMatrix(CMatrix::Identity(3, 3)), k).coords[0] == Catch::Approx(0.0).margin(1e-12));
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const CMatrix h = haar_matrix(3, rng);
    CHECK(class_point(twisted_conjugate(h, torus_exp_matrix(xi_s(0.35)), k), k).coords[0] == Catch::Approx(0.35).margin(1e-8));
  }
  // untwisted SU(3): eigenangles (0.5, -0.2, -0.3) lie in the alcove with coordinates (0.7, 0.1)
  const auto q = class_point(torus_exp_matrix(std::vector<double>{-0.2, 0.5, -0.3}), su3_id());
  CHECK(q.coords[0] == Catch::Approx(0.7).margin(1e-12));
  CHECK(q.coords[1] == Catch::Approx(0.1).margin(1e-12));
}

TEST_CASE("class point is invariant under twisted conjugation and central multiplication") {
  Rng rng(1234);
  for (const TwistRealization* k : {&su3_flip(), &su3_id(), &su2_id()}) {
    for (int t = 0; t < 1000; ++t) {
      const CMatrix g = haar_matrix(k->n(), rng), h = haar_matrix(k->n(), rng);
      CHECK(coord_distance(class_point(twisted_conjugate(h, g, *k), *k), class_point(g, *k)) <= 1e-8);
    }
  }
  const CMatrix c = std::polar(1.0, 2 * std::numbers::pi / 3) * CMatrix::Identity(3, 3);
  for (int t = 0; t < 200; ++t) {
    const CMatrix g = haar_matrix(3, rng);
    CHECK(coord_distance(class_point(CMatrix(c * g), su3_flip()), class_point(g, su3_flip())) <= 1e-8);
  }
}

TEST_CASE("class point round trip on alcove points") {
  Rng rng(99);
  for (const TwistRealization* k : {&su3_flip(), &su3_id(), &su2_id()}) {
    for (int t = 0; t < 1000; ++t) {
      const auto xi = random_alcove_point(k->alcove(), rng);
      const auto p = class_point(torus_exp_matrix(xi), *k);
      for (std::size_t i = 0; i < xi.size(); ++i) CHECK(std::abs(p.theta[i] - xi[i]) <= 1e-9);
    }
  }
}

TEST_CASE("square map separates twisted SU(3) classes on a grid") {
  // distinct s in [0, 1/2] give distinct ordinary classes of exp(2 xi_s)
  const auto& k = su3_flip();
  std::vector<double> first;
  for (int i = 0; i <= 1000; ++i) {
    const double s = 0.5 * i / 1000.0;
    const auto eta = ordinary_class_point(torus_exp_matrix(xi_s(2 * s)), k.untwisted_alcove_ref());
    first.push_back(eta.coords[0]);
  }
  for (std::size_t i = 1; i < first.size(); ++i) CHECK(first[i] > first[i - 1]);
}

TEST_CASE("oracle agrees with the algebraic class point") {
  const auto& k = su3_flip();
  Rng rng(8);
  const auto direct = class_point_oracle(torus_exp_matrix(xi_s(0.2)), k);
  CHECK(direct.resolved);
  CHECK(direct.residual <= 1e-10);
  CHECK(direct.point.coords[0] == Catch::Approx(0.2).margin(1e-8));
  int resolved = 0;
  for (int t = 0; t < 10; ++t) {
    const CMatrix g = twisted_conjugate(haar_matrix(3, rng), torus_exp_matrix(xi_s(0.35)), k);
    const auto o = class_point_oracle(g, k);
    if (!o.resolved) continue;
    ++resolved;
    CHECK(o.point.coords[0] == Catch::Approx(class_point(g, k).coords[0]).margin(1e-6));
  }
  CHECK(resolved >= 8);
  const CMatrix g = haar_matrix(3, rng);
  const auto o = class_point_oracle(g, su3_id());
  if (o.resolved) CHECK(coord_distance(o.point, class_point(g, su3_id())) <= 1e-6);
}

TEST_CASE("adjoint twist operator") {
  const CMatrix e = CMatrix::Identity(3, 3);
  const auto a_id = adjoint_twist_operator(e, su3_id());
  CHECK((a_id - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-15);
  const auto& k = su3_flip();
  const auto a_e = adjoint_twist_operator(e, k);
  CHECK(class_form_kernel(a_e).dim_ker_AminusI == 3);
  for (double s : {0.05, 0.2, 0.25, 0.45}) {
    const auto a = adjoint_twist_operator(torus_exp_matrix(xi_s(s)), k);
    CHECK((a.transpose() * a - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(class_form_kernel(a).tangent_dim == 7);
  }
  // untwisted generic classes are 6-dimensional
  const auto a = adjoint_twist_operator(torus_exp_matrix(std::vector<double>{0.4, -0.1, -0.3}), su3_id());
  CHECK(class_form_kernel(a).tangent_dim == 6);
  // A = I on the stabilizer: for phi = exp(xi_s), the fixed directions include i diag(1,0,-1)
  const auto a_s = adjoint_twist_operator(torus_exp_matrix(xi_s(0.3)), k);
  const auto basis = su_basis(3);
  CMatrix x = CMatrix::Zero(3, 3);
  x(0, 0) = Complex(0, 1);
  x(2, 2) = Complex(0, -1);
  Eigen::VectorXd v(8);
  for (int i = 0; i < 8; ++i) v(i) = (basis[i].adjoint() * x).trace().real();
  CHECK((a_s * v - v).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("class form kernel") {
  const auto triv = class_form_kernel(adjoint_twist_operator(CMatrix(CMatrix::Identity(3, 3)), su3_id()));
  CHECK(triv.tangent_dim == 0);
  CHECK(triv.dim_ker_omega == 0);
  const auto& k = su3_flip();
  const auto q = class_form_kernel(adjoint_twist_operator(torus_exp_matrix(xi_s(0.25)), k));
  CHECK(q.consistent);
  CHECK(q.dim_ker_omega == q.dim_ker_AplusI);
  Rng rng(77);
  for (int t = 0; t < 50; ++t) {
    const auto r = class_form_kernel(adjoint_twist_operator(haar_matrix(3, rng), k));
    CHECK(r.skew_residual <= 1e-12);
    CHECK(r.consistent);
    CHECK(r.dim_ker_omega == r.dim_ker_AplusI);
  }
}

TEST_CASE("twist change chain") {
  const auto& k = su3_flip();
  const auto& one = su3_id();
  Rng rng(31);
  const CMatrix e = CMatrix::Identity(3, 3);
  {
    std::vector<CMatrix> h{haar_matrix(3, rng), haar_matrix(3, rng)};
    const auto r = change_twist_chain({e, e}, {&k, &k}, h);
    CHECK(r.residual == 0);
    for (const auto& u : r.u) CHECK(max_abs(u - e) == 0);
    CHECK(max_abs(r.h_prime[0] - h[0]) == 0);
  }
  for (int t = 0; t < 20; ++t) {
    std::vector<CMatrix> a{haar_matrix(3, rng), haar_matrix(3, rng)}, h{haar_matrix(3, rng), haar_matrix(3, rng)};
    CHECK(change_twist_chain(a, {&k, &k}, h).residual <= 1e-12);
    a.push_back(haar_matrix(3, rng));
    h.push_back(haar_matrix(3, rng));
    const auto r = change_twist_chain(a, {&k, &k, &one}, h);
    CHECK(r.residual <= 1e-12);
    // direct oracle: a = u_4 = a_3 (a_2 kappa(a_1 kappa(e)))
    const CMatrix u2 = a[0] * k.apply(e);
    const CMatrix u3 = a[1] * k.apply(u2);
    CHECK(max_abs(r.a - a[2] * u3) <= 1e-14);
  }
  CHECK_THROWS_AS(change_twist_chain({e}, {&k, &k}, {e}), ValidationError);
}

TEST_CASE("holonomy products") {
  const auto& k = su3_flip();
  const auto& one = su3_id();
  const CMatrix e = CMatrix::Identity(3, 3);
  const auto triv = holonomy_product_setup({&k, &k, &one}, {e, e}, {e, e});
  for (const auto& g : triv.g) CHECK(max_abs(g - e) <= 1e-15);
  Rng rng(47);
  for (int t = 0; t < 20; ++t) {
    const std::vector<CMatrix> d{haar_matrix(3, rng), haar_matrix(3, rng), haar_matrix(3, rng)};
    const std::vector<CMatrix> a{haar_matrix(3, rng), haar_matrix(3, rng)};
    const auto r = holonomy_product_setup({&k, &k, &one}, d, a);
    CHECK(r.residual <= 1e-12);
    CHECK(r.class_error <= 1e-8);
    // g_2 = kappa(a_2) d_2 kappa(kappa(a_2))^{-1} = kappa(a_2) d_2 a_2^{-1}
    CHECK(max_abs(r.g[1] - k.apply(a[1]) * d[1] * a[1].adjoint()) <= 1e-13);
  }
  CHECK_THROWS_AS(holonomy_product_setup({&k, &one, &one}, {e, e}, {e, e}), ValidationError);
}
