#include <doctest.h>

#include <cmath>
#include <random>

#include "frontal/jet.hpp"
#include "oracles.hpp"

using namespace frontal;

namespace {

Jet2 random_jet(std::mt19937& rng, Point2 base, int order, double c0 = 0.0) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Jet2 j(base, order);
  for (int t = 0; t <= order; ++t)
    for (int i = 0; i <= t; ++i) j.set_coeff(i, t - i, d(rng));
  j.set_coeff(0, 0, j.coeff(0, 0) + c0);
  return j;
}

double max_diff(const Jet2& a, const Jet2& b) {
  double m = 0;
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) m = std::max(m, std::abs(a.coeffs()[k] - b.coeffs()[k]));
  return m;
}

std::vector<std::vector<double>> table(const Jet2& a) {
  const int K = a.order();
  std::vector<std::vector<double>> t(K + 1, std::vector<double>(K + 1, 0.0));
  for (int i = 0; i <= K; ++i)
    for (int j = 0; i + j <= K; ++j) t[i][j] = a.coeff(i, j);
  return t;
}

// Jet of g at base from nested central differences is too noisy at high
// order; compare low-order partials only.
double fd_partial(const std::function<double(double, double)>& g, Point2 p, int i, int j) {
  const double h = 1e-3;
  if (i == 1 && j == 0) return (g(p.u + h, p.v) - g(p.u - h, p.v)) / (2 * h);
  if (i == 0 && j == 1) return (g(p.u, p.v + h) - g(p.u, p.v - h)) / (2 * h);
  if (i == 2 && j == 0) return (g(p.u + h, p.v) - 2 * g(p.u, p.v) + g(p.u - h, p.v)) / (h * h);
  if (i == 0 && j == 2) return (g(p.u, p.v + h) - 2 * g(p.u, p.v) + g(p.u, p.v - h)) / (h * h);
  return (g(p.u + h, p.v + h) - g(p.u + h, p.v - h) - g(p.u - h, p.v + h) + g(p.u - h, p.v - h)) / (4 * h * h);
}

}  // namespace

TEST_CASE("lift and coefficient layout") {
  const Jet2 u = Jet2::lift(Var::U, {0.3, -0.2}, 4);
  CHECK(u.coeffs().size() == Jet2::size_for(4));
  CHECK(u.value() == 0.3);
  CHECK(u.coeff(1, 0) == 1.0);
  CHECK(u.coeff(0, 1) == 0.0);
  CHECK_THROWS(u.coeff(3, 2));
  const Jet2 v = Jet2::lift(Var::V, {0.3, -0.2}, 4);
  CHECK(v.value() == -0.2);
  CHECK(v.coeff(0, 1) == 1.0);
}

TEST_CASE("product matches the brute-force polynomial product") {
  std::mt19937 rng(7);
  for (int order : {1, 3, 6, 9}) {
    const Jet2 a = random_jet(rng, {0.1, 0.2}, order), b = random_jet(rng, {0.1, 0.2}, order);
    const auto ref = oracle::poly_mul(table(a), table(b), order);
    const Jet2 c = a * b;
    for (int i = 0; i <= order; ++i)
      for (int j = 0; i + j <= order; ++j) CHECK(c.coeff(i, j) == doctest::Approx(ref[i][j]).epsilon(1e-13));
  }
}

TEST_CASE("ring axioms hold to rounding") {
  std::mt19937 rng(11);
  for (int n = 0; n < 50; ++n) {
    const Point2 p{0.0, 0.0};
    const Jet2 a = random_jet(rng, p, 7), b = random_jet(rng, p, 7), c = random_jet(rng, p, 7);
    CHECK(max_diff(a * b, b * a) < 1e-13);
    CHECK(max_diff((a * b) * c, a * (b * c)) < 1e-12);
    CHECK(max_diff(a * (b + c), a * b + a * c) < 1e-12);
    CHECK(max_diff(a - a, Jet2(p, 7)) == 0.0);
  }
}

TEST_CASE("division, sqrt, exp and log are inverse operations") {
  std::mt19937 rng(3);
  for (int n = 0; n < 30; ++n) {
    const Point2 p{0.4, -0.1};
    const Jet2 a = random_jet(rng, p, 8, 3.0);  // constant term in [2, 4]
    const Jet2 b = random_jet(rng, p, 8);
    CHECK(max_diff((b / a) * a, b) < 1e-11);
    CHECK(max_diff(sqrt(a) * sqrt(a), a) < 1e-11);
    CHECK(max_diff(exp(log(a)), a) < 1e-10);
    CHECK(max_diff(log(exp(b)), b) < 1e-10);
    CHECK(max_diff(sin(b) * sin(b) + cos(b) * cos(b), Jet2(p, 8, 1.0)) < 1e-11);
    CHECK(max_diff(cosh(b) * cosh(b) - sinh(b) * sinh(b), Jet2(p, 8, 1.0)) < 1e-10);
    CHECK(max_diff(tan(b) * cos(b), sin(b)) < 1e-10);
    CHECK(max_diff(tanh(b) * cosh(b), sinh(b)) < 1e-10);
    CHECK(max_diff(intpow(a, 3), a * a * a) < 1e-11);
    CHECK(max_diff(intpow(a, -2) * a * a, Jet2(p, 8, 1.0)) < 1e-11);
  }
}

TEST_CASE("domain checks on the constant term") {
  const Jet2 z(Point2{0, 0}, 3, 0.0);
  CHECK_THROWS_AS(Jet2(Point2{0, 0}, 3, 1.0) / z, DomainError);
  CHECK_THROWS_AS(log(Jet2(Point2{0, 0}, 3, -1.0)), DomainError);
  CHECK_THROWS_AS(sqrt(z), DomainError);
}

TEST_CASE("partials agree with finite differences of the function") {
  const Point2 p{0.3, 0.2};
  const int K = 6;
  const Jet2 u = Jet2::lift(Var::U, p, K), v = Jet2::lift(Var::V, p, K);
  const Jet2 g = atan(u * v) + exp(u - v * v) / (2.0 + cos(u)) + sqrt(1.0 + u * u + v * v);
  auto f = [](double x, double y) {
    return std::atan(x * y) + std::exp(x - y * y) / (2.0 + std::cos(x)) + std::sqrt(1.0 + x * x + y * y);
  };
  CHECK(g.value() == doctest::Approx(f(p.u, p.v)).epsilon(1e-14));
  for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}})
    CHECK(g.partial(i, j) == doctest::Approx(fd_partial(f, p, i, j)).epsilon(1e-5));
  // d_u lowers the order and shifts coefficients
  const Jet2 gu = d_u(g);
  CHECK(gu.order() == K - 1);
  CHECK(gu.partial(0, 1) == doctest::Approx(g.partial(1, 1)).epsilon(1e-13));
  CHECK(d_v(g).partial(1, 0) == doctest::Approx(g.partial(1, 1)).epsilon(1e-13));
}

TEST_CASE("deflation divides by powers of v exactly") {
  std::mt19937 rng(5);
  const Point2 p{0.2, 0.0};
  for (int k = 1; k <= 3; ++k) {
    const Jet2 a = random_jet(rng, p, 9);
    const Jet2 v = Jet2::lift(Var::V, p, 9);
    const Jet2 prod = a * intpow(v, k);
    const Jet2 back = deflate_v(prod, k, 1e-12);
    CHECK(back.order() == 9 - k);
    CHECK(max_diff(back, a.truncated(9 - k)) < 1e-14);
  }
  const Jet2 u = Jet2::lift(Var::U, p, 5);
  CHECK_THROWS_AS(deflate_v(u + 1.0, 1, 1e-12), DeflationError);
}

TEST_CASE("compose and reexpand agree with direct expansion") {
  const Point2 p{0.1, 0.0};
  const int K = 7;
  const Jet2 u = Jet2::lift(Var::U, p, K), v = Jet2::lift(Var::V, p, K);
  const Jet2 g = sin(u) * exp(v) + u * v * v;
  // g(s + t^2, 2 t) at (s, t) = (0.1, 0)
  const Jet2 s = Jet2::lift(Var::U, p, K), t = Jet2::lift(Var::V, p, K);
  const Jet2 direct = sin(s + t * t) * exp(2.0 * t) + (s + t * t) * 4.0 * t * t;
  CHECK(max_diff(compose(g, s + t * t, 2.0 * t), direct) < 1e-12);
  const Point2 q{0.15, 0.03};
  const Jet2 re = reexpand(g, q, 3);
  const Jet2 uq = Jet2::lift(Var::U, q, 3), vq = Jet2::lift(Var::V, q, 3);
  const Jet2 exact = sin(uq) * exp(vq) + uq * vq * vq;
  CHECK(max_diff(re, exact) < 1e-6);  // truncation error of the order-7 source
  CHECK(g.eval_offset(0.05, 0.03) == doctest::Approx(exact.value()).epsilon(1e-8));
}

TEST_CASE("vector jets") {
  const Point2 p{0.0, 0.0};
  const Jet2 u = Jet2::lift(Var::U, p, 5), v = Jet2::lift(Var::V, p, 5);
  const JetVec3 a(u, v, 1.0 + u * v), b(v, 1.0 + u, u);
  const JetVec3 c = cross(a, b);
  const Jet2 ca = dot(c, a);
  for (double x : ca.coeffs()) CHECK(std::abs(x) < 1e-14);
  CHECK(std::abs(det3(a, b, c).value() - c.value().squaredNorm()) < 1e-14);
  const JetVec3 n = normalized(a);
  const Jet2 nn = dot(n, n) - 1.0;
  for (double x : nn.coeffs()) CHECK(std::abs(x) < 1e-13);
}
