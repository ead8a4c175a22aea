#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "frontal/frontal.hpp"
#include "oracles.hpp"

using namespace frontal;

namespace {

using Vec = Eigen::Vector3d;

Vec f52(double u, double v) { return {u, u * u + v * v / 2, u * v * v + std::pow(v, 5) / 5}; }

// Classical K and H of a regular patch from central differences of f.
struct ClassicKH {
  double K, H;
  Vec n;
};
ClassicKH classic_kh(const std::function<Vec(double, double)>& f, double u, double v) {
  const double h = 1e-4;
  const Vec fu = (f(u + h, v) - f(u - h, v)) / (2 * h);
  const Vec fv = (f(u, v + h) - f(u, v - h)) / (2 * h);
  const Vec fuu = (f(u + h, v) - 2 * f(u, v) + f(u - h, v)) / (h * h);
  const Vec fvv = (f(u, v + h) - 2 * f(u, v) + f(u, v - h)) / (h * h);
  const Vec fuv = (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) / (4 * h * h);
  const Vec n = fu.cross(fv).normalized();
  const double E = fu.dot(fu), F = fu.dot(fv), G = fv.dot(fv);
  const double L = fuu.dot(n), M = fuv.dot(n), N = fvv.dot(n);
  const double det = E * G - F * F;
  return {(L * N - M * M) / det, (E * N - 2 * F * M + G * L) / (2 * det), n};
}

}  // namespace

TEST_CASE("K and H off the axis match the classical formulas") {
  const SurfaceDef s = builtin("paper-52");
  Settings st;
  for (Point2 p : {Point2{0.1, 0.2}, Point2{-0.3, 0.1}, Point2{0.25, -0.35}}) {
    const FrontalPoint fp = evaluate_point(s, p, st);
    const ClassicKH ref = classic_kh(f52, p.u, p.v);
    const double orient = fp.nu.dot(ref.n) > 0 ? 1.0 : -1.0;
    CHECK(std::abs(std::abs(fp.nu.dot(ref.n)) - 1.0) < 1e-8);
    CHECK(fp.K == doctest::Approx(ref.K).epsilon(1e-6));
    CHECK(fp.H == doctest::Approx(orient * ref.H).epsilon(1e-6));
    CHECK(fp.kappa[0] >= fp.kappa[1]);
    CHECK(fp.kappa[0] * fp.kappa[1] == doctest::Approx(fp.K).epsilon(1e-10));
    CHECK(0.5 * (fp.kappa[0] + fp.kappa[1]) == doctest::Approx(fp.H).epsilon(1e-10));
  }
}

TEST_CASE("frame invariants on a grid of every builtin") {
  Settings st;
  for (const std::string& name : builtin_names()) {
    CAPTURE(name);
    const SurfaceDef s = builtin(name);
    const Interval a = s.axis_range(), t = s.transverse_range();
    for (int i = 0; i <= 6; ++i)
      for (int j = 0; j <= 6; ++j) {
        const Point2 p{a.lo + a.width() * (0.05 + 0.9 * i / 6.0), t.lo + t.width() * (0.05 + 0.9 * j / 6.0)};
        const FrameJets fj = frame_jets(s, p, st, false);
        const Vec nu = fj.nu.value(), fu = fj.fu.value(), fv = fj.fv.value(), h = fj.h.value();
        CHECK(std::abs(nu.norm() - 1) < 1e-10);
        CHECK(std::abs(fu.dot(nu)) < 1e-10 * std::max(1.0, fu.norm()));
        CHECK(std::abs(fv.dot(nu)) < 1e-10 * std::max(1.0, fv.norm()));
        CHECK(std::abs(h.dot(nu)) < 1e-10);
      }
    // lambda vanishes on the axis
    for (double u : {a.lo + 0.1 * a.width(), 0.5 * (a.lo + a.hi)}) {
      const FrameJets fj = frame_jets(s, {u, 0.0}, st, false);
      CHECK(fj.fv.value().norm() < 1e-12);
      CHECK(std::abs(fj.fu.value().cross(fj.fv.value()).dot(fj.nu.value())) < 1e-12);
    }
  }
}

TEST_CASE("near-axis re-expansion agrees with direct evaluation in the overlap") {
  for (const char* name : {"paper-52", "helicoid", "ridge"}) {
    CAPTURE(name);
    const SurfaceDef s = builtin(name);
    Settings near, direct;
    near.near_axis = 0.05;
    direct.near_axis = 0.0;
    for (double v : {0.03, -0.045}) {
      const Point2 p{0.12, v};
      const FrontalPoint a = evaluate_point(s, p, near), b = evaluate_point(s, p, direct);
      CHECK((a.nu - b.nu).norm() < 1e-8);
      CHECK((a.h - b.h).norm() < 1e-8);
      CHECK(a.K == doctest::Approx(b.K).epsilon(1e-6));
      CHECK(a.H == doctest::Approx(b.H).epsilon(1e-6));
    }
  }
}

TEST_CASE("invariants do not depend on the chart") {
  Settings st;
  const SurfaceDef s = builtin("paper-52");
  // f(phi(u), 2 v) with phi(u) = u + 0.2 u^2 + 0.1
  const SurfaceDef g = make_surface("reparam", "u + 0.2*u^2 + 0.1", "(u + 0.2*u^2 + 0.1)^2 + (2*v)^2/2",
                                    "(u + 0.2*u^2 + 0.1)*(2*v)^2 + (2*v)^5/5", Transverse::V, 0.0, {-0.4, 0.4},
                                    {-0.2, 0.2});
  for (double u : {-0.2, 0.0, 0.15}) {
    const InvariantSample a = invariants_at(g, u, st);
    const InvariantSample b = invariants_at(s, u + 0.2 * u * u + 0.1, st);
    CHECK(a.kappa_s == doctest::Approx(b.kappa_s).epsilon(1e-8));
    CHECK(a.kappa_nu == doctest::Approx(b.kappa_nu).epsilon(1e-8));
    CHECK(std::abs(a.kappa_t - b.kappa_t) < 1e-8);
    CHECK(std::abs(a.kappa_c - b.kappa_c) < 1e-8);
    CHECK(std::abs(a.r_b - b.r_b) < 1e-8);
    CHECK(std::abs(a.r_c - b.r_c) < 1e-8);
    CHECK(a.adaptedness < 1e-10);
  }
}

TEST_CASE("r_c' agrees with a least-squares line through samples") {
  Settings st;
  const SurfaceDef s = builtin("paper-52");
  const double u0 = 0.1;
  auto slope = [&](double d) {
    Eigen::MatrixXd A(21, 2);
    Eigen::VectorXd b(21);
    for (int k = 0; k < 21; ++k) {
      const double du = (k - 10) * d / 10;
      A(k, 0) = 1;
      A(k, 1) = du;
      b(k) = invariants_at(s, u0 + du, st).r_c;
    }
    return Eigen::Vector2d(A.colPivHouseholderQr().solve(b))(1);
  };
  // the fitted slope has an O(d^2) bias; one Richardson step removes it
  const double s1 = slope(1e-3), s2 = slope(2e-3);
  const double fit = s1 + (s1 - s2) / 3;
  const InvariantSource src = surface_invariant_source(s, st);
  const InvariantDerivatives der = invariant_derivatives(src, u0);
  // the axis of paper-52 is not unit speed
  CHECK(der.r_c1.value == doctest::Approx(fit / src.speed(u0).first).epsilon(1e-5));
}

TEST_CASE("front classification of the germ fixtures") {
  Settings st;
  CHECK(classify_front(builtin("cuspidal-edge"), 0.0, st).tag == FrontClass::Tag::Front);
  CHECK(classify_front(builtin("52-germ"), 0.0, st).tag == FrontClass::Tag::PureFrontal);
  CHECK(classify_front(builtin("paper-52"), 0.0, st).tag == FrontClass::Tag::PureFrontal);
  const FrontClass ccr = classify_front(builtin("ccr"), 0.0, st);
  CHECK(ccr.tag == FrontClass::Tag::KNonFront);
  CHECK(ccr.k == 1);
  const FrontClass s1 = classify_front(builtin("s1-plus"), 0.0, st);
  CHECK(s1.tag == FrontClass::Tag::KNonFront);
  CHECK(s1.k == 2);
}

TEST_CASE("non-frontal charts are rejected") {
  CHECK_THROWS_AS(validate_frontal(make_surface("plane", "u", "v", "u*v")), NumericalError);
  CHECK_NOTHROW(validate_frontal(builtin("paper-52")));
}

TEST_CASE("ridge report on the ridge fixture") {
  Settings st;
  const SurfaceDef s = builtin("ridge");
  const FrontalPoint fp = evaluate_point(s, {0.0, 0.0}, st);
  int first_order = 0;
  for (int j = 1; j <= 2; ++j) {
    const RidgeReport r = ridge_report(s, 0.0, j, st);
    CAPTURE(j);
    CAPTURE(r.V_kappa);
    CAPTURE(r.second_order);
    if (r.order == 1) ++first_order;
    // the closed form and the direct second derivative describe the same quantity
    if (r.order >= 1) CHECK(std::abs(r.V_kappa) < 1e-8);
  }
  CHECK(first_order >= 1);
  (void)fp;
}
