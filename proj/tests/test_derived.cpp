#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "frontal/classify.hpp"
#include "frontal/derived.hpp"
#include "oracles.hpp"

using namespace frontal;

namespace {

using Vec = Eigen::Vector3d;

ScalarFn poly(oracle::Poly p) {
  return [p](double u) { return oracle::peval(p, u); };
}

// C_1 of the maximal helicoid in the original chart (u > 0).
Vec helicoid_c1(double u, double v) {
  const double d = std::sqrt(1 + 6 * u * u + u * u * u * u);
  const double a = 1 + u * u;
  return {-(d * std::cos(v) + a * std::sin(v)) / (2 * u), -(d * std::sin(v) - a * std::cos(v)) / (2 * u),
          -d / 4 * (1 + 1 / (u * u)) + v};
}

// Classical Gauss curvature of a regular patch from central differences.
double classic_K(const std::function<Vec(double, double)>& f, double u, double v) {
  const double h = 1e-4;
  const Vec fu = (f(u + h, v) - f(u - h, v)) / (2 * h);
  const Vec fv = (f(u, v + h) - f(u, v - h)) / (2 * h);
  const Vec fuu = (f(u + h, v) - 2 * f(u, v) + f(u - h, v)) / (h * h);
  const Vec fvv = (f(u, v + h) - 2 * f(u, v) + f(u, v - h)) / (h * h);
  const Vec fuv = (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) / (4 * h * h);
  const Vec n = fu.cross(fv).normalized();
  const double E = fu.dot(fu), F = fu.dot(fv), G = fv.dot(fv);
  const double L = fuu.dot(n), M = fuv.dot(n), N = fvv.dot(n);
  return (L * N - M * M) / (E * G - F * F);
}

}  // namespace

TEST_CASE("congruence Jacobian factorizes") {
  Settings st;
  for (const char* name : {"paper-52", "ridge", "helicoid"}) {
    CAPTURE(name);
    const SurfaceDef s = builtin(name);
    std::mt19937 rng(17);
    const Interval a = s.axis_range(), t = s.transverse_range();
    std::uniform_real_distribution<double> du(a.lo + 0.1 * a.width(), a.hi - 0.1 * a.width());
    std::uniform_real_distribution<double> dv(t.lo + 0.1 * t.width(), t.hi - 0.1 * t.width());
    std::uniform_real_distribution<double> dw(-0.5, 0.5);
    std::vector<std::array<double, 3>> samples;
    for (int k = 0; k < 40; ++k) samples.push_back({du(rng), dv(rng), dw(rng)});
    for (const CongruencePoint& c : congruence_check(s, samples, st)) CHECK(c.residual < 1e-8);
  }
}

TEST_CASE("synthesized frame matches the Taylor series of the frame ODE") {
  const oracle::Poly ks{0.5, 1.0}, kn{1.0, 0.0, 0.3}, kt{0.2, -1.0};
  const oracle::TaylorFrame ref(ks, kn, kt);
  const SynthesizedFrame sf(poly(ks), poly(kn), poly(kt), {-0.5, 0.5});
  for (double u : {-0.45, -0.2, 0.0, 0.3, 0.5}) {
    const AxisFrame a = sf.at(u), b = ref.at(u);
    CHECK((a.gamma - b.gamma).norm() < 1e-10);
    CHECK((a.T - b.T).norm() < 1e-10);
    CHECK((a.h - b.h).norm() < 1e-10);
    CHECK((a.nu - b.nu).norm() < 1e-10);
    CHECK(std::abs(a.T.cross(a.h).dot(a.nu) - 1) < 1e-12);
  }
  for (double u : {-0.3, 0.1, 0.4}) {
    const InvariantSample r = sf.recovered(u);
    CHECK(r.kappa_s == doctest::Approx(oracle::peval(ks, u)).epsilon(1e-7));
    CHECK(r.kappa_nu == doctest::Approx(oracle::peval(kn, u)).epsilon(1e-7));
    CHECK(r.kappa_t == doctest::Approx(oracle::peval(kt, u)).epsilon(1e-7));
  }
}

TEST_CASE("simple frames") {
  // no curvature: a straight line with a constant frame
  const SynthesizedFrame line(poly({0}), poly({0}), poly({0}), {-1, 1});
  CHECK((line.at(0.7).gamma - Vec(0.7, 0, 0)).norm() < 1e-12);
  // kappa_nu = 1: a unit circle in the (T, nu) plane
  const SynthesizedFrame circ(poly({0}), poly({1}), poly({0}), {-1, 1});
  CHECK((circ.at(0.8).gamma - Vec(std::sin(0.8), 0, 1 - std::cos(0.8))).norm() < 1e-11);
}

TEST_CASE("NR singular points are the zeros of kappa_t") {
  Settings st;
  const AxisModel m = frame_ode_synthesize(poly({0}), poly({1}), poly({0, 1}), {-0.5, 0.5});
  const SingularCurveTrace tr = nr_singular_points(m, st);
  REQUIRE(tr.params.size() == 1);
  CHECK(std::abs(tr.params[0].u) < 1e-10);
  CHECK(tr.params[0].v == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(nr_developable_test(m, st).developable);
  const RuledPoint rp = nr_eval(m, 0.2, 0.3, st);
  CHECK((rp.NR_u - rp.NR_u_direct).norm() < 1e-7);
  CHECK((rp.NR - (m.frame(0.2).gamma + 0.3 * m.frame(0.2).nu)).norm() < 1e-14);
}

TEST_CASE("developable NR and planar curves") {
  Settings st;
  const AxisModel dev = frame_ode_synthesize(poly({0.3, 1}), poly({1, 0.5}), poly({0}), {-0.5, 0.5});
  const DevelopableEvidence ev = nr_developable_test(dev, st);
  CHECK(ev.developable);
  CHECK(ev.max_kappa_t < 1e-12);
  // kappa_s = kappa_t = 0 keeps gamma in the (T, nu) plane
  const AxisModel planar = frame_ode_synthesize(poly({0}), poly({1, 2}), poly({0}), {-0.5, 0.5});
  std::vector<Vec> pts;
  for (int k = 0; k <= 20; ++k) pts.push_back(planar.frame(-0.5 + k * 0.05).gamma);
  CHECK(plane_fit_residual(pts) < 1e-10);
  pts.push_back(Vec(0, 0.1, 0));
  CHECK(plane_fit_residual(pts) > 1e-3);
}

TEST_CASE("focal surface of the helicoid against the closed form") {
  Settings st;
  const SurfaceDef s = builtin("helicoid");
  for (double u : {0.5, 0.8, 1.6, 2.2})
    for (double v : {-0.4, 0.3}) {
      CAPTURE(u);
      CAPTURE(v);
      const Point2 p = s.to_internal({std::log(u), v});
      const FocalPoint a = focal_eval(s, 1, p, st), b = focal_eval(s, 2, p, st);
      // one of the two focal sheets is the closed-form C_1
      const FocalPoint& c = (a.C - helicoid_c1(u, v)).norm() < (b.C - helicoid_c1(u, v)).norm() ? a : b;
      CHECK((c.C - helicoid_c1(u, v)).norm() < 1e-9);
      const double Kref = classic_K(helicoid_c1, u, v);
      CHECK(c.K == doctest::Approx(Kref).epsilon(1e-5));
      const double d = 1 + 6 * u * u + u * u * u * u;
      CHECK(c.K == doctest::Approx(4 * std::pow(u, 4) / (d * d)).epsilon(1e-8));
      // the focal normal is normal to the sheet
      CHECK(std::abs(c.e.dot(c.C_u)) < 1e-8 * std::max(1.0, c.C_u.norm()));
      CHECK(std::abs(c.e.dot(c.C_v)) < 1e-8 * std::max(1.0, c.C_v.norm()));
    }
}

TEST_CASE("focal points and Rodrigues on paper-52") {
  Settings st;
  const SurfaceDef s = builtin("paper-52");
  for (int j = 1; j <= 2; ++j)
    for (Point2 p : {Point2{0.1, 0.2}, Point2{-0.2, 0.15}}) {
      const FocalPoint fc = focal_eval(s, j, p, st);
      const FrontalPoint fp = evaluate_point(s, p, st);
      CHECK((fc.C - (fp.f + fp.nu / fp.kappa[j - 1])).norm() < 1e-12);
      // dC(V) is parallel to nu with coefficient V rho
      CHECK((fc.dC_V - fc.V_rho * fc.nu).norm() < 1e-8 * std::max(1.0, fc.dC_V.norm()));
      CHECK(fc.rho == doctest::Approx(1 / fp.kappa[j - 1]));
    }
}

TEST_CASE("focal singular trace stays on the detector zero set") {
  Settings st;
  const SurfaceDef s = builtin("helicoid");
  ScanOptions opt;
  opt.lines = 61;
  std::size_t total = 0;
  for (int j = 1; j <= 2; ++j) {
    const SingularCurveTrace tr = focal_singular_trace(s, j, st, opt);
    total += tr.params.size();
    for (const Point2& p : tr.params) {
      const double d = focal_detector(s, j, p, st);
      if (std::isfinite(d)) CHECK(std::abs(d) < 1e-6);
    }
  }
  CHECK(total > 0);
}
