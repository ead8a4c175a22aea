#include <doctest.h>

#include <cmath>

#include "frontal/classify.hpp"
#include "frontal/verify.hpp"
#include "oracles.hpp"

using namespace frontal;

namespace {

bool definite(Verdict v) { return v != Verdict::Unclassified; }

SingularityReport reclassify(const SuiteOutcome& o, const ClassifySettings& cs) {
  const Settings st;
  if (o.c.developable) return classify_nr_developable(o.model, o.c.u0, st, cs);
  return classify_nr_nondevelopable(o.model, o.c.u0, o.w0, st, cs);
}

ScalarFn poly(oracle::Poly p) {
  return [p](double u) { return oracle::peval(p, u); };
}

}  // namespace

TEST_CASE("synthesized suite verdicts with clear margins") {
  for (const SuiteCase& c : synthesized_suite()) {
    CAPTURE(c.name);
    const SuiteOutcome o = run_suite_case(c);
    CHECK(to_string(o.report.verdict) == to_string(c.expected));
    CHECK(o.report.margin >= 1.0);
  }
}

TEST_CASE("shrinking thresholds never flips between two definite classes") {
  for (const SuiteCase& c : synthesized_suite()) {
    CAPTURE(c.name);
    const SuiteOutcome o = run_suite_case(c);
    ClassifySettings cs;
    Verdict prev = o.report.verdict;
    for (int k = 0; k < 4; ++k) {
      cs.value_tol /= 10;
      cs.deriv_tol /= 10;
      const Verdict v = reclassify(o, cs).verdict;
      if (definite(prev) && definite(v)) CHECK(to_string(v) == to_string(prev));
      if (definite(v)) prev = v;
    }
  }
}

TEST_CASE("a deciding quantity inside the band gives Unclassified") {
  const Settings st;
  // cuspidal-S1+ shape with kappa_s'' = 3e-5, between tau and band * tau
  const AxisModel m = frame_ode_synthesize(poly({0, 0, 1.5e-5}), poly({1, 1}), poly({0}), {-0.5, 0.5});
  const SingularityReport r = classify_nr_developable(m, 0.0, st);
  CHECK(to_string(r.verdict) == to_string(Verdict::Unclassified));
  CHECK(r.margin < 1.0);
  bool banded = false;
  for (const Criterion& c : r.criteria) banded = banded || c.state == Criterion::State::Band;
  CHECK(banded);
}

TEST_CASE("phi oracle Hessian agrees with its closed form") {
  const Settings st;
  for (const SuiteCase& c : synthesized_suite()) {
    if (c.developable) continue;
    CAPTURE(c.name);
    const SuiteOutcome o = run_suite_case(c);
    REQUIRE(o.has_phi);
    CHECK(std::abs(o.phi.phi) < 1e-8);
    CHECK(o.phi.hessian == doctest::Approx(o.phi.hessian_closed).epsilon(1e-4));
    CHECK(o.phi.phi_w == doctest::Approx(o.phi.phi_w_frame).epsilon(1e-4));
  }
}

TEST_CASE("developable fingerprint product is positive on cuspidal S1+ cases") {
  for (const SuiteCase& c : synthesized_suite()) {
    if (c.expected != Verdict::CuspidalS1Plus) continue;
    CAPTURE(c.name);
    const SuiteOutcome o = run_suite_case(c);
    // recover the polynomials from the closures by sampling
    oracle::Poly ks(4), kn(3);
    const double x[] = {-0.2, -0.1, 0.1, 0.2};
    Eigen::Matrix4d A;
    Eigen::Vector4d b;
    for (int i = 0; i < 4; ++i) {
      for (int k = 0; k < 4; ++k) A(i, k) = std::pow(x[i], k);
      b(i) = c.ks(x[i]);
    }
    const Eigen::Vector4d cks = A.colPivHouseholderQr().solve(b);
    for (int k = 0; k < 4; ++k) ks[k] = cks(k);
    for (int i = 0; i < 3; ++i) kn[i] = 0;
    kn[0] = c.kn(0.0);
    kn[1] = (c.kn(1e-3) - c.kn(-1e-3)) / 2e-3;
    kn[2] = (c.kn(1e-3) - 2 * c.kn(0.0) + c.kn(-1e-3)) / 2e-6;
    const oracle::Fingerprint fp = oracle::developable_fingerprint(o.model, ks, kn, c.u0);
    CHECK(fp.A * fp.B > 0);
    CHECK(fp.B == doctest::Approx(fp.B_closed).epsilon(1e-3));
  }
}

TEST_CASE("focal classification on the fixtures") {
  const Settings st;
  for (int j = 1; j <= 2; ++j) {
    const FocalReport r = classify_focal_point(builtin("paper-52"), j, 0.0, st);
    CHECK(to_string(r.verdict) == to_string(Verdict::Regular));
  }
  for (const SurfaceDef& s : ccr_suite()) {
    CAPTURE(s.name);
    int ccr = 0;
    for (int j = 1; j <= 2; ++j) {
      const FocalReport r = classify_focal_point(s, j, 0.0, st);
      if (r.verdict == Verdict::CuspidalCrossCap) {
        ++ccr;
        CHECK(r.lhs - r.rhs != doctest::Approx(0.0));
        CHECK(r.margin >= 1.0);
      }
    }
    CHECK(ccr >= 1);
  }
}

TEST_CASE("pure propagation: helicoid passes, paper-52 misses the hypotheses") {
  const Settings st;
  const SurfaceDef hel = builtin("helicoid");
  bool any = false;
  for (int j = 1; j <= 2; ++j) {
    const PurePropagationReport r = pure_propagation_check(hel, j, st, 11);
    if (r.hypotheses_met) {
      any = true;
      CHECK(r.pass);
      CHECK(r.max_abs_rc < 1e-6);
    }
  }
  CHECK(any);
  for (int j = 1; j <= 2; ++j) CHECK_FALSE(pure_propagation_check(builtin("paper-52"), j, st, 11).hypotheses_met);
}

TEST_CASE("frame ODE round trip recovers the prescribed invariants") {
  for (const SuiteCase& c : synthesized_suite()) {
    CAPTURE(c.name);
    const SynthesizedFrame sf(c.ks, c.kn, c.kt, {-0.5, 0.5});
    for (double u : {-0.3, 0.0, 0.25}) {
      const InvariantSample r = sf.recovered(u);
      CHECK(std::abs(r.kappa_s - c.ks(u)) < 1e-7);
      CHECK(std::abs(r.kappa_nu - c.kn(u)) < 1e-7);
      CHECK(std::abs(r.kappa_t - c.kt(u)) < 1e-7);
    }
  }
}
