#include "frontal/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "frontal/derived.hpp"
#include "frontal/mesh.hpp"
#include "frontal/parallel.hpp"

namespace frontal {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

const double kSqrt2 = std::sqrt(2.0);

double max_abs(const std::vector<double>& xs) {
  double m = 0;
  for (double x : xs) m = std::max(m, std::isfinite(x) ? std::abs(x) : INFINITY);
  return m;
}

// ---- 5/2 example -----------------------------------------------------------

std::vector<CheckRow> criterion1() {
  const SurfaceDef s = builtin("paper-52");
  const Settings st;
  const InvariantSample I = invariants_at(s, 0.0, st);
  const InvariantDerivatives d = invariant_derivatives(surface_invariant_source(s, st), 0.0);
  const std::string a = "5/2 example invariants";
  return {
      check_close("1.kappa_s", a, I.kappa_s, 2.0, 1e-8),
      check_close("1.kappa_nu", a, I.kappa_nu, 0.0, 1e-8),
      check_close("1.kappa_t", a, I.kappa_t, 2.0, 1e-8),
      check_close("1.kappa_c", a, I.kappa_c, 0.0, 1e-8),
      check_close("1.r_b", a, I.r_b, 0.0, 1e-8),
      check_close("1.r_c", a, I.r_c, 72.0, 1e-8),
      check_close("1.kappa_t'", a, d.kappa_t1.value, 0.0, 1e-6),
      check_close("1.kappa_nu'", a, d.kappa_nu1.value, -4.0, 1e-6),
  };
}

std::vector<CheckRow> criterion2() {
  const SurfaceDef s = builtin("paper-52");
  const FrontalPoint P = evaluate_point(s, {0.0, 0.0}, Settings{});
  const std::string a = "5/2 example curvatures";
  return {
      check_close("2.kappa_1", a, P.kappa[0], 2.0, 1e-8),
      check_close("2.kappa_2", a, P.kappa[1], -2.0, 1e-8),
      check_close("2.K", a, P.K, -4.0, 1e-8),
      check_close("2.H", a, P.H, 0.0, 1e-8),
  };
}

std::vector<CheckRow> criterion3() {
  const SurfaceDef s = builtin("paper-52");
  const Settings st;
  std::vector<CheckRow> rows;
  const std::string a = "5/2 example focal curvatures";
  for (int j : {1, 2}) {
    const FocalPoint fp = focal_eval(s, j, {0.0, 0.0}, st);
    const FocalCurvaturePrediction pr = focal_curvature_prediction(s, j, 0.0, st);
    const std::string c = "C" + std::to_string(j);
    const double H = (j == 1 ? -3.0 : 3.0) / (2.0 * kSqrt2);
    rows.push_back(check_close("3.K^" + c + ".direct", a, fp.K, -1.0, 1e-8));
    rows.push_back(check_close("3.K^" + c + ".closed", a, pr.K, -1.0, 1e-8));
    rows.push_back(check_close("3.K^" + c + ".agree", a, fp.K - pr.K, 0.0, 1e-8));
    rows.push_back(check_close("3.H^" + c + ".direct", a, fp.H, H, 1e-8));
    rows.push_back(check_close("3.H^" + c + ".closed", a, pr.H, H, 1e-8));
    rows.push_back(check_close("3.H^" + c + ".agree", a, fp.H - pr.H, 0.0, 1e-8));
  }
  return rows;
}

// ---- helicoid ----------------------------------------------------------------

// Original chart (u, v) with u = e^w; the builtin is entered in (w, v).
Point2 helicoid_internal(double u, double v) {
  const SurfaceDef s = builtin("helicoid");
  return s.to_internal({std::log(u), v});
}

Eigen::Vector3d helicoid_nu_original(double u, double v) {
  const double d = std::sqrt(1 + 6 * u * u + u * u * u * u);
  return Eigen::Vector3d(2 * u * std::cos(v), 2 * u * std::sin(v), 1 + u * u) / d;
}

Eigen::Vector3d helicoid_c1_closed(double u, double v) {
  const double d = std::sqrt(1 + 6 * u * u + u * u * u * u);
  const double a = 1 + u * u;
  return {-(d * std::cos(v) + a * std::sin(v)) / (2 * u), -(d * std::sin(v) - a * std::cos(v)) / (2 * u),
          -d / 4 * (1 + 1 / (u * u)) + v};
}

Eigen::Vector3d c1_point(const SurfaceDef& s, Point2 p, const Settings& st) {
  const FrontalPoint fp = evaluate_point(s, p, st);
  return fp.f + fp.nu / fp.kappa[0];
}

std::vector<CheckRow> criterion4() {
  const SurfaceDef s = builtin("helicoid");
  const Settings st;
  std::vector<CheckRow> rows;
  const double v0 = 0.3;
  const std::string a = "helicoid curvature formulas";
  for (double u : {0.5, 1.0, 2.0}) {
    const FrontalPoint P = evaluate_point(s, helicoid_internal(u, v0), st);
    const double sgn = P.nu.dot(helicoid_nu_original(u, v0)) > 0 ? 1.0 : -1.0;
    const double d2 = 1 + 6 * u * u + u * u * u * u;
    rows.push_back(check_close("4.kappa_1(" + fmt(u) + ")", a, sgn * P.kappa[0], -4 * u * u / d2, 1e-9,
                               "orientation factor " + fmt(sgn)));
  }
  for (double u : {0.5, 2.0}) {
    const Point2 p = helicoid_internal(u, v0);
    const FrontalPoint P = evaluate_point(s, p, st);
    const double sgn = P.nu.dot(helicoid_nu_original(u, v0)) > 0 ? 1.0 : -1.0;
    const FocalPoint fp = focal_eval(s, 1, p, st);
    const double d2 = 1 + 6 * u * u + u * u * u * u;
    rows.push_back(check_close("4.K^C1(" + fmt(u) + ").stated", a, fp.K, 4 * u * u * u * u / d2, 1e-8,
                               "formula as printed"));
    rows.push_back(check_close("4.K^C1(" + fmt(u) + ").corrected", a, fp.K, 4 * u * u * u * u / (d2 * d2), 1e-8,
                               "4u^4/(1+6u^2+u^4)^2"));
    rows.push_back(check_close("4.H^C1(" + fmt(u) + ")", a, sgn * fp.H, -u / (kSqrt2 * (1 + u * u)), 1e-8,
                               "orientation factor " + fmt(sgn)));
  }
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> U(0.4, 2.5), V(-1.5, 1.5);
  double worst = 0;
  for (int k = 0; k < 50; ++k) {
    const double u = U(rng), v = V(rng);
    const Eigen::Vector3d c = c1_point(s, helicoid_internal(u, v), st);
    const Eigen::Vector3d ci = c1_point(s, helicoid_internal(1 / u, v), st);
    worst = std::max(worst, (c - ci).norm());
  }
  rows.push_back(check_below("4.symmetry", "helicoid C_1(1/u,v) = C_1(u,v)", worst, 1e-12, "50 random points"));
  return rows;
}

// ---- structural identities ---------------------------------------------------

std::vector<std::string> example_surfaces() {
  return {"paper-52", "helicoid", "ridge", "cuspidal-edge", "ccr", "s1-plus", "s1-minus", "52-germ", "fold", "72-ccr"};
}

CheckRow congruence_row(const SurfaceDef& s, int n, unsigned seed) {
  std::mt19937 rng(seed);
  const Interval A = s.axis_range(), B = s.transverse_range();
  std::uniform_real_distribution<double> U(A.lo, A.hi), V(B.lo, B.hi), W(-2.0, 2.0);
  std::vector<std::array<double, 3>> samples;
  for (int k = 0; k < n; ++k) samples.push_back({U(rng), V(rng), W(rng)});
  const auto pts = congruence_check(s, samples, Settings{});
  double worst = 0;
  for (const CongruencePoint& c : pts) worst = std::max(worst, std::isfinite(c.residual) ? c.residual : INFINITY);
  return check_below("5." + s.name, "Jacobian factorization (1-w k1)(1-w k2) lambda", worst, 1e-8,
                     std::to_string(n) + " random (u,v,w)");
}

std::vector<CheckRow> criterion5() {
  std::vector<CheckRow> rows;
  unsigned seed = 5;
  for (const std::string& name : example_surfaces()) rows.push_back(congruence_row(builtin(name), 100, seed++));
  return rows;
}

struct StructuralResiduals {
  double frontal = 0, weingarten = 0, focal_normal = 0, focal_derivative = 0, rodrigues = 0;
  int focal_points = 0;
};

StructuralResiduals structural_residuals(const SurfaceDef& s, int n) {
  const Settings st;
  const Interval A = s.axis_range(), B = s.transverse_range();
  const std::size_t total = static_cast<std::size_t>(n) * n;
  std::vector<StructuralResiduals> per(total);
  parallel_for(total, [&](std::size_t k) {
    const int i = static_cast<int>(k) / n, j = static_cast<int>(k) % n;
    const Point2 p{A.lo + A.width() * i / (n - 1), B.lo + B.width() * j / (n - 1)};
    StructuralResiduals& r = per[k];
    const FrameJets fj = frame_jets(s, p, st, true);
    const Eigen::Vector3d fu = fj.fu.value(), fv = fj.fv.value(), h = fj.h.value(), nu = fj.nu.value();
    r.frontal = std::max({std::abs(fu.dot(nu)), std::abs(fv.dot(nu)), std::abs(nu.norm() - 1.0)});
    const FrontalPoint P = point_from_jets(fj, st);
    const Eigen::Vector3d w1 = fj.nu_u.value() - (P.X1 * fu + P.X2 * h);
    const Eigen::Vector3d w2 = fj.nu_v.value() - p.v * (P.Y1 * fu + P.Y2 * h);
    r.weingarten = std::max(w1.norm(), w2.norm());
    for (int jj : {1, 2}) {
      const double kj = P.kappa[jj - 1];
      if (std::abs(kj) < 1e-3 || P.Gamma < 1e-6) continue;
      const FocalPoint fp = focal_eval(s, jj, p, st);
      const double cu = std::max(1.0, fp.C_u.norm()), cv = std::max(1.0, fp.C_v.norm());
      r.focal_normal = std::max({r.focal_normal, std::abs(fp.e.dot(fp.C_u)) / cu, std::abs(fp.e.dot(fp.C_v)) / cv});
      r.focal_derivative =
          std::max(r.focal_derivative, (fp.dC_V - fp.V_rho * fp.nu).norm() / std::max(1.0, fp.dC_V.norm()));
      ++r.focal_points;
    }
  });
  StructuralResiduals out;
  for (const StructuralResiduals& r : per) {
    out.frontal = std::max(out.frontal, r.frontal);
    out.weingarten = std::max(out.weingarten, r.weingarten);
    out.focal_normal = std::max(out.focal_normal, r.focal_normal);
    out.focal_derivative = std::max(out.focal_derivative, r.focal_derivative);
    out.focal_points += r.focal_points;
  }
  // dnu(V_j) = -kappa_j df(V_j) on the axis, divided by v:
  // -(M - k F) nu_u + (L - k E) nu_1 = -k x_j
  for (int i = 0; i < n; ++i) {
    const Point2 p{A.lo + A.width() * i / (n - 1), 0.0};
    const FrameJets fj = frame_jets(s, p, st, true);
    const FrontalPoint P = point_from_jets(fj, st);
    for (int jj : {0, 1}) {
      const double k = P.kappa[jj];
      const Eigen::Vector3d lhs = -(P.M - k * P.F) * fj.nu_u.value() + (P.L - k * P.E) * fj.nu1->value();
      out.rodrigues = std::max(out.rodrigues, (lhs + k * P.x[jj]).norm());
    }
  }
  return out;
}

std::vector<CheckRow> structural_rows(const SurfaceDef& s, int n) {
  const StructuralResiduals r = structural_residuals(s, n);
  const std::string g = std::to_string(n) + "x" + std::to_string(n) + " grid";
  return {
      check_below("6." + s.name + ".frontal", "frontal condition", r.frontal, 1e-8, g),
      check_below("6." + s.name + ".weingarten", "Weingarten formulas", r.weingarten, 1e-8, g),
      check_below("6." + s.name + ".x_j.dC_j", "<x_j, dC_j> = 0", r.focal_normal, 1e-8,
                  std::to_string(r.focal_points) + " focal samples"),
      check_below("6." + s.name + ".dC_j(V_j)", "dC_j(V_j) = (V_j rho_j) nu", r.focal_derivative, 1e-8,
                  std::to_string(r.focal_points) + " focal samples"),
      check_below("6." + s.name + ".rodrigues", "dnu(V_j) = -kappa_j df(V_j) on the axis", r.rodrigues, 1e-8,
                  std::to_string(n) + " axis samples"),
  };
}

std::vector<CheckRow> criterion6() {
  std::vector<CheckRow> rows;
  for (const char* name : {"paper-52", "helicoid", "ridge"}) {
    for (CheckRow& r : structural_rows(builtin(name), 41)) rows.push_back(std::move(r));
  }
  return rows;
}

// ---- psi classification ------------------------------------------------------

std::vector<CheckRow> criterion7() {
  const Settings st;
  std::vector<CheckRow> rows;
  const FrontClass ce = classify_front(builtin("cuspidal-edge"), 0.0, st);
  rows.push_back(check_true("7.cuspidal-edge.class", "cuspidal edge is a front", ce.tag == FrontClass::Tag::Front,
                            to_string(ce.tag)));
  rows.push_back(check_close("7.cuspidal-edge.psi", "psi(0) of (u,v^2,v^3)", ce.derivatives.at(0), 1.5, 1e-9));
  const FrontClass cc = classify_front(builtin("ccr"), 0.0, st);
  rows.push_back(check_true("7.ccr.class", "cuspidal cross cap is a 1-non-front",
                            cc.tag == FrontClass::Tag::KNonFront && cc.k == 1,
                            to_string(cc.tag) + " k=" + std::to_string(cc.k)));
  for (const char* name : {"52-germ", "fold", "72-ccr"}) {
    const FrontClass fc = classify_front(builtin(name), 0.0, st);
    rows.push_back(check_true(std::string("7.") + name + ".class", "pure-frontal germ",
                              fc.tag == FrontClass::Tag::PureFrontal, to_string(fc.tag)));
    rows.push_back(check_below(std::string("7.") + name + ".max_psi", "psi vanishes on the axis window",
                               fc.max_abs_profile, 1e-10));
  }
  return rows;
}

std::vector<CheckRow> criterion8() {
  const SurfaceDef s = builtin("paper-52");
  const Settings st;
  const FrameJets fj = frame_jets(s, {0.0, 0.0}, st, true);
  const CurvatureJets cj = curvature_jets(fundamental_jets(fj));
  const double k1v = cj.k[0].partial(0, 1);
  const InvariantSample I = invariants_at(s, 0.0, st);
  const FrontalPoint P = evaluate_point(s, {0.0, 0.0}, st);
  const double rhs = I.r_c * (P.kappa[0] - I.kappa_nu) / (48.0 * std::sqrt(P.Gamma));
  const std::string a = "(kappa_1)_v = r_c (kappa_1 - kappa_nu) / (48 sqrt Gamma)";
  return {
      check_close("8.jet", a, k1v, 1.5, 1e-7, "jet route"),
      check_close("8.formula", a, rhs, 1.5, 1e-7, "invariant route"),
      check_close("8.agree", a, k1v - rhs, 0.0, 1e-7),
  };
}

// ---- classifier suite ------------------------------------------------------

bool verdict_is_s1(Verdict v) { return v == Verdict::S1Plus || v == Verdict::S1Minus; }

std::vector<CheckRow> criterion9() {
  std::vector<CheckRow> rows;
  const std::vector<SuiteCase> suite = synthesized_suite();
  std::vector<SuiteOutcome> out(suite.size());
  parallel_for(suite.size(), [&](std::size_t k) { out[k] = run_suite_case(suite[k]); });
  for (const SuiteOutcome& o : out) {
    rows.push_back(check_true("9." + o.c.name + ".verdict", "prescribed branch", o.report.verdict == o.c.expected,
                              to_string(o.report.verdict) + " (expected " + to_string(o.c.expected) + ")"));
    if (!o.has_phi) continue;
    if (o.c.expected == Verdict::CrossCap) {
      const bool whitney = std::abs(o.phi.phi_frame) < 1e-6 && std::abs(o.phi.phi_w_frame) > 1e-3;
      rows.push_back(check_true("9." + o.c.name + ".whitney", "phi = 0, phi_w != 0 at a cross cap", whitney,
                                "phi " + fmt(o.phi.phi_frame) + ", phi_w " + fmt(o.phi.phi_w_frame)));
    } else if (verdict_is_s1(o.c.expected)) {
      const double want = o.c.expected == Verdict::S1Minus ? 1.0 : -1.0;
      const bool ok = std::abs(o.phi.phi_w_frame) < 1e-6 && o.phi.hessian * want > 0 &&
                      std::abs(o.phi.hessian - o.phi.hessian_closed) < 1e-5 * std::max(1.0, std::abs(o.phi.hessian));
      rows.push_back(check_true("9." + o.c.name + ".hessian", "phi_w = 0 and Hessian sign at S_1", ok,
                                "phi_w " + fmt(o.phi.phi_w_frame) + ", Hessian " + fmt(o.phi.hessian) +
                                    ", closed " + fmt(o.phi.hessian_closed)));
    }
  }
  return rows;
}

// ---- focal singular set ------------------------------------------------------

std::vector<CheckRow> criterion10() {
  const Settings st;
  std::vector<CheckRow> rows;
  const SurfaceDef r = builtin("ridge");
  const SingularCurveTrace tr = focal_singular_trace(r, 1, st);
  double best = INFINITY;
  std::size_t at = 0;
  for (std::size_t k = 0; k < tr.params.size(); ++k) {
    const double d = std::hypot(tr.params[k].u, tr.params[k].v);
    if (d < best) {
      best = d;
      at = k;
    }
  }
  rows.push_back(check_below("10.ridge.through_origin", "S(C_1) is the zero set of V_1 rho_1", best, 1e-10,
                             std::to_string(tr.params.size()) + " trace points"));
  const RidgeReport rr = ridge_report(r, 0.0, 1, st);
  const SingularCurveTrace::Kind want =
      rr.order == 1 ? SingularCurveTrace::Kind::First : SingularCurveTrace::Kind::Second;
  const bool kind_ok = !tr.kinds.empty() && tr.kinds[at] == want;
  rows.push_back(check_true("10.ridge.kind", "kind from ridge order", kind_ok,
                            "ridge order " + std::to_string(rr.order) + ", trace kind " +
                                (tr.kinds.empty() ? std::string("none") : to_string(tr.kinds[at]))));
  const SingularCurveTrace t52 = focal_singular_trace(builtin("paper-52"), 1, st);
  double nearest = INFINITY;
  for (const Point2& p : t52.params) nearest = std::min(nearest, std::hypot(p.u, p.v));
  rows.push_back(check_true("10.paper-52.avoids", "C_1 regular near a 5/2-cuspidal edge", nearest > 0.05,
                            "nearest trace point at distance " + fmt(nearest)));
  return rows;
}

// ---- ccr consistency -----------------------------------------------------------

double psi_slope_direct(const SurfaceDef& s, int j, const Settings& st) {
  const double h = 1e-3;
  const std::vector<double> ts{-2 * h, -h, 0.0, h, 2 * h};
  const auto prof = focal_psi_profile(s, j, ts, 0.05, st);
  return (prof[0].psi - 8 * prof[1].psi + 8 * prof[3].psi - prof[4].psi) / (12 * h);
}

std::vector<CheckRow> criterion11() {
  const Settings st;
  std::vector<CheckRow> rows;
  for (const SurfaceDef& s : ccr_suite()) {
    const FocalReport r = classify_focal_point(s, 1, 0.0, st);
    const Criterion* rc1 = r.find("r_c'");
    const bool hyp = rc1 && rc1->state == Criterion::State::NonZero && r.ridge_order == 1;
    rows.push_back(check_true("11." + s.name + ".hypotheses", "r_c = 0, r_c' != 0, first-order ridge", hyp,
                              "r_c' " + (rc1 ? fmt(rc1->value) : std::string("?")) + ", ridge order " +
                                  std::to_string(r.ridge_order)));
    const double slope = psi_slope_direct(s, 1, st);
    const bool ineq = r.verdict == Verdict::CuspidalCrossCap;
    const bool ok = (r.verdict == Verdict::CuspidalCrossCap || r.verdict == Verdict::NotCuspidalCrossCap) &&
                    ineq == (std::abs(slope) > 1e-6);
    rows.push_back(check_true("11." + s.name + ".consistent", "inequality <=> psi_C1'(0) != 0", ok,
                              to_string(r.verdict) + ", lhs " + fmt(r.lhs) + ", rhs " + fmt(r.rhs) +
                                  ", psi' " + fmt(slope)));
  }
  return rows;
}

// ---- pure propagation on the helicoid ----------------------------------------

std::vector<CheckRow> criterion12() {
  const SurfaceDef s = builtin("helicoid");
  const Settings st;
  std::vector<CheckRow> rows;
  const PurePropagationReport pr = pure_propagation_check(s, 1, st);
  rows.push_back(check_true("12.hypotheses", "r_c = 0 and first-order ridge along the axis", pr.hypotheses_met,
                            pr.note));
  rows.push_back(check_below("12.trace", "S(C_1) is the axis", pr.trace_distance, 1e-8));
  rows.push_back(check_below("12.psi", "psi_C1 vanishes along S(C_1)", pr.max_abs_psi, 1e-8));
  // meshed domain: the user chart grid minus |u - 1| < 0.02 in the original chart
  const int n = 41;
  std::vector<double> K(static_cast<std::size_t>(n) * n, 0.0), H(K.size(), 0.0);
  parallel_for(K.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k) / n, j = static_cast<int>(k) % n;
    const Point2 user{s.u_range.lo + s.u_range.width() * i / (n - 1), s.v_range.lo + s.v_range.width() * j / (n - 1)};
    if (std::abs(std::exp(user.u) - 1.0) < 0.02) return;
    const FocalPoint fp = focal_eval(s, 1, s.to_internal(user), st);
    if (!fp.regular) return;
    K[k] = fp.K;
    H[k] = fp.H;
  });
  rows.push_back(check_below("12.K_bound", "|K^C1| <= max 4u^4/(1+6u^2+u^4)^2 = 1/16", max_abs(K), 0.0625 + 1e-6,
                             "41x41 grid"));
  rows.push_back(check_below("12.H_bound", "|H^C1| <= max u/(sqrt2 (1+u^2)) = 1/(2 sqrt2)", max_abs(H),
                             1.0 / (2 * kSqrt2) + 1e-6, "41x41 grid"));
  return rows;
}

// ---- jet engine ------------------------------------------------------------

// Central difference of order k in one variable with step h; O(h^2).
double central(const std::function<double(double)>& g, int k, double h) {
  switch (k) {
    case 0: return g(0);
    case 1: return (g(h) - g(-h)) / (2 * h);
    case 2: return (g(h) - 2 * g(0) + g(-h)) / (h * h);
    default: return (g(2 * h) - 2 * g(h) + 2 * g(-h) - g(-2 * h)) / (2 * h * h * h);
  }
}

double fd_partial(const Expr& e, Point2 p, int i, int j, double h) {
  auto at = [&](double du, double dv) {
    const double u = p.u + du, v = p.v + dv;
    Bindings<double> b;
    b.u = &u;
    b.v = &v;
    return eval_expression(e, b);
  };
  auto D = [&](double step) {
    return central([&](double du) { return central([&](double dv) { return at(du, dv); }, j, step); }, i, step);
  };
  return (4 * D(h / 2) - D(h)) / 3;
}

std::vector<CheckRow> criterion13() {
  std::vector<CheckRow> rows;
  double worst = 0;
  std::string worst_at;
  bool exact = true;
  for (const CorpusEntry& c : jet_corpus()) {
    const Expr e = parse_expression(c.text);
    const Jet2 U = Jet2::lift(Var::U, c.base, 3), V = Jet2::lift(Var::V, c.base, 3);
    Bindings<Jet2> b;
    b.u = &U;
    b.v = &V;
    const Jet2 J = eval_expression(e, b);
    for (int d = 0; d <= 3; ++d) {
      for (int j = 0; j <= d; ++j) {
        const double jet = J.partial(d - j, j);
        const double fd = fd_partial(e, c.base, d - j, j, 2e-2);
        const double rel = std::abs(jet - fd) / std::max(1.0, std::abs(jet));
        if (rel > worst) {
          worst = rel;
          worst_at = c.text + " d" + std::to_string(d - j) + std::to_string(j);
        }
      }
    }
    // deflate(a * v^k, k) == a exactly, on the axis
    const Point2 axis{c.base.u, 0.0};
    const Jet2 Ua = Jet2::lift(Var::U, axis, 6), Va = Jet2::lift(Var::V, axis, 6);
    Bindings<Jet2> ba;
    ba.u = &Ua;
    ba.v = &Va;
    Jet2 a;
    try {
      a = eval_expression(e, ba);
    } catch (const DomainError&) {
      continue;
    }
    for (int k = 1; k <= 3; ++k) {
      const Jet2 back = deflate_v(a * intpow(Va, k), k, 1e-12);
      const Jet2 want = a.truncated(back.order());
      if (back.coeffs() != want.coeffs()) exact = false;
    }
  }
  rows.push_back(check_below("13.partials", "jet partials vs Richardson differences", worst, 1e-5,
                             std::to_string(jet_corpus().size()) + " expressions, worst " + worst_at));
  rows.push_back(check_true("13.deflate_mul", "deflate(a v^k, k) == a bit for bit", exact));
  return rows;
}

ScalarFn poly(std::vector<double> c) {
  return [c](double u) {
    double r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * u + *it;
    return r;
  };
}

}  // namespace

CheckRow check_close(std::string id, std::string anchor, double computed, double expected, double tol,
                     std::string note) {
  CheckRow r{std::move(id), std::move(anchor), computed, expected, tol, false, std::move(note)};
  r.pass = std::isfinite(computed) && std::abs(computed - expected) <= tol;
  return r;
}

CheckRow check_below(std::string id, std::string anchor, double computed, double bound, std::string note) {
  CheckRow r{std::move(id), std::move(anchor), computed, bound, 0.0, false, std::move(note)};
  r.pass = std::isfinite(computed) && computed <= bound;
  return r;
}

CheckRow check_true(std::string id, std::string anchor, bool ok, std::string note) {
  return CheckRow{std::move(id), std::move(anchor), ok ? 1.0 : 0.0, 1.0, 0.0, ok, std::move(note)};
}

bool CriterionResult::pass() const {
  if (!error.empty() || rows.empty()) return false;
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

std::string criterion_title(int id) {
  switch (id) {
    case 1: return "5/2 example invariants";
    case 2: return "5/2 example curvatures";
    case 3: return "focal curvatures two ways";
    case 4: return "helicoid formulas";
    case 5: return "Jacobian factorization";
    case 6: return "structural identities on grids";
    case 7: return "psi classification";
    case 8: return "(kappa_1)_v identity";
    case 9: return "classifier suite";
    case 10: return "focal singular set";
    case 11: return "ccr consistency";
    case 12: return "pure propagation on the helicoid";
    case 13: return "jet engine";
  }
  return "?";
}

CriterionResult run_criterion(int id) {
  CriterionResult r;
  r.id = id;
  r.title = criterion_title(id);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: r.rows = criterion1(); break;
      case 2: r.rows = criterion2(); break;
      case 3: r.rows = criterion3(); break;
      case 4: r.rows = criterion4(); break;
      case 5: r.rows = criterion5(); break;
      case 6: r.rows = criterion6(); break;
      case 7: r.rows = criterion7(); break;
      case 8: r.rows = criterion8(); break;
      case 9: r.rows = criterion9(); break;
      case 10: r.rows = criterion10(); break;
      case 11: r.rows = criterion11(); break;
      case 12: r.rows = criterion12(); break;
      case 13: r.rows = criterion13(); break;
      default: throw InputError("no acceptance criterion " + std::to_string(id));
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<SuiteCase> synthesized_suite() {
  using V = Verdict;
  const ScalarFn zero = poly({0});
  std::vector<SuiteCase> s;
  auto dev = [&](std::string name, ScalarFn ks, ScalarFn kn, V v) {
    s.push_back({std::move(name), true, std::move(ks), std::move(kn), zero, 0.0, v});
  };
  auto nondev = [&](std::string name, ScalarFn ks, ScalarFn kn, ScalarFn kt, V v) {
    s.push_back({std::move(name), false, std::move(ks), std::move(kn), std::move(kt), 0.0, v});
  };
  dev("ce-1", poly({1}), poly({1, 1}), V::CuspidalEdge);
  dev("ce-2", poly({2}), poly({1, -2}), V::CuspidalEdge);
  dev("ce-3", poly({-1}), poly({2, 1, 1}), V::CuspidalEdge);
  dev("sw-1", poly({1}), poly({1, 0, 1}), V::Swallowtail);
  dev("sw-2", poly({-1}), poly({2, 0, -1}), V::Swallowtail);
  dev("sw-3", poly({0.5}), poly({1, 0, 2, 1}), V::Swallowtail);
  dev("ccr-1", poly({0, 1}), poly({1, 1}), V::CuspidalCrossCap);
  dev("ccr-2", poly({0, -2}), poly({1, -1}), V::CuspidalCrossCap);
  dev("ccr-3", poly({0, 1, 1}), poly({2, 3}), V::CuspidalCrossCap);
  dev("cs1-1", poly({0, 0, 1}), poly({1, 1}), V::CuspidalS1Plus);
  dev("cs1-2", poly({0, 0, -1}), poly({1, -2}), V::CuspidalS1Plus);
  dev("cs1-3", poly({0, 0, 3, 1}), poly({2, 1}), V::CuspidalS1Plus);
  nondev("xc-1", poly({1}), poly({1}), poly({0, 1}), V::CrossCap);
  nondev("xc-2", poly({0}), poly({1, 1}), poly({0, 2}), V::CrossCap);
  nondev("xc-3", poly({1}), poly({2}), poly({0, -1, 1}), V::CrossCap);
  nondev("s1p-1", poly({1}), poly({1, 1}), poly({0, 0, 1}), V::S1Plus);
  nondev("s1p-2", poly({1}), poly({2, 1}), poly({0, 0, 1}), V::S1Plus);
  nondev("s1p-3", poly({-0.5}), poly({1, 1}), poly({0, 0, 2}), V::S1Plus);
  nondev("s1m-1", poly({-2}), poly({1, 1}), poly({0, 0, 1}), V::S1Minus);
  nondev("s1m-2", poly({-2}), poly({1, -1}), poly({0, 0, -1}), V::S1Minus);
  nondev("s1m-3", poly({-1}), poly({1, 2}), poly({0, 0, 1}), V::S1Minus);
  return s;
}

SuiteOutcome run_suite_case(const SuiteCase& c) {
  SuiteOutcome o;
  o.c = c;
  o.model = frame_ode_synthesize(c.ks, c.kn, c.kt, {-0.5, 0.5}, c.name);
  const Settings st;
  o.w0 = 1.0 / c.kn(c.u0);
  if (c.developable) {
    o.report = classify_nr_developable(o.model, c.u0, st);
  } else {
    o.report = classify_nr_nondevelopable(o.model, c.u0, o.w0, st);
    o.phi = phi_oracle(o.model, c.u0, o.w0, st);
    o.has_phi = true;
  }
  return o;
}

std::vector<SurfaceDef> ccr_suite() {
  // (u, a2 u^2 + v^2/2, a3 u^2 + u v^2 + c4 v^4 + c5 u v^5)
  struct P {
    const char* name;
    const char* y;
    const char* z;
  };
  const P ps[] = {
      {"nf-a3m1", "u^2 + v^2/2", "-u^2 + u*v^2 + u*v^5"},
      {"nf-a3h", "u^2 + v^2/2", "0.5*u^2 + u*v^2 + u*v^5"},
      {"nf-a2h", "0.5*u^2 + v^2/2", "u*v^2 + u*v^5"},
      {"nf-c5", "u^2 + v^2/2", "u*v^2 + 2*u*v^5"},
      {"nf-c4", "u^2 + v^2/2", "u*v^2 + v^4 + u*v^5"},
  };
  std::vector<SurfaceDef> out;
  for (const P& p : ps) out.push_back(make_surface(p.name, "u", p.y, p.z));
  return out;
}

const std::vector<CorpusEntry>& jet_corpus() {
  static const std::vector<CorpusEntry> corpus = {
      {"u^2 + v^2/2", {0.3, -0.2}},
      {"u*v^2 + v^5/5", {0.1, 0.4}},
      {"sin(u)*cos(v)", {0.7, -0.3}},
      {"exp(u - v)", {0.2, 0.1}},
      {"log(1 + u^2 + v^2)", {0.5, 0.5}},
      {"sqrt(2 + u*v)", {0.4, -0.6}},
      {"tan(u/2) + atan(v)", {0.3, 0.8}},
      {"sinh(u)*tanh(v)", {-0.4, 0.2}},
      {"-cosh(u)*sin(v)", {0.2, 1.1}},
      {"cosh(u)*cos(v)", {-0.3, 0.6}},
      {"(u + 1)/(v^2 + 2)", {0.1, -0.5}},
      {"u^3 - 3*u*v^2", {0.6, 0.2}},
      {"v^3*(u^2 + v^2)", {0.2, 0.3}},
      {"exp(-u^2)*sin(pi*v)", {0.5, 0.25}},
      {"e^u*v", {0.3, 0.4}},
      {"1/(1 + u^2)^2", {0.4, 0.0}},
  };
  return corpus;
}

std::vector<CheckRow> verify_rows(const std::string& target, const std::string& suite) {
  std::vector<CheckRow> rows;
  auto add = [&](int id) {
    const CriterionResult r = run_criterion(id);
    if (!r.error.empty()) {
      rows.push_back(check_true(std::to_string(id) + ".error", criterion_title(id), false, r.error));
      return;
    }
    rows.insert(rows.end(), r.rows.begin(), r.rows.end());
  };
  if (suite == "all") {
    for (int id = 1; id <= kCriterionCount; ++id) add(id);
    return rows;
  }
  if (suite == "classifiers") {
    add(9);
    return rows;
  }
  if (suite == "ccr") {
    add(11);
    return rows;
  }
  if (suite == "jet") {
    add(13);
    return rows;
  }
  if (suite != "default" && suite != "structure") {
    throw InputError("unknown suite '" + suite + "' (expected default, classifiers, structure, jet, ccr, all)");
  }

  if (target == "all") {
    if (suite == "structure") {
      add(5);
      add(6);
    } else {
      for (int id = 1; id <= kCriterionCount; ++id) add(id);
    }
    return rows;
  }

  const SurfaceDef s = is_builtin(target) ? builtin(target) : parse_surface_file(target);
  if (suite == "default" && target == "paper-52") {
    // ten rows: invariants, derivatives, curvatures, focal curvatures, H_v identity
    const std::vector<CheckRow> c1 = criterion1(), c2 = criterion2(), c3 = criterion3(), c8 = criterion8();
    double inv = 0;
    for (int k = 0; k < 6; ++k) inv = std::max(inv, std::abs(c1[static_cast<std::size_t>(k)].computed -
                                                              c1[static_cast<std::size_t>(k)].expected));
    rows.push_back(check_below("invariants", "(k_s, k_nu, k_t, k_c, r_b, r_c) = (2, 0, 2, 0, 0, 72)", inv, 1e-8,
                               "max deviation"));
    rows.push_back(c1[6]);
    rows.push_back(c1[7]);
    for (const CheckRow& r : c2) rows.push_back(r);
    double K = 0, H = 0;
    for (const CheckRow& r : c3) {
      const double dev = std::abs(r.computed - r.expected);
      (r.id.find(".K^") != std::string::npos ? K : H) = std::max(r.id.find(".K^") != std::string::npos ? K : H, dev);
    }
    rows.push_back(check_below("focal K", "K^C1 = K^C2 = -1, direct and closed form", K, 1e-8, "max deviation"));
    rows.push_back(check_below("focal H", "H^C1 = -H^C2 = -3/(2 sqrt2), direct and closed form", H, 1e-8,
                               "max deviation"));
    rows.push_back(c8[0]);
    return rows;
  }
  if (suite == "default" && target == "helicoid") {
    for (CheckRow& r : criterion4()) rows.push_back(std::move(r));
    for (CheckRow& r : criterion12()) rows.push_back(std::move(r));
    // C_1 mesh vertices against the closed form
    MeshOptions mo;
    mo.nu = mo.nv = 21;
    mo.trace = false;
    ObjMesh mesh;
    mesh.groups.push_back(mesh_surface(s, "c1", mo, Settings{}, mesh));
    double worst = 0;
    for (int i = 0; i < mo.nu; ++i) {
      for (int j = 0; j < mo.nv; ++j) {
        const double w = s.u_range.lo + s.u_range.width() * i / (mo.nu - 1);
        const double v = s.v_range.lo + s.v_range.width() * j / (mo.nv - 1);
        const Eigen::Vector3d& x = mesh.vertices[static_cast<std::size_t>(i * mo.nv + j)];
        worst = std::max(worst, (x - helicoid_c1_closed(std::exp(w), v)).norm());
      }
    }
    rows.push_back(check_below("mesh.c1", "C_1 mesh vertices vs closed-form C_1", worst, 1e-9, "21x21 grid"));
    return rows;
  }
  // any other surface: structural identities plus the congruence factorization
  for (CheckRow& r : structural_rows(s, suite == "structure" ? 41 : 21)) rows.push_back(std::move(r));
  rows.push_back(congruence_row(s, 100, 5));
  return rows;
}

}  // namespace frontal
