#include "frontal/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include <Eigen/Geometry>
#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

namespace frontal {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

Criterion make_criterion(const std::string& name, double value, double base, double err, const ClassifySettings& cs) {
  Criterion c;
  c.name = name;
  c.value = value;
  c.threshold = cs.scale * std::max(base, 10.0 * err);
  const double a = std::abs(value);
  if (a <= c.threshold) {
    c.state = Criterion::State::Zero;
  } else if (a >= cs.band * c.threshold) {
    c.state = Criterion::State::NonZero;
  } else {
    c.state = Criterion::State::Band;
  }
  return c;
}

Criterion deriv_criterion(const std::string& name, const Derivative& d, const ClassifySettings& cs) {
  return make_criterion(name, d.value, cs.deriv_tol, d.error, cs);
}

bool is_zero(const Criterion& c) { return c.state == Criterion::State::Zero; }
bool is_nonzero(const Criterion& c) { return c.state == Criterion::State::NonZero; }

// margin over the named criteria
void set_margin(SingularityReport& r, const ClassifySettings& cs, std::initializer_list<const char*> names) {
  double m = std::numeric_limits<double>::infinity();
  for (const char* n : names) {
    const Criterion* c = r.find(n);
    if (!c) continue;
    const double a = std::abs(c->value);
    // distance from the undecided band; >= 1 means the decision is clear
    double q = 0;
    if (c->state == Criterion::State::NonZero) q = a / (cs.band * c->threshold);
    else if (c->state == Criterion::State::Zero) q = a > 0 ? c->threshold / a : 1e300;
    m = std::min(m, q);
  }
  r.margin = std::isfinite(m) ? m : 0.0;
}

std::pair<double, double> central12(const double g[5], double h) {
  const double d1 = (g[0] - 8 * g[1] + 8 * g[3] - g[4]) / (12 * h);
  const double d2 = (-g[0] + 16 * g[1] - 30 * g[2] + 16 * g[3] - g[4]) / (12 * h * h);
  return {d1, d2};
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::CuspidalEdge: return "CuspidalEdge";
    case Verdict::Swallowtail: return "Swallowtail";
    case Verdict::CuspidalCrossCap: return "CuspidalCrossCap";
    case Verdict::CuspidalS1Plus: return "CuspidalS1Plus";
    case Verdict::CrossCap: return "CrossCap";
    case Verdict::S1Plus: return "S1Plus";
    case Verdict::S1Minus: return "S1Minus";
    case Verdict::FirstKind: return "FirstKind";
    case Verdict::SecondKind: return "SecondKind";
    case Verdict::Regular: return "Regular";
    case Verdict::NotCuspidalCrossCap: return "NotCuspidalCrossCap";
    case Verdict::Degenerate: return "Degenerate";
    case Verdict::Unclassified: return "Unclassified";
  }
  return "?";
}

std::string to_string(Criterion::State s) {
  switch (s) {
    case Criterion::State::Zero: return "zero";
    case Criterion::State::NonZero: return "nonzero";
    case Criterion::State::Band: return "band";
  }
  return "?";
}

const Criterion* SingularityReport::find(const std::string& name) const {
  for (const Criterion& c : criteria) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

SingularityReport classify_nr_developable(const AxisModel& m, double u0, const Settings& st,
                                          const ClassifySettings& cs) {
  const InvariantDerivatives d = invariant_derivatives(m.invariants, u0);
  const InvariantSample& I = d.at;
  if (std::abs(I.kappa_nu) < st.kappa_tol) {
    throw NumericalError("kappa_nu(" + fmt(u0) + ") = 0: singular ruling at infinity");
  }
  const Criterion kt = make_criterion("kappa_t", I.kappa_t, cs.value_tol, 0.0, cs);
  const Criterion kt1 = deriv_criterion("kappa_t'", d.kappa_t1, cs);
  if (!is_zero(kt) || !is_zero(kt1)) {
    throw NumericalError("normal ruled surface is not developable at u = " + fmt(u0) + " (kappa_t = " +
                         fmt(I.kappa_t) + ")");
  }
  SingularityReport r;
  r.surface = "NR";
  r.location = {u0, 1.0 / I.kappa_nu};
  const Criterion ks = make_criterion("kappa_s", I.kappa_s, cs.value_tol, 0.0, cs);
  const Criterion ks1 = deriv_criterion("kappa_s'", d.kappa_s1, cs);
  const Criterion ks2 = deriv_criterion("kappa_s''", d.kappa_s2, cs);
  const Criterion kn1 = deriv_criterion("kappa_nu'", d.kappa_nu1, cs);
  const Criterion kn2 = deriv_criterion("kappa_nu''", d.kappa_nu2, cs);
  r.criteria = {ks, ks1, ks2, kn1, kn2, kt, kt1};

  r.verdict = Verdict::Unclassified;
  if (is_nonzero(ks)) {
    if (is_nonzero(kn1)) {
      r.verdict = Verdict::CuspidalEdge;
      set_margin(r, cs, {"kappa_s", "kappa_nu'"});
    } else if (is_zero(kn1) && is_nonzero(kn2)) {
      r.verdict = Verdict::Swallowtail;
      set_margin(r, cs, {"kappa_s", "kappa_nu'", "kappa_nu''"});
    }
  } else if (is_zero(ks) && is_nonzero(kn1)) {
    if (is_nonzero(ks1)) {
      r.verdict = Verdict::CuspidalCrossCap;
      set_margin(r, cs, {"kappa_s", "kappa_s'", "kappa_nu'"});
    } else if (is_zero(ks1) && is_nonzero(ks2)) {
      r.verdict = Verdict::CuspidalS1Plus;
      set_margin(r, cs, {"kappa_s", "kappa_s'", "kappa_s''", "kappa_nu'"});
    }
  }
  if (r.verdict == Verdict::Unclassified) {
    set_margin(r, cs, {"kappa_s", "kappa_s'", "kappa_s''", "kappa_nu'", "kappa_nu''"});
    r.note = "no branch of the developable criteria decides (degenerate or within threshold band)";
  }
  return r;
}

SingularityReport classify_nr_nondevelopable(const AxisModel& m, double u0, double w0, const Settings& st,
                                             const ClassifySettings& cs) {
  const InvariantDerivatives d = invariant_derivatives(m.invariants, u0);
  const InvariantSample& I = d.at;
  if (std::abs(I.kappa_nu) < st.kappa_tol) {
    throw NumericalError("kappa_nu(" + fmt(u0) + ") = 0: singular ruling at infinity");
  }
  const Criterion kt = make_criterion("kappa_t", I.kappa_t, cs.value_tol, 0.0, cs);
  if (!is_zero(kt) || std::abs(w0 * I.kappa_nu - 1.0) > 1e-6) {
    throw NumericalError("(" + fmt(u0) + ", " + fmt(w0) + ") is not a singular point of NR (kappa_t = " +
                         fmt(I.kappa_t) + ", w kappa_nu = " + fmt(w0 * I.kappa_nu) + ")");
  }
  SingularityReport r;
  r.surface = "NR";
  r.location = {u0, w0};
  const Criterion kt1 = deriv_criterion("kappa_t'", d.kappa_t1, cs);
  const double a = d.kappa_t2.value;
  const double b = 2 * I.kappa_s * d.kappa_nu1.value + d.kappa_t2.value;
  const double err_b = 2 * std::abs(I.kappa_s) * d.kappa_nu1.error + d.kappa_t2.error;
  const double err_p = std::abs(a) * err_b + std::abs(b) * d.kappa_t2.error;
  const Criterion prod = make_criterion("kappa_t''(2 kappa_s kappa_nu' + kappa_t'')", a * b, cs.deriv_tol, err_p, cs);
  const Criterion kn1 = deriv_criterion("kappa_nu'", d.kappa_nu1, cs);
  r.criteria = {kt, kt1, prod, kn1};

  r.verdict = Verdict::Unclassified;
  if (is_nonzero(kt1)) {
    r.verdict = Verdict::CrossCap;
    set_margin(r, cs, {"kappa_t'"});
  } else if (is_zero(kt1) && is_nonzero(prod)) {
    if (prod.value < 0) {
      r.verdict = Verdict::S1Minus;
      set_margin(r, cs, {"kappa_t'", prod.name.c_str()});
    } else if (is_nonzero(kn1)) {
      r.verdict = Verdict::S1Plus;
      set_margin(r, cs, {"kappa_t'", prod.name.c_str(), "kappa_nu'"});
    }
  }
  if (r.verdict == Verdict::Unclassified) {
    set_margin(r, cs, {"kappa_t'", prod.name.c_str(), "kappa_nu'"});
    r.note = "no branch of the nondevelopable criteria decides (degenerate or within threshold band)";
  }
  return r;
}

PhiOracle phi_oracle(const AxisModel& m, double u0, double w0, const Settings& st) {
  (void)st;
  const InvariantDerivatives d = invariant_derivatives(m.invariants, u0);
  const InvariantSample& I = d.at;
  const double ks = I.kappa_s, kn = I.kappa_nu, kt = I.kappa_t;
  const double ks1 = d.kappa_s1.value, kn1 = d.kappa_nu1.value, kn2 = d.kappa_nu2.value;
  const double kt1 = d.kappa_t1.value, kt2 = d.kappa_t2.value;
  if (std::max({std::abs(kt), std::abs(kt1), std::abs(kt2)}) < 1e-7) {
    throw NumericalError("phi oracle is undefined for a developable normal ruled surface (kappa_t = 0)");
  }
  const double w = w0;
  const double a = ks * (kn * kn + kt * kt) + kn * kt1 - kn1 * kt;
  const double b = 2 * ks * kn + kt1;
  const double a1 = ks1 * (kn * kn + kt * kt) + 2 * ks * (kn * kn1 + kt * kt1) + kn * kt2 - kn2 * kt;
  const double b1 = 2 * ks1 * kn + 2 * ks * kn1 + kt2;
  PhiOracle o;
  o.phi = w * w * a - w * b + ks;
  o.phi_w = 2 * w * a - b;
  o.phi_u = w * w * a1 - w * b1 + ks1;
  o.phi_ww = 2 * a;
  o.phi_uw = 2 * w * a1 - b1;
  // needs third derivatives in general; this is its value on S(NR) with kt = kt' = 0
  o.phi_uu = kn1 * (kt2 + 2 * ks * kn1) / (kn * kn);
  o.hessian = o.phi_uu * o.phi_ww - o.phi_uw * o.phi_uw;
  o.hessian_closed = -kt2 * (2 * ks * kn1 + kt2);

  // direct: det(NR_w, NR_s, NR_ss) from the sampled frame
  const double h = m.invariants.step;
  auto phi_at = [&](double ww) {
    Eigen::Vector3d g[5];
    for (int i = 0; i < 5; ++i) {
      const AxisFrame f = m.frame(u0 + (i - 2) * h);
      g[i] = f.gamma + ww * f.nu;
    }
    const Eigen::Vector3d d1 = (g[0] - 8 * g[1] + 8 * g[3] - g[4]) / (12 * h);
    const Eigen::Vector3d d2 = (-g[0] + 16 * g[1] - 30 * g[2] + 16 * g[3] - g[4]) / (12 * h * h);
    const auto [sig, dsig] = m.invariants.speed(u0);
    const Eigen::Vector3d Ns = d1 / sig;
    const Eigen::Vector3d Nss = (d2 - (dsig / sig) * d1) / (sig * sig);
    return m.frame(u0).nu.cross(Ns).dot(Nss);
  };
  o.phi_frame = phi_at(w);
  const double dw = 1e-3 * std::max(1.0, std::abs(w));
  o.phi_w_frame = (phi_at(w + dw) - phi_at(w - dw)) / (2 * dw);
  return o;
}

FocalReport classify_focal_point(const SurfaceDef& s, int j, double u0, const Settings& st,
                                 const ClassifySettings& cs) {
  if (j != 1 && j != 2) throw InputError("focal surface index must be 1 or 2");
  const InvariantSource src = surface_invariant_source(s, st);
  const InvariantDerivatives d = invariant_derivatives(src, u0);
  const InvariantSample& I = d.at;
  FocalReport r;
  r.surface = j == 1 ? "C1" : "C2";
  r.j = j;
  r.location = {u0, 0.0};
  const Criterion rc = make_criterion("r_c", I.r_c, cs.value_tol, 0.0, cs);
  r.criteria.push_back(rc);
  if (is_nonzero(rc)) {
    r.verdict = Verdict::Regular;
    r.note = "r_c != 0: C_" + std::to_string(j) + " is regular here";
    set_margin(r, cs, {"r_c"});
    return r;
  }
  if (!is_zero(rc)) {
    r.verdict = Verdict::Unclassified;
    r.note = "r_c within threshold band";
    set_margin(r, cs, {"r_c"});
    return r;
  }
  if (std::abs(I.kappa_t) < st.umbilic_tol) {
    throw NumericalError("umbilic risk: |kappa_t| = " + fmt(std::abs(I.kappa_t)) + " at u = " + fmt(u0));
  }
  const RidgeReport ridge = ridge_report(s, u0, j, st);
  r.ridge_order = ridge.order;
  const Criterion rc1 = deriv_criterion("r_c'", d.r_c1, cs);
  r.criteria.push_back(rc1);
  r.criteria.push_back(make_criterion("V_j kappa_j", ridge.V_kappa, cs.value_tol, 0.0, cs));
  r.criteria.push_back(make_criterion("second-order ridge quantity", ridge.second_order, cs.value_tol, 0.0, cs));

  if (ridge.order == 0) {
    r.verdict = Verdict::Unclassified;
    r.note = "r_c vanishes but V_j kappa_j does not (inconsistent within tolerance)";
    return r;
  }
  if (rc1.state == Criterion::State::Band) {
    r.verdict = Verdict::Unclassified;
    r.note = "r_c' within threshold band";
    return r;
  }
  if (is_zero(rc1) && ridge.order >= 2) {
    r.verdict = Verdict::Degenerate;
    r.note = "degenerate singular point of C_j (r_c' = 0 and ridge order >= 2)";
    return r;
  }
  if (ridge.order >= 2) {
    r.verdict = Verdict::SecondKind;
    r.note = "at least second order ridge: singular point of the second kind";
    set_margin(r, cs, {"r_c'"});
    return r;
  }

  // first kind: evaluate the ccr inequality
  const double kj = evaluate_point(s, {u0, 0.0}, st).kappa[j - 1];
  const double kother = evaluate_point(s, {u0, 0.0}, st).kappa[2 - j];
  const double sigma = src.speed(u0).first;
  const double h = src.step;
  const Interval B = s.transverse_range();
  const double reach = std::min(0.1, 0.25 * std::min(std::abs(B.lo), std::abs(B.hi)));
  {
    double g[5], p[5];
    for (int i = 0; i < 5; ++i) {
      const double t = u0 + (i - 2) * h;
      const Point2 q = focal_curve_point(s, j, t, reach, st);
      g[i] = focal_eval(s, j, q, st).rho;
      const FocalPoint fp = focal_eval(s, j, q, st);
      p[i] = focal_psi_at(s, j, q, Eigen::Vector2d(1.0, -fp.grad_V_rho.x() / fp.grad_V_rho.y()), st);
    }
    r.rho_hat1_trace = central12(g, h).first / sigma;
    r.psi_slope = central12(p, h).first;
  }
  {
    const FrameJets fj = frame_jets(s, {u0, 0.0}, st, true);
    const CurvatureJets cj = curvature_jets(fundamental_jets(fj));
    r.rho_hat1_jet = (1.0 / cj.k[j - 1]).partial(1, 0) / sigma;
  }
  const double a = kj - I.kappa_nu;
  r.lhs = r.rho_hat1_trace * (I.kappa_t * I.kappa_t * d.kappa_nu1.value + 2 * I.kappa_t * d.kappa_t1.value * a +
                              (d.r_b1.value / 3.0) * a * a);
  r.rhs = (I.kappa_t * I.kappa_t + a * a) * (kother - kj) * (I.kappa_nu - kj);
  const Criterion diff = make_criterion("ccr inequality lhs - rhs", r.lhs - r.rhs, cs.value_tol, 0.0, cs);
  r.criteria.push_back(diff);
  if (!is_nonzero(rc1)) {
    r.verdict = Verdict::FirstKind;
    r.note = "first kind; r_c' = 0, so the cuspidal cross cap criterion does not apply";
    set_margin(r, cs, {"r_c'", "second-order ridge quantity"});
  } else if (is_nonzero(diff)) {
    r.verdict = Verdict::CuspidalCrossCap;
    set_margin(r, cs, {"r_c'", diff.name.c_str()});
  } else if (is_zero(diff)) {
    r.verdict = Verdict::NotCuspidalCrossCap;
    r.note = "first kind, ccr inequality fails";
    set_margin(r, cs, {"r_c'", diff.name.c_str()});
  } else {
    r.verdict = Verdict::Unclassified;
    r.note = "ccr inequality within threshold band";
  }
  return r;
}

// ---- frame ODE -------------------------------------------------------------

SynthesizedFrame::SynthesizedFrame(ScalarFn ks, ScalarFn kn, ScalarFn kt, Interval range, double u0, double step,
                                   FrameSeed seed)
    : ks_(std::move(ks)), kn_(std::move(kn)), kt_(std::move(kt)), range_(range), u0_(u0), h_(step) {
  if (!(step > 0)) throw InputError("step must be positive");
  State x{};
  for (int i = 0; i < 3; ++i) {
    x[i] = seed.gamma[i];
    x[3 + i] = seed.T[i];
    x[6 + i] = seed.h[i];
    x[9 + i] = seed.nu[i];
  }
  // margin so that central differences near the ends stay inside
  const double margin = 0.05 * std::max(1.0, range.width());
  const int nf = static_cast<int>(std::ceil((range.hi + margin - u0) / h_)) + 1;
  const int nb = static_cast<int>(std::ceil((u0 - range.lo + margin) / h_)) + 1;
  fwd_.push_back(x);
  for (int i = 1; i < nf; ++i) fwd_.push_back(step_from(fwd_.back(), u0 + (i - 1) * h_, h_));
  bwd_.push_back(x);
  for (int i = 1; i < nb; ++i) bwd_.push_back(step_from(bwd_.back(), u0 - (i - 1) * h_, -h_));
}

void SynthesizedFrame::rhs(const State& x, State& dx, double u) const {
  const double s = ks_(u), n = kn_(u), t = kt_(u);
  for (int i = 0; i < 3; ++i) {
    const double T = x[3 + i], H = x[6 + i], N = x[9 + i];
    dx[i] = T;
    dx[3 + i] = s * H + n * N;
    dx[6 + i] = -s * T + t * N;
    dx[9 + i] = -n * T - t * H;
  }
}

SynthesizedFrame::State SynthesizedFrame::step_from(State x, double u, double h) const {
  if (h == 0.0) return x;
  boost::numeric::odeint::runge_kutta4<State> rk;
  rk.do_step([this](const State& a, State& da, double t) { rhs(a, da, t); }, x, u, h);
  Eigen::Map<Eigen::Vector3d> T(&x[3]), H(&x[6]), N(&x[9]);
  T.normalize();
  H -= H.dot(T) * T;
  H.normalize();
  N = T.cross(H);
  return x;
}

AxisFrame SynthesizedFrame::at(double u) const {
  const double k = (u - u0_) / h_;
  const std::vector<State>& nodes = k >= 0 ? fwd_ : bwd_;
  const double idx = std::round(std::abs(k));
  if (idx >= static_cast<double>(nodes.size())) {
    throw NumericalError("u = " + fmt(u) + " is outside the integrated range");
  }
  const auto i = static_cast<std::size_t>(idx);
  const double ui = u0_ + (k >= 0 ? 1.0 : -1.0) * static_cast<double>(i) * h_;
  const State x = step_from(nodes[i], ui, u - ui);
  AxisFrame f;
  f.u = u;
  f.gamma = {x[0], x[1], x[2]};
  f.T = {x[3], x[4], x[5]};
  f.h = {x[6], x[7], x[8]};
  f.nu = {x[9], x[10], x[11]};
  f.sigma = 1.0;
  return f;
}

InvariantSample SynthesizedFrame::recovered(double u) const {
  const double d = 1e-3;
  AxisFrame f[5];
  for (int i = 0; i < 5; ++i) f[i] = at(u + (i - 2) * d);
  const Eigen::Vector3d dT = (f[0].T - 8 * f[1].T + 8 * f[3].T - f[4].T) / (12 * d);
  const Eigen::Vector3d dh = (f[0].h - 8 * f[1].h + 8 * f[3].h - f[4].h) / (12 * d);
  InvariantSample s;
  s.u = u;
  s.kappa_s = dT.dot(f[2].h);
  s.kappa_nu = dT.dot(f[2].nu);
  s.kappa_t = dh.dot(f[2].nu);
  return s;
}

AxisModel frame_ode_synthesize(ScalarFn ks, ScalarFn kn, ScalarFn kt, Interval range, const std::string& name,
                               double step, FrameSeed seed) {
  auto fr = std::make_shared<SynthesizedFrame>(std::move(ks), std::move(kn), std::move(kt), range,
                                               0.5 * (range.lo + range.hi), step, seed);
  AxisModel m;
  m.name = name;
  m.frame = [fr](double u) { return fr->at(u); };
  m.invariants.sample = [fr](double u) { return fr->recovered(u); };
  m.invariants.speed = [](double) { return std::make_pair(1.0, 0.0); };
  m.invariants.range = range;
  // recovered invariants carry ~1e-13 rounding; a coarser outer step keeps
  // second differences of them clean
  m.invariants.step = 1e-2 * std::max(1.0, range.width());
  return m;
}

// ---- pure propagation ------------------------------------------------------

PurePropagationReport pure_propagation_check(const SurfaceDef& s, int j, const Settings& st, int samples) {
  PurePropagationReport r;
  r.samples = samples;
  const Interval A = s.axis_range(), B = s.transverse_range();
  std::vector<double> ts;
  for (int i = 0; i < samples; ++i) ts.push_back(A.lo + A.width() * (i + 1) / (samples + 1));
  for (double t : ts) {
    r.max_abs_rc = std::max(r.max_abs_rc, std::abs(invariants_at(s, t, st).r_c));
    try {
      if (ridge_report(s, t, j, st).order == 1) ++r.first_order_ridges;
    } catch (const NumericalError&) {
    }
  }
  r.hypotheses_met = r.max_abs_rc < 1e-6 && r.first_order_ridges == samples;
  if (!r.hypotheses_met) {
    r.note = r.max_abs_rc >= 1e-6 ? "r_c does not vanish identically (max |r_c| = " + fmt(r.max_abs_rc) + ")"
                                  : "not a first order ridge at every sample";
    return r;
  }
  const double reach = 0.25 * std::min(std::abs(B.lo), std::abs(B.hi));
  for (const FocalPsiSample& p : focal_psi_profile(s, j, ts, reach, st)) {
    r.trace_distance = std::max(r.trace_distance, std::abs(p.p.v));
    r.max_abs_psi = std::max(r.max_abs_psi, std::abs(p.psi));
  }
  const double half = std::min(std::abs(B.lo), std::abs(B.hi));
  bool finite = true;
  for (double f : {0.5, 0.1, 0.01, 0.001}) {
    const double v = f * half;
    double mk = 0, mh = 0;
    for (double t : ts) {
      for (double sv : {-v, v}) {
        const FocalPoint fp = focal_eval(s, j, {t, sv}, st);
        if (!fp.regular) continue;
        finite = finite && std::isfinite(fp.K) && std::isfinite(fp.H);
        mk = std::max(mk, std::abs(fp.K));
        mh = std::max(mh, std::abs(fp.H));
      }
    }
    r.bands.push_back(v);
    r.max_abs_K.push_back(mk);
    r.max_abs_H.push_back(mh);
  }
  r.pass = finite && r.trace_distance < 1e-8 && r.max_abs_psi < 1e-8;
  if (!r.pass) r.note = "propagation check failed";
  return r;
}

}  // namespace frontal
