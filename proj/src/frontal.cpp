#include "frontal/frontal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Geometry>

namespace frontal {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Extra jet order used on the axis before re-expanding to (u, v) so that
// the truncation error |v|^(E+1) stays near 1e-16.
int extra_order(double v) {
  const double a = std::abs(v);
  if (a <= 1e-16) return 0;
  const int e = static_cast<int>(std::ceil(16.0 / -std::log10(a))) - 1;
  return std::clamp(e, 2, 16);
}

}  // namespace

FrameJets frame_from_axis_jet(const JetVec3& f, double tol, bool want_nu1) {
  FrameJets fj;
  fj.p = f.base();
  fj.order = f.order();
  fj.f = f;
  fj.fu = d_u(f);
  fj.fv = d_v(f);
  try {
    fj.h = deflate_v(fj.fv, 1, tol);
  } catch (const DeflationError& e) {
    throw DeflationError("f is not a frontal in pre-adapted form at u = " + fmt(fj.p.u) + " (f_v " +
                             e.what() + ")",
                         e.offending());
  }
  fj.nu = normalized(cross(fj.fu, fj.h));
  fj.nu_u = d_u(fj.nu);
  fj.nu_v = d_v(fj.nu);
  if (want_nu1) {
    try {
      fj.nu1 = deflate_v(fj.nu_v, 1, tol);
    } catch (const DeflationError& e) {
      throw DeflationError("singular point u = " + fmt(fj.p.u) + " is not pure-frontal (nu_v " + e.what() + ")",
                           e.offending());
    }
  }
  return fj;
}

namespace {

FrameJets frame_direct(const SurfaceDef& s, Point2 p, int K, bool want_nu1) {
  FrameJets fj;
  fj.p = p;
  fj.order = K;
  fj.f = s.jet(p, K);
  fj.fu = d_u(fj.f);
  fj.fv = d_v(fj.f);
  const Jet2 vj = Jet2::lift(Var::V, p, K);
  const JetVec3 h_full = fj.fv / vj;
  const JetVec3 nu_full = normalized(cross(fj.fu, h_full));
  fj.h = h_full.truncated(K - 2);
  fj.nu = nu_full.truncated(K - 2);
  fj.nu_u = d_u(fj.nu);
  fj.nu_v = d_v(fj.nu);
  if (want_nu1) fj.nu1 = (d_v(nu_full) / vj).truncated(K - 4);
  return fj;
}

}  // namespace

FrameJets frame_jets(const SurfaceDef& s, Point2 p, const Settings& st, bool want_nu1) {
  const int K = st.order;
  if (K < 4) throw NumericalError("jet order must be at least 4");
  if (p.v == 0.0) return frame_from_axis_jet(s.jet(p, K), st.zero_tol, want_nu1);
  if (std::abs(p.v) >= st.near_axis) return frame_direct(s, p, K, want_nu1);

  const Point2 axis{p.u, 0.0};
  const int KE = K + extra_order(p.v);
  FrameJets a;
  bool nu1_on_axis = want_nu1;
  try {
    a = frame_from_axis_jet(s.jet(axis, KE), st.zero_tol, want_nu1);
  } catch (const DeflationError&) {
    if (!want_nu1) throw;
    // not pure-frontal on the axis; nu_1 is still defined off the axis
    a = frame_from_axis_jet(s.jet(axis, KE), st.zero_tol, false);
    nu1_on_axis = false;
  }
  FrameJets fj;
  fj.p = p;
  fj.order = K;
  fj.f = s.jet(p, K);
  fj.fu = d_u(fj.f);
  fj.fv = d_v(fj.f);
  fj.h = reexpand(a.h, p, K - 2);
  fj.nu = reexpand(a.nu, p, K - 2);
  fj.nu_u = d_u(fj.nu);
  fj.nu_v = d_v(fj.nu);
  if (want_nu1) {
    if (nu1_on_axis) {
      fj.nu1 = reexpand(*a.nu1, p, K - 4);
    } else {
      fj.nu1 = frame_direct(s, p, K, true).nu1;
    }
  }
  return fj;
}

FundamentalJets fundamental_jets(const FrameJets& fj) {
  FundamentalJets r;
  r.E = dot(fj.fu, fj.fu);
  r.F = dot(fj.fu, fj.h);
  r.G = dot(fj.h, fj.h);
  r.L = -dot(fj.fu, fj.nu_u);
  r.M = -dot(fj.h, fj.nu_u);
  r.N = -dot(fj.h, fj.nu_v);
  if (fj.nu1) r.N1 = -dot(fj.h, *fj.nu1);
  return r;
}

CurvatureJets curvature_jets(const FundamentalJets& fu) {
  if (!fu.N1) throw NumericalError("principal curvatures need nu_1 (pure-frontal input)");
  const Jet2& N1 = *fu.N1;
  const Jet2 D = fu.E * fu.G - fu.F * fu.F;
  CurvatureJets c;
  c.K = (fu.L * N1 - fu.M * fu.M) / D;
  c.H = (fu.E * N1 - 2.0 * fu.F * fu.M + fu.G * fu.L) / (2.0 * D);
  c.Gamma = c.H * c.H - c.K;
  if (c.Gamma.value() <= 0.0) {
    throw NumericalError("umbilic point: Gamma = " + fmt(c.Gamma.value()) + ", principal curvature jets undefined");
  }
  const Jet2 sg = sqrt(c.Gamma);
  c.k[0] = c.H + sg;
  c.k[1] = c.H - sg;
  return c;
}

std::pair<Jet2, Jet2> principal_vector_jets(const FundamentalJets& fu, const Jet2& kappa) {
  const Jet2 v = Jet2::lift(Var::V, fu.E.base(), fu.E.order());
  return {-(v * (fu.M - kappa * fu.F)), fu.L - kappa * fu.E};
}

JetVec3 focal_normal_jet(const FrameJets& fj, const FundamentalJets& fu, const Jet2& kappa) {
  return (-(fu.M - kappa * fu.F)) * fj.fu + (fu.L - kappa * fu.E) * fj.h;
}

Jet2 directional(const Jet2& a, const Jet2& b, const Jet2& g) { return a * d_u(g) + b * d_v(g); }

FrontalPoint point_from_jets(const FrameJets& fj, const Settings& st) {
  if (!fj.nu1) throw NumericalError("evaluate_point needs nu_1 (pure-frontal input)");
  FrontalPoint P;
  P.p = fj.p;
  P.f = fj.f.value();
  P.f_u = fj.fu.value();
  P.f_v = fj.fv.value();
  P.h = fj.h.value();
  P.nu = fj.nu.value();
  P.nu1 = fj.nu1->value();
  const Eigen::Vector3d nu_u = fj.nu_u.value(), nu_v = fj.nu_v.value();
  P.lambda = P.f_u.cross(P.f_v).dot(P.nu);
  P.E = P.f_u.dot(P.f_u);
  P.F = P.f_u.dot(P.h);
  P.G = P.h.dot(P.h);
  P.L = -P.f_u.dot(nu_u);
  P.M = -P.h.dot(nu_u);
  P.N = -P.h.dot(nu_v);
  P.N1 = -P.h.dot(P.nu1);
  const double D = P.E * P.G - P.F * P.F;
  if (!(D > 1e-14 * std::max(1.0, P.E * P.G))) {
    throw NumericalError("frame degeneracy: EG - F^2 = " + fmt(D) + " at (" + fmt(fj.p.u) + ", " + fmt(fj.p.v) + ")");
  }
  P.K = (P.L * P.N1 - P.M * P.M) / D;
  P.H = (P.E * P.N1 - 2.0 * P.F * P.M + P.G * P.L) / (2.0 * D);
  P.Gamma = P.H * P.H - P.K;
  if (P.Gamma < 0.0) {
    if (P.Gamma > -st.gamma_tol * std::max(1.0, P.H * P.H + std::abs(P.K))) {
      P.Gamma = 0.0;
    } else {
      throw NumericalError("Gamma = H^2 - K = " + fmt(P.Gamma) + " is negative beyond tolerance");
    }
  }
  const double sg = std::sqrt(P.Gamma);
  P.kappa[0] = P.H + sg;
  P.kappa[1] = P.H - sg;
  for (int j = 0; j < 2; ++j) {
    const double k = P.kappa[j];
    P.V[j] = Eigen::Vector2d(-fj.p.v * (P.M - k * P.F), P.L - k * P.E);
    P.x[j] = -(P.M - k * P.F) * P.f_u + (P.L - k * P.E) * P.h;
  }
  P.X1 = (P.F * P.M - P.G * P.L) / D;
  P.X2 = (P.F * P.L - P.E * P.M) / D;
  P.Y1 = (P.F * P.N1 - P.G * P.M) / D;
  P.Y2 = (P.F * P.M - P.E * P.N1) / D;
  return P;
}

FrontalPoint evaluate_point(const SurfaceDef& s, Point2 p, const Settings& st) {
  return point_from_jets(frame_jets(s, p, st, true), st);
}

void validate_frontal(const SurfaceDef& s, const Settings& st) {
  Settings lo = st;
  lo.order = 4;
  const Interval ax = s.axis_range(), tr = s.transverse_range();
  const int n = 9;
  for (int i = 0; i < n; ++i) {
    const double u = ax.lo + ax.width() * i / (n - 1);
    frame_jets(s, {u, 0.0}, lo, false);
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Point2 p{ax.lo + ax.width() * i / (n - 1), tr.lo + tr.width() * k / (n - 1)};
      const FrameJets fj = frame_jets(s, p, lo, false);
      const Eigen::Vector3d nu = fj.nu.value();
      const double r = std::max({std::abs(fj.fu.value().dot(nu)) / std::max(1.0, fj.fu.value().norm()),
                                 std::abs(fj.fv.value().dot(nu)) / std::max(1.0, fj.fv.value().norm()),
                                 std::abs(nu.norm() - 1.0)});
      if (r > 1e-9) {
        throw NumericalError("surface '" + s.name + "' fails the frontal condition at (" + fmt(p.u) + ", " +
                             fmt(p.v) + "): residual " + fmt(r));
      }
    }
  }
}

std::vector<std::pair<double, double>> psi_profile(const SurfaceDef& s, const std::vector<double>& us,
                                                   const Settings& st) {
  std::vector<std::pair<double, double>> out;
  out.reserve(us.size());
  for (double u : us) {
    const FrameJets fj = frame_jets(s, {u, 0.0}, st, false);
    out.emplace_back(u, fj.fu.value().cross(fj.nu.value()).dot(fj.nu_v.value()));
  }
  return out;
}

std::string to_string(FrontClass::Tag t) {
  switch (t) {
    case FrontClass::Tag::Front: return "Front";
    case FrontClass::Tag::KNonFront: return "KNonFront";
    case FrontClass::Tag::PureFrontal: return "PureFrontal";
    case FrontClass::Tag::Degenerate: return "Degenerate";
  }
  return "?";
}

FrontClass classify_front(const SurfaceDef& s, double u0, const Settings& st) {
  Settings hi = st;
  hi.order = std::max(st.order, st.psi_kmax + 3);
  const FrameJets fj = frame_jets(s, {u0, 0.0}, hi, false);
  const Jet2 psi = det3(fj.fu, fj.nu, fj.nu_v);
  double nv_scale = 1.0;
  for (int i = 0; i < 3; ++i) nv_scale = std::max(nv_scale, fj.nu_v[i].scale());
  FrontClass fc;
  fc.threshold = st.psi_tol * std::max(1.0, fj.fu.value().norm() * nv_scale);
  for (int k = 0; k <= st.psi_kmax; ++k) fc.derivatives.push_back(psi.partial(k, 0));

  const Interval ax = s.axis_range();
  std::vector<double> us;
  for (int i = 0; i < st.profile_samples; ++i) us.push_back(ax.lo + ax.width() * i / (st.profile_samples - 1));
  for (const auto& [u, v] : psi_profile(s, us, st)) fc.max_abs_profile = std::max(fc.max_abs_profile, std::abs(v));

  if (std::abs(fc.derivatives[0]) > fc.threshold) {
    fc.tag = FrontClass::Tag::Front;
    return fc;
  }
  for (int k = 1; k <= st.psi_kmax; ++k) {
    if (std::abs(fc.derivatives[static_cast<std::size_t>(k)]) > fc.threshold) {
      fc.tag = FrontClass::Tag::KNonFront;
      fc.k = k;
      return fc;
    }
  }
  fc.tag = fc.max_abs_profile < fc.threshold ? FrontClass::Tag::PureFrontal : FrontClass::Tag::Degenerate;
  return fc;
}

AdaptedJets adapt_at_point(const SurfaceDef& s, double u0, const Settings& st) {
  const int K = st.order;
  const Point2 base{u0, 0.0};
  const JetVec3 f = s.jet(base, K);
  const FrameJets f0 = frame_from_axis_jet(f, st.zero_tol, false);
  const Eigen::Vector3d fu = f0.fu.value(), h = f0.h.value();
  const double E = fu.dot(fu), F = fu.dot(h), G = h.dot(h);
  if (!(E > 1e-20)) throw NumericalError("degenerate singular curve: |f_u| = " + fmt(std::sqrt(E)) + " at u = " + fmt(u0));
  const double Gp = G - F * F / E;
  if (!(Gp > 1e-20)) throw NumericalError("degenerate h: G - F^2/E = " + fmt(Gp) + " at u = " + fmt(u0));

  AdaptedJets a;
  a.u0 = u0;
  a.alpha = 1.0 / std::sqrt(E);
  a.beta = std::pow(Gp, -0.25);
  a.c = -a.beta * a.beta * F / E;
  const Point2 o{0.0, 0.0};
  const Jet2 s_ = Jet2::lift(Var::U, o, K), t_ = Jet2::lift(Var::V, o, K);
  const Jet2 su = u0 + a.alpha * s_ + (0.5 * a.c) * (t_ * t_);
  const Jet2 sv = a.beta * t_;
  a.frame = frame_from_axis_jet(compose(f, su, sv), st.zero_tol, true);
  a.fund = fundamental_jets(a.frame);
  a.residual = std::max({std::abs(a.fund.E.value() - 1.0), std::abs(a.fund.F.value()),
                         std::abs(a.fund.G.value() - 1.0)});
  return a;
}

InvariantSample invariants_from_adapted(const AdaptedJets& a) {
  const FundamentalJets& fu = a.fund;
  InvariantSample r;
  r.u = a.u0;
  r.kappa_nu = fu.L.value();
  r.kappa_t = fu.M.value();
  r.kappa_c = 2.0 * fu.N.value();
  r.r_b = 3.0 * fu.N1->value();
  r.r_c = 24.0 * (fu.N1->partial(0, 1) - 2.0 * fu.F.partial(0, 1) * fu.M.value() -
                  fu.G.partial(0, 1) * fu.N1->value());
  const JetVec3 T = normalized(a.frame.fu);
  r.kappa_s = d_u(T).value().dot(a.frame.h.value()) / a.frame.fu.value().norm();
  r.adaptedness = a.residual;
  return r;
}

InvariantSample invariants_at(const SurfaceDef& s, double u0, const Settings& st) {
  return invariants_from_adapted(adapt_at_point(s, u0, st));
}

InvariantSource surface_invariant_source(const SurfaceDef& s, const Settings& st) {
  InvariantSource src;
  src.sample = [s, st](double u) { return invariants_at(s, u, st); };
  src.speed = [s, st](double u) {
    const JetVec3 fu = d_u(s.jet({u, 0.0}, 3));
    const Jet2 sigma = norm(fu);
    return std::make_pair(sigma.value(), sigma.partial(1, 0));
  };
  src.range = s.axis_range();
  src.step = st.fd_step_rel * src.range.width();
  return src;
}

namespace {

// g at u0 + {-2h, -h, -h/2, 0, h/2, h, 2h}
std::pair<Derivative, Derivative> stencil(const double g[7], double h) {
  const double m2 = g[0], m1 = g[1], mh = g[2], z = g[3], ph = g[4], p1 = g[5], p2 = g[6];
  const double d1h = (m2 - 8 * m1 + 8 * p1 - p2) / (12 * h);
  const double d1q = (m1 - 8 * mh + 8 * ph - p1) / (6 * h);
  const double d2h = (-p2 + 16 * p1 - 30 * z + 16 * m1 - m2) / (12 * h * h);
  const double d2q = (-p1 + 16 * ph - 30 * z + 16 * mh - m1) / (3 * h * h);
  double gmax = 0.0;
  for (int i = 0; i < 7; ++i) gmax = std::max(gmax, std::abs(g[i]));
  const double eps = std::numeric_limits<double>::epsilon();
  Derivative a{(16 * d1q - d1h) / 15, std::abs(d1q - d1h) / 15 + 10 * eps * gmax / h};
  Derivative b{(16 * d2q - d2h) / 15, std::abs(d2q - d2h) / 15 + 40 * eps * gmax / (h * h)};
  return {a, b};
}

const double kOffsets[7] = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};

}  // namespace

std::pair<Derivative, Derivative> fd_derivatives(const std::function<double(double)>& g, double u0, double h) {
  double s[7];
  for (int i = 0; i < 7; ++i) s[i] = g(u0 + kOffsets[i] * h);
  return stencil(s, h);
}

InvariantDerivatives invariant_derivatives(const InvariantSource& src, double u0) {
  const double h = src.step;
  const double slack = 1e-12 * std::max(1.0, src.range.width());
  if (u0 - 2 * h < src.range.lo - slack || u0 + 2 * h > src.range.hi + slack) {
    throw NumericalError("finite-difference window [" + fmt(u0 - 2 * h) + ", " + fmt(u0 + 2 * h) +
                         "] exits declared u_range [" + fmt(src.range.lo) + ", " + fmt(src.range.hi) + "]");
  }
  InvariantSample smp[7];
  for (int i = 0; i < 7; ++i) smp[i] = src.sample(u0 + kOffsets[i] * h);
  const auto [sigma, dsigma] = src.speed(u0);

  auto deriv = [&](double InvariantSample::*field) {
    double g[7];
    for (int i = 0; i < 7; ++i) g[i] = smp[i].*field;
    auto [d1, d2] = stencil(g, h);
    // chain rule to arclength
    Derivative a{d1.value / sigma, d1.error / sigma};
    Derivative b{d2.value / (sigma * sigma) - dsigma * d1.value / (sigma * sigma * sigma),
                 d2.error / (sigma * sigma) + std::abs(dsigma) * d1.error / (sigma * sigma * sigma)};
    return std::make_pair(a, b);
  };

  InvariantDerivatives r;
  r.u0 = u0;
  r.at = smp[3];
  std::tie(r.kappa_s1, r.kappa_s2) = deriv(&InvariantSample::kappa_s);
  std::tie(r.kappa_nu1, r.kappa_nu2) = deriv(&InvariantSample::kappa_nu);
  std::tie(r.kappa_t1, r.kappa_t2) = deriv(&InvariantSample::kappa_t);
  r.r_b1 = deriv(&InvariantSample::r_b).first;
  r.r_c1 = deriv(&InvariantSample::r_c).first;
  return r;
}

RidgeReport ridge_report(const SurfaceDef& s, double u0, int j, const Settings& st) {
  if (j != 1 && j != 2) throw InputError("principal index must be 1 or 2");
  const AdaptedJets a = adapt_at_point(s, u0, st);
  const double kn = a.fund.L.value(), kt = a.fund.M.value();
  if (std::abs(kt) < st.umbilic_tol) {
    throw NumericalError("umbilic risk: ridge machinery undefined (|kappa_t| = " + fmt(std::abs(kt)) + " at u = " +
                         fmt(u0) + ")");
  }
  const CurvatureJets cj = curvature_jets(a.fund);
  const Jet2& k = cj.k[j - 1];
  const Jet2& ko = cj.k[2 - j];
  const auto [Va, Vb] = principal_vector_jets(a.fund, k);

  RidgeReport r;
  r.j = j;
  const Jet2 Vk = directional(Va, Vb, k);
  r.V_kappa = Vk.value();
  r.V_kappa_other = directional(Va, Vb, ko).value();
  r.VV_kappa = directional(Va, Vb, Vk).value();
  r.second_order = (kn - k.value()) * k.partial(0, 2) - kt * k.partial(1, 0);
  const double tol = st.ridge_tol * std::max({1.0, std::abs(kn - k.value()), std::abs(kt)});
  if (std::abs(r.V_kappa) > tol) {
    r.order = 0;
  } else if (std::abs(r.second_order) > tol) {
    r.order = 1;
  } else {
    r.order = 2;
  }
  r.sub_parabolic = std::abs(r.V_kappa_other) <= tol;
  return r;
}

}  // namespace frontal
