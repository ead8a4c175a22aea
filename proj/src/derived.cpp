#include "frontal/derived.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Geometry>
#include <Eigen/SVD>
#include <boost/math/tools/roots.hpp>

namespace frontal {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

const double kNaN = std::numeric_limits<double>::quiet_NaN();

double bisect_root(const std::function<double(double)>& g, double a, double b, double ga, double tol) {
  if (ga == 0.0) return a;
  auto done = [tol](double x, double y) { return std::abs(y - x) <= tol; };
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::bisect(g, a, b, done, iters);
  return 0.5 * (r.first + r.second);
}

// 5-point central first derivative of a vector-valued function.
template <class Fn>
Eigen::Vector3d central(Fn&& g, double u, double h) {
  return (g(u - 2 * h) - 8.0 * g(u - h) + 8.0 * g(u + h) - g(u + 2 * h)) / (12.0 * h);
}

}  // namespace

std::vector<CongruencePoint> congruence_check(const SurfaceDef& s, const std::vector<std::array<double, 3>>& samples,
                                              const Settings& st) {
  std::vector<CongruencePoint> out;
  out.reserve(samples.size());
  for (const auto& [u, v, w] : samples) {
    const FrameJets fj = frame_jets(s, {u, v}, st, true);
    const FrontalPoint P = point_from_jets(fj, st);
    CongruencePoint c;
    c.u = u;
    c.v = v;
    c.w = w;
    c.F = P.f + w * P.nu;
    const Eigen::Vector3d Fu = P.f_u + w * fj.nu_u.value();
    const Eigen::Vector3d Fv = P.f_v + w * fj.nu_v.value();
    const Eigen::Vector3d& Fw = P.nu;
    c.det_J = Fu.cross(Fv).dot(Fw);
    c.factor1 = 1.0 - w * P.kappa[0];
    c.factor2 = 1.0 - w * P.kappa[1];
    c.lambda = P.lambda;
    c.rhs = c.factor1 * c.factor2 * c.lambda;
    const double hadamard = Fu.norm() * Fv.norm() * Fw.norm();
    const double diff = std::abs(c.det_J - c.rhs);
    c.residual = hadamard > 1e-300 ? diff / hadamard : diff;
    out.push_back(c);
  }
  return out;
}

AxisModel surface_axis_model(const SurfaceDef& s, const Settings& st) {
  AxisModel m;
  m.name = s.name;
  m.frame = [s, st](double u) {
    const FrameJets fj = frame_jets(s, {u, 0.0}, st, false);
    AxisFrame fr;
    fr.u = u;
    fr.gamma = fj.f.value();
    const Eigen::Vector3d fu = fj.fu.value();
    fr.sigma = fu.norm();
    fr.T = fu / fr.sigma;
    fr.nu = fj.nu.value();
    fr.h = fr.nu.cross(fr.T);
    return fr;
  };
  m.invariants = surface_invariant_source(s, st);
  return m;
}

RuledPoint nr_eval(const AxisModel& m, double u, double w, const Settings& st) {
  (void)st;
  const AxisFrame fr = m.frame(u);
  const InvariantSample I = m.invariants.sample(u);
  RuledPoint r;
  r.u = u;
  r.w = w;
  r.NR = fr.gamma + w * fr.nu;
  r.NR_u = (1.0 - w * I.kappa_nu) * fr.T - w * I.kappa_t * fr.h;
  r.NR_w = fr.nu;
  const double h = m.invariants.step;
  const Interval R = m.invariants.range;
  if (u - 2 * h >= R.lo && u + 2 * h <= R.hi) {
    r.NR_u_direct = central(
                        [&](double x) {
                          const AxisFrame a = m.frame(x);
                          return Eigen::Vector3d(a.gamma + w * a.nu);
                        },
                        u, h) /
                    fr.sigma;
  } else {
    r.NR_u_direct = r.NR_u;
  }
  r.singular = r.NR_u.cross(r.NR_w).norm() < 1e-8 * std::max(1.0, std::abs(w));
  return r;
}

std::string to_string(SingularCurveTrace::Kind k) {
  switch (k) {
    case SingularCurveTrace::Kind::First: return "first";
    case SingularCurveTrace::Kind::Second: return "second";
    case SingularCurveTrace::Kind::Undetermined: return "undetermined";
  }
  return "?";
}

SingularCurveTrace nr_singular_points(const AxisModel& m, const Settings& st, const ScanOptions& opt) {
  const Interval R = m.invariants.range;
  const int n = opt.lines - 1;
  std::vector<double> us(static_cast<std::size_t>(n + 1)), kt(us.size()), kn(us.size());
  double scale = 0.0;
  for (int i = 0; i <= n; ++i) {
    us[i] = R.lo + R.width() * i / n;
    const InvariantSample I = m.invariants.sample(us[i]);
    kt[i] = I.kappa_t;
    kn[i] = I.kappa_nu;
    if (std::hypot(I.kappa_nu, I.kappa_t) < st.kappa_tol) {
      throw NumericalError("cylindrical normal ruled surface: (kappa_nu, kappa_t) = (0, 0) at u = " + fmt(us[i]));
    }
    scale = std::max(scale, std::abs(I.kappa_t));
  }

  SingularCurveTrace tr;
  tr.surface = "NR";
  auto push = [&](double u0) {
    const double k = m.invariants.sample(u0).kappa_nu;
    if (std::abs(k) < st.kappa_tol) {
      throw NumericalError("singular ruling at infinity: kappa_nu(" + fmt(u0) + ") = " + fmt(k));
    }
    const double w0 = 1.0 / k;
    if (!tr.params.empty() && std::abs(tr.params.back().u - u0) < 1e-9) return;
    tr.params.push_back({u0, w0});
    const AxisFrame fr = m.frame(u0);
    tr.points.push_back(fr.gamma + w0 * fr.nu);
    tr.kinds.push_back(SingularCurveTrace::Kind::Undetermined);
  };

  if (scale < 1e-7) {
    // developable: the whole curve gamma + nu / kappa_nu
    for (double u : us) push(u);
    return tr;
  }
  auto g = [&](double u) { return m.invariants.sample(u).kappa_t; };
  for (int i = 0; i < n; ++i) {
    if (kt[i] == 0.0) {
      push(us[i]);
    } else if (kt[i] * kt[i + 1] < 0.0) {
      push(bisect_root(g, us[i], us[i + 1], kt[i], opt.root_tol));
    }
  }
  if (kt[n] == 0.0) push(us[n]);
  return tr;
}

DevelopableEvidence nr_developable_test(const AxisModel& m, const Settings& st, int samples) {
  (void)st;
  const Interval R = m.invariants.range;
  const double h = m.invariants.step;
  DevelopableEvidence ev;
  ev.samples = samples;
  for (int i = 0; i < samples; ++i) {
    const double u = (R.lo + 2 * h) + (R.width() - 4 * h) * i / (samples - 1);
    const AxisFrame fr = m.frame(u);
    const Eigen::Vector3d dnu = central([&](double x) { return m.frame(x).nu; }, u, h) / fr.sigma;
    const double det = fr.T.cross(fr.nu).dot(dnu);
    const double kt = m.invariants.sample(u).kappa_t;
    ev.max_kappa_t = std::max(ev.max_kappa_t, std::abs(kt));
    ev.max_det = std::max(ev.max_det, std::abs(det));
    ev.max_mismatch = std::max(ev.max_mismatch, std::abs(det - kt));
  }
  ev.developable = ev.max_kappa_t < 1e-7;
  return ev;
}

bool nr_front_test(const AxisModel& m, double u0, const Settings& st) {
  if (!nr_developable_test(m, st).developable) {
    throw NumericalError("front test applies to developable normal ruled surfaces only");
  }
  return std::abs(m.invariants.sample(u0).kappa_s) > 1e-7;
}

double plane_fit_residual(const std::vector<Eigen::Vector3d>& pts) {
  if (pts.size() < 3) return 0.0;
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  Eigen::MatrixXd A(pts.size(), 3);
  for (std::size_t i = 0; i < pts.size(); ++i) A.row(static_cast<Eigen::Index>(i)) = (pts[i] - c).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinV);
  const Eigen::Vector3d n = svd.matrixV().col(2);
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, std::abs((p - c).dot(n)));
  return r;
}

// ---- focal surfaces --------------------------------------------------------

namespace {

struct FocalJets {
  FrameJets fj;
  FundamentalJets fu;
  Jet2 k, rho, Va, Vb, Vrho;
};

FocalJets focal_jets(const SurfaceDef& s, int j, Point2 p, const Settings& st) {
  if (j != 1 && j != 2) throw InputError("focal surface index must be 1 or 2");
  FocalJets J;
  J.fj = frame_jets(s, p, st, true);
  J.fu = fundamental_jets(J.fj);
  const CurvatureJets cj = curvature_jets(J.fu);
  J.k = cj.k[j - 1];
  if (std::abs(J.k.value()) < st.kappa_tol) {
    throw NumericalError("focal point at infinity: |kappa_" + std::to_string(j) + "| = " + fmt(std::abs(J.k.value())) +
                         " at (" + fmt(p.u) + ", " + fmt(p.v) + ")");
  }
  J.rho = 1.0 / J.k;
  std::tie(J.Va, J.Vb) = principal_vector_jets(J.fu, J.k);
  J.Vrho = directional(J.Va, J.Vb, J.rho);
  return J;
}

}  // namespace

FocalPoint focal_eval(const SurfaceDef& s, int j, Point2 p, const Settings& st) {
  const FocalJets J = focal_jets(s, j, p, st);
  FocalPoint fp;
  fp.p = p;
  fp.j = j;
  fp.kappa = J.k.value();
  fp.rho = J.rho.value();
  const JetVec3 C = J.fj.f + J.rho * J.fj.nu;
  const JetVec3 x = focal_normal_jet(J.fj, J.fu, J.k);
  fp.x = x.value();
  if (fp.x.norm() < 1e-12) throw NumericalError("focal normal x_j vanishes at (" + fmt(p.u) + ", " + fmt(p.v) + ")");
  const JetVec3 e = normalized(x);
  const JetVec3 Cu = d_u(C), Cv = d_v(C), eu = d_u(e), ev = d_v(e);
  fp.C = C.value();
  fp.C_u = Cu.value();
  fp.C_v = Cv.value();
  fp.e = e.value();
  fp.nu = J.fj.nu.value();
  fp.E = fp.C_u.dot(fp.C_u);
  fp.F = fp.C_u.dot(fp.C_v);
  fp.G = fp.C_v.dot(fp.C_v);
  fp.L = -fp.C_u.dot(eu.value());
  fp.M = -fp.C_u.dot(ev.value());
  fp.N = -fp.C_v.dot(ev.value());
  const double D = fp.E * fp.G - fp.F * fp.F;
  fp.regular = D > 1e-10;
  if (fp.regular) {
    fp.K = (fp.L * fp.N - fp.M * fp.M) / D;
    fp.H = (fp.E * fp.N - 2 * fp.F * fp.M + fp.G * fp.L) / (2 * D);
  } else {
    fp.K = fp.H = kNaN;
  }
  const double a = J.Va.value(), b = J.Vb.value();
  fp.V = {a, b};
  fp.V_rho = J.Vrho.value();
  fp.dC_V = a * fp.C_u + b * fp.C_v;
  fp.de_V = a * eu.value() + b * ev.value();
  fp.grad_V_rho = {d_u(J.Vrho).value(), d_v(J.Vrho).value()};
  return fp;
}

double focal_detector(const SurfaceDef& s, int j, Point2 p, const Settings& st) {
  try {
    return focal_jets(s, j, p, st).Vrho.value();
  } catch (const NumericalError&) {
    return kNaN;
  }
}

namespace {

SingularCurveTrace::Kind kind_at(const FocalPoint& fp) {
  const Eigen::Vector2d g = fp.grad_V_rho;
  if (g.norm() < 1e-8 || fp.V.norm() < 1e-12) return SingularCurveTrace::Kind::Undetermined;
  const Eigen::Vector2d t = Eigen::Vector2d(-g.y(), g.x()).normalized();
  const Eigen::Vector2d n = fp.V.normalized();
  const double angle = std::asin(std::min(1.0, std::abs(t.x() * n.y() - t.y() * n.x())));
  return angle < 1e-4 ? SingularCurveTrace::Kind::Second : SingularCurveTrace::Kind::First;
}

}  // namespace

SingularCurveTrace focal_singular_trace(const SurfaceDef& s, int j, const Settings& st, const ScanOptions& opt) {
  const Interval A = s.axis_range(), B = s.transverse_range();
  const int n = opt.lines - 1;
  auto U = [&](int i) { return A.lo + A.width() * i / n; };
  auto V = [&](int k) { return B.lo + B.width() * k / n; };
  std::vector<double> D(static_cast<std::size_t>((n + 1) * (n + 1)));
  auto at = [&](int i, int k) -> double& { return D[static_cast<std::size_t>(i * (n + 1) + k)]; };
  for (int i = 0; i <= n; ++i) {
    for (int k = 0; k <= n; ++k) at(i, k) = focal_detector(s, j, {U(i), V(k)}, st);
  }

  std::vector<Point2> roots;
  auto crossing = [](double a, double b) { return std::isfinite(a) && std::isfinite(b) && a * b <= 0.0; };
  for (int i = 0; i <= n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (!crossing(at(i, k), at(i, k + 1))) continue;
      const double u = U(i);
      const double v = bisect_root([&](double x) { return focal_detector(s, j, {u, x}, st); }, V(k), V(k + 1),
                                   at(i, k), opt.root_tol);
      roots.push_back({u, v});
    }
  }
  for (int k = 0; k <= n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!crossing(at(i, k), at(i + 1, k))) continue;
      const double v = V(k);
      const double u = bisect_root([&](double x) { return focal_detector(s, j, {x, v}, st); }, U(i), U(i + 1),
                                   at(i, k), opt.root_tol);
      roots.push_back({u, v});
    }
  }
  std::sort(roots.begin(), roots.end(), [](Point2 a, Point2 b) { return a.u < b.u || (a.u == b.u && a.v < b.v); });

  SingularCurveTrace tr;
  tr.surface = j == 1 ? "C1" : "C2";
  for (const Point2& p : roots) {
    bool dup = false;
    for (std::size_t q = tr.params.size(); q-- > 0 && !dup;) {
      if (std::abs(tr.params[q].u - p.u) > 1e-9) break;
      dup = std::abs(tr.params[q].v - p.v) < 1e-9;
    }
    if (dup) continue;
    try {
      const FocalPoint fp = focal_eval(s, j, p, st);
      tr.params.push_back(p);
      tr.points.push_back(fp.C);
      tr.kinds.push_back(kind_at(fp));
    } catch (const NumericalError&) {
      // masked point: skip
    }
  }
  return tr;
}

Point2 focal_curve_point(const SurfaceDef& s, int j, double t, double reach, const Settings& st) {
  const int m = 40;
  auto g = [&](double v) { return focal_detector(s, j, {t, v}, st); };
  double best = std::numeric_limits<double>::infinity();
  double prev_v = -reach, prev = g(prev_v);
  for (int k = 1; k <= m; ++k) {
    const double v = -reach + 2 * reach * k / m;
    const double cur = g(v);
    if (std::isfinite(prev) && std::isfinite(cur) && prev * cur <= 0.0) {
      const double r = bisect_root(g, prev_v, v, prev, 1e-13);
      if (std::abs(r) < std::abs(best)) best = r;
    }
    prev_v = v;
    prev = cur;
  }
  if (!std::isfinite(best)) {
    throw NumericalError("no singular point of C" + std::to_string(j) + " on the transect u = " + fmt(t));
  }
  return {t, best};
}

FocalCurvaturePrediction focal_curvature_prediction(const SurfaceDef& s, int j, double u0, const Settings& st) {
  const InvariantDerivatives d = invariant_derivatives(surface_invariant_source(s, st), u0);
  const InvariantSample& I = d.at;
  if (std::abs(I.r_c) < 1e-6) throw NumericalError("prediction needs r_c != 0 (5/2-cuspidal edge)");
  if (std::abs(I.kappa_t) < st.umbilic_tol) throw NumericalError("prediction needs kappa_t != 0");
  const double kj = evaluate_point(s, {u0, 0.0}, st).kappa[j - 1];
  const double a = I.kappa_nu - kj;
  const double q = I.kappa_t * I.kappa_t + a * a;
  FocalCurvaturePrediction r;
  r.K = -I.kappa_t * I.kappa_t * std::pow(kj, 4) / (q * q);
  r.H = -kj * (I.kappa_s * q + d.kappa_t1.value * a - I.kappa_t * d.kappa_nu1.value) / (2 * std::pow(q, 1.5));
  return r;
}

double focal_psi_at(const SurfaceDef& s, int j, Point2 p, Eigen::Vector2d dir, const Settings& st) {
  const FocalPoint fp = focal_eval(s, j, p, st);
  const Eigen::Vector3d beta = dir.x() * fp.C_u + dir.y() * fp.C_v;
  return beta.cross(fp.e).dot(fp.de_V);
}

std::vector<FocalPsiSample> focal_psi_profile(const SurfaceDef& s, int j, const std::vector<double>& ts,
                                              double reach, const Settings& st) {
  std::vector<FocalPsiSample> out;
  for (double t : ts) {
    const Point2 p = focal_curve_point(s, j, t, reach, st);
    const FocalPoint fp = focal_eval(s, j, p, st);
    const Eigen::Vector2d g = fp.grad_V_rho;
    if (std::abs(g.y()) < 1e-12) throw NumericalError("singular curve of C_j is not a graph over u at u = " + fmt(t));
    const Eigen::Vector2d dir(1.0, -g.x() / g.y());
    const Eigen::Vector3d beta = dir.x() * fp.C_u + dir.y() * fp.C_v;
    out.push_back({t, p, beta.cross(fp.e).dot(fp.de_V), fp.de_V.norm()});
  }
  return out;
}

}  // namespace frontal
