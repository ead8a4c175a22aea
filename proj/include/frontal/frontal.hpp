#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "frontal/jet.hpp"
#include "frontal/surface.hpp"

namespace frontal {

struct Settings {
  int order = 7;              // jet order K
  double zero_tol = 1e-10;    // deflation / "vanishes" threshold, relative to coefficient scale
  double gamma_tol = 1e-9;    // Gamma clamp band
  double psi_tol = 1e-8;      // psi classification, times scale
  int psi_kmax = 3;
  double near_axis = 0.05;    // |v| below which h, nu, nu_1 come from the axis by re-expansion
  double umbilic_tol = 1e-6;  // |kappa_t| guard for principal-vector machinery
  double kappa_tol = 1e-8;    // |kappa_j| below this: focal point at infinity
  double ridge_tol = 1e-8;
  double fd_step_rel = 1e-3;  // finite-difference step relative to the axis range
  int profile_samples = 41;
};

// Jets of the frame {f_u, h, nu} at a point of the internal chart.
// Orders: f K, f_u/f_v K-1, h and nu K-2, nu_u/nu_v K-3, nu_1 K-4.
struct FrameJets {
  Point2 p;
  int order = 0;
  JetVec3 f, fu, fv, h, nu, nu_u, nu_v;
  std::optional<JetVec3> nu1;
};

// f must be based on the axis (v = 0).
FrameJets frame_from_axis_jet(const JetVec3& f, double tol, bool want_nu1);
FrameJets frame_jets(const SurfaceDef& s, Point2 p, const Settings& st, bool want_nu1 = true);

struct FundamentalJets {
  Jet2 E, F, G, L, M, N;
  std::optional<Jet2> N1;
};
FundamentalJets fundamental_jets(const FrameJets& fj);

struct CurvatureJets {
  Jet2 K, H, Gamma;
  Jet2 k[2];  // kappa_1 >= kappa_2
};
// Needs N1 and Gamma > 0 at the base point.
CurvatureJets curvature_jets(const FundamentalJets& fu);

// Principal vector V_j = (-v(M - k F), L - k E) as a pair of jets.
std::pair<Jet2, Jet2> principal_vector_jets(const FundamentalJets& fu, const Jet2& kappa);
// x_j = -(M - k F) f_u + (L - k E) h
JetVec3 focal_normal_jet(const FrameJets& fj, const FundamentalJets& fu, const Jet2& kappa);
// Directional derivative a*g_u + b*g_v.
Jet2 directional(const Jet2& a, const Jet2& b, const Jet2& g);

struct FrontalPoint {
  Point2 p;
  Eigen::Vector3d f, f_u, f_v, h, nu, nu1;
  double lambda = 0;
  double E = 0, F = 0, G = 0, L = 0, M = 0, N = 0, N1 = 0;
  double K = 0, H = 0, Gamma = 0;
  double kappa[2] = {0, 0};
  Eigen::Vector2d V[2];
  Eigen::Vector3d x[2];
  double X1 = 0, X2 = 0, Y1 = 0, Y2 = 0;
};

FrontalPoint point_from_jets(const FrameJets& fj, const Settings& st);
FrontalPoint evaluate_point(const SurfaceDef& s, Point2 p, const Settings& st);

// Frontal-condition check used by the registry: deflation on axis samples
// and |<f_u,nu>|, |<f_v,nu>|, ||nu|-1| on a coarse grid.
void validate_frontal(const SurfaceDef& s, const Settings& st = {});

// psi(u) = det(f_u, nu, nu_v) on the axis.
std::vector<std::pair<double, double>> psi_profile(const SurfaceDef& s, const std::vector<double>& us,
                                                   const Settings& st);

struct FrontClass {
  enum class Tag { Front, KNonFront, PureFrontal, Degenerate };
  Tag tag = Tag::Degenerate;
  int k = 0;                       // for KNonFront
  std::vector<double> derivatives;  // psi(u0), psi'(u0), ...
  double max_abs_profile = 0;
  double threshold = 0;
};
std::string to_string(FrontClass::Tag t);
FrontClass classify_front(const SurfaceDef& s, double u0, const Settings& st);

// Pointwise adapted chart phi(s,t) = (u0 + alpha s + (c/2) t^2, beta t).
struct AdaptedJets {
  double u0 = 0, alpha = 0, beta = 0, c = 0;
  double residual = 0;  // max(|E-1|, |F|, |G-1|) at the point
  FrameJets frame;      // based at (0,0) in (s,t)
  FundamentalJets fund;
};
AdaptedJets adapt_at_point(const SurfaceDef& s, double u0, const Settings& st);

struct InvariantSample {
  double u = 0;
  double kappa_s = 0, kappa_nu = 0, kappa_t = 0, kappa_c = 0, r_b = 0, r_c = 0;
  double adaptedness = 0;
};
InvariantSample invariants_from_adapted(const AdaptedJets& a);
InvariantSample invariants_at(const SurfaceDef& s, double u0, const Settings& st);

// Anything that yields invariants along a singular curve: a surface or a
// synthesized frame. speed(u) returns (sigma, sigma') with sigma = |gamma'|.
struct InvariantSource {
  std::function<InvariantSample(double)> sample;
  std::function<std::pair<double, double>(double)> speed;
  Interval range;
  double step = 1e-3;
};
InvariantSource surface_invariant_source(const SurfaceDef& s, const Settings& st);

struct Derivative {
  double value = 0;
  double error = 0;
};

// Arclength derivatives of the invariants.
struct InvariantDerivatives {
  double u0 = 0;
  InvariantSample at;
  Derivative kappa_s1, kappa_s2, kappa_nu1, kappa_nu2, kappa_t1, kappa_t2, r_b1, r_c1;
};
InvariantDerivatives invariant_derivatives(const InvariantSource& src, double u0);

// Central differences (4th-order stencil, one Richardson level) of a
// scalar function; returns first and second derivatives.
std::pair<Derivative, Derivative> fd_derivatives(const std::function<double(double)>& g, double u0,
                                                  double h);

struct RidgeReport {
  int j = 1;
  int order = 0;             // 0, 1, or 2 meaning "at least 2"
  double V_kappa = 0;        // V_j kappa_j
  double second_order = 0;   // (k_nu - k_j)(k_j)_vv - k_t (k_j)_u
  double VV_kappa = 0;       // V_j V_j kappa_j, independent cross-check
  double V_kappa_other = 0;  // V_j kappa_{j+1}
  bool sub_parabolic = false;
};
RidgeReport ridge_report(const SurfaceDef& s, double u0, int j, const Settings& st);

}  // namespace frontal
