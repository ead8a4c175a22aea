#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "frontal/frontal.hpp"

namespace frontal {

// ---- normal congruence F = f + w nu ----------------------------------------

struct CongruencePoint {
  double u = 0, v = 0, w = 0;
  Eigen::Vector3d F;
  double det_J = 0;
  double factor1 = 0, factor2 = 0, lambda = 0;  // (1 - w k1), (1 - w k2), lambda
  double rhs = 0;
  double residual = 0;  // |det_J - rhs| over |F_u| |F_v| |F_w|
};

// Samples are internal-chart (u, v, w).
std::vector<CongruencePoint> congruence_check(const SurfaceDef& s, const std::vector<std::array<double, 3>>& samples,
                                              const Settings& st);

// ---- data along the singular curve -----------------------------------------

// Unit frame {T, h, nu} along gamma with T x h = nu, and sigma = |gamma'| in
// the model's own parameter.
struct AxisFrame {
  double u = 0;
  Eigen::Vector3d gamma, T, h, nu;
  double sigma = 1;
};

// Either a surface's singular curve or a synthesized frame. Everything about
// NR goes through this.
struct AxisModel {
  std::string name;
  std::function<AxisFrame(double)> frame;
  InvariantSource invariants;
};

AxisModel surface_axis_model(const SurfaceDef& s, const Settings& st);

struct RuledPoint {
  double u = 0, w = 0;
  Eigen::Vector3d NR, NR_u, NR_w;  // NR_u per arclength of gamma
  Eigen::Vector3d NR_u_direct;     // d/ds (gamma + w nu) taken from the frame itself
  bool singular = false;
};
RuledPoint nr_eval(const AxisModel& m, double u, double w, const Settings& st);

struct SingularCurveTrace {
  enum class Kind { First, Second, Undetermined };
  std::string surface;  // "NR", "C1", "C2"
  std::vector<Point2> params;
  std::vector<Eigen::Vector3d> points;
  std::vector<Kind> kinds;
};
std::string to_string(SingularCurveTrace::Kind k);

struct ScanOptions {
  int lines = 201;  // grid lines per axis
  double root_tol = 1e-12;
};

// Roots of kappa_t on the axis; each yields (u0, 1/kappa_nu(u0)).
SingularCurveTrace nr_singular_points(const AxisModel& m, const Settings& st, const ScanOptions& opt = {});

struct DevelopableEvidence {
  bool developable = false;
  double max_kappa_t = 0;
  double max_det = 0;       // max |det(T, nu, nu')| per arclength
  double max_mismatch = 0;  // max |det - kappa_t|
  int samples = 0;
};
DevelopableEvidence nr_developable_test(const AxisModel& m, const Settings& st, int samples = 41);
bool nr_front_test(const AxisModel& m, double u0, const Settings& st);

// Least-squares plane through points; returns the largest distance to it.
double plane_fit_residual(const std::vector<Eigen::Vector3d>& pts);

// ---- focal surfaces C_j = f + nu / kappa_j ---------------------------------

struct FocalPoint {
  Point2 p;
  int j = 1;
  double kappa = 0, rho = 0;
  Eigen::Vector3d C, C_u, C_v, x, e, nu;
  double E = 0, F = 0, G = 0, L = 0, M = 0, N = 0;
  bool regular = false;  // first fundamental determinant above threshold
  double K = 0, H = 0;
  double V_rho = 0;      // singularity detector
  Eigen::Vector2d V;
  Eigen::Vector3d dC_V;  // dC_j(V_j)
  Eigen::Vector3d de_V;  // de_j(V_j)
  Eigen::Vector2d grad_V_rho;
};

FocalPoint focal_eval(const SurfaceDef& s, int j, Point2 p, const Settings& st);
// V_j rho_j alone (cheaper; NaN where kappa_j is masked or Gamma <= 0).
double focal_detector(const SurfaceDef& s, int j, Point2 p, const Settings& st);

SingularCurveTrace focal_singular_trace(const SurfaceDef& s, int j, const Settings& st, const ScanOptions& opt = {});

// Point (t, g(t)) of the first-kind branch of S(C_j) near the axis; bisection
// in v on [-reach, reach].
Point2 focal_curve_point(const SurfaceDef& s, int j, double t, double reach, const Settings& st);

struct FocalCurvaturePrediction {
  double K = 0, H = 0;
};
FocalCurvaturePrediction focal_curvature_prediction(const SurfaceDef& s, int j, double u0, const Settings& st);

struct FocalPsiSample {
  double t = 0;
  Point2 p;
  double psi = 0;
  double de_V = 0;  // |de_j(V_j)|
};
// psi_{C_j} along the first-kind branch through the given parameter values.
std::vector<FocalPsiSample> focal_psi_profile(const SurfaceDef& s, int j, const std::vector<double>& ts,
                                              double reach, const Settings& st);
// psi_{C_j} at a point of S(C_j) whose tangent in parameter space is dir.
double focal_psi_at(const SurfaceDef& s, int j, Point2 p, Eigen::Vector2d dir, const Settings& st);

}  // namespace frontal
