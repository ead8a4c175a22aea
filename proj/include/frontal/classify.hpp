#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "frontal/derived.hpp"

namespace frontal {

enum class Verdict {
  CuspidalEdge,
  Swallowtail,
  CuspidalCrossCap,
  CuspidalS1Plus,
  CrossCap,
  S1Plus,
  S1Minus,
  FirstKind,
  SecondKind,
  Regular,              // C_j regular at the point (r_c != 0)
  NotCuspidalCrossCap,  // first kind, but the ccr inequality fails
  Degenerate,
  Unclassified
};
std::string to_string(Verdict v);

// A quantity is "zero" below tau, "nonzero" above band*tau, and undecided in
// between. tau = scale * max(base, 10 * estimated error).
struct ClassifySettings {
  double value_tol = 1e-7;
  double deriv_tol = 1e-5;
  double band = 10.0;
  double scale = 1.0;
};

struct Criterion {
  enum class State { Zero, NonZero, Band };
  std::string name;
  double value = 0;
  double threshold = 0;
  State state = State::Band;
};
std::string to_string(Criterion::State s);

struct SingularityReport {
  std::string surface;  // "NR", "C1", "C2"
  Point2 location;
  Verdict verdict = Verdict::Unclassified;
  std::vector<Criterion> criteria;
  double margin = 0;  // min distance from the band over the deciding quantities, >= 1 is clear
  std::string note;

  const Criterion* find(const std::string& name) const;
};

// Branches for a developable NR at (u0, 1/kappa_nu(u0)).
SingularityReport classify_nr_developable(const AxisModel& m, double u0, const Settings& st,
                                          const ClassifySettings& cs = {});
// Branches for a nondevelopable NR at (u0, w0) in S(NR).
SingularityReport classify_nr_nondevelopable(const AxisModel& m, double u0, double w0, const Settings& st,
                                             const ClassifySettings& cs = {});

struct PhiOracle {
  double phi = 0, phi_u = 0, phi_w = 0;
  double phi_uu = 0, phi_uw = 0, phi_ww = 0;
  double hessian = 0;         // phi_uu phi_ww - phi_uw^2 from the entries
  double hessian_closed = 0;  // -kt''(2 ks kn' + kt'')
  double phi_frame = 0;       // det(NR_w, NR_s, NR_ss) from the sampled frame
  double phi_w_frame = 0;
};
PhiOracle phi_oracle(const AxisModel& m, double u0, double w0, const Settings& st);

struct FocalReport : SingularityReport {
  int j = 1;
  int ridge_order = -1;
  double lhs = 0, rhs = 0;  // both sides of the ccr inequality
  double rho_hat1_trace = 0, rho_hat1_jet = 0;
  double psi_slope = 0;     // d/du psi_{C_j} along the singular curve
};
FocalReport classify_focal_point(const SurfaceDef& s, int j, double u0, const Settings& st,
                                 const ClassifySettings& cs = {});

// ---- frame ODE -------------------------------------------------------------

using ScalarFn = std::function<double(double)>;

struct FrameSeed {
  Eigen::Vector3d gamma = Eigen::Vector3d::Zero();
  Eigen::Vector3d T = Eigen::Vector3d::UnitX();
  Eigen::Vector3d h = Eigen::Vector3d::UnitY();
  Eigen::Vector3d nu = Eigen::Vector3d::UnitZ();
};

// Integrates (gamma, T, h, nu)' with T' = ks h + kn nu, h' = -ks T + kt nu,
// nu' = -kn T - kt h from u0 over range (unit speed). RK4 with
// Gram-Schmidt re-projection after every step.
class SynthesizedFrame {
 public:
  SynthesizedFrame(ScalarFn ks, ScalarFn kn, ScalarFn kt, Interval range, double u0 = 0.0, double step = 1e-3,
                   FrameSeed seed = {});
  AxisFrame at(double u) const;
  // kappa_s, kappa_nu, kappa_t recovered by central differences of the frame
  InvariantSample recovered(double u) const;
  const Interval& range() const { return range_; }

 private:
  using State = std::array<double, 12>;
  void rhs(const State& x, State& dx, double u) const;
  State step_from(State x, double u, double h) const;

  ScalarFn ks_, kn_, kt_;
  Interval range_;
  double u0_, h_;
  std::vector<State> fwd_, bwd_;  // nodes u0 + i h and u0 - i h
};

AxisModel frame_ode_synthesize(ScalarFn ks, ScalarFn kn, ScalarFn kt, Interval range, const std::string& name = "synth",
                               double step = 1e-3, FrameSeed seed = {});

// ---- pure propagation ------------------------------------------------------

struct PurePropagationReport {
  bool hypotheses_met = false;
  std::string note;
  double max_abs_rc = 0;
  int first_order_ridges = 0;
  int samples = 0;
  double trace_distance = 0;  // max |v| of S(C_j) near the axis
  double max_abs_psi = 0;
  std::vector<double> bands;  // |v| of the sampled bands
  std::vector<double> max_abs_K, max_abs_H;
  bool pass = false;
};
PurePropagationReport pure_propagation_check(const SurfaceDef& s, int j, const Settings& st, int samples = 21);

}  // namespace frontal
