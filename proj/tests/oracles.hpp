#pragma once

// Test-only oracles that never go through the classifier code paths.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "frontal/derived.hpp"

namespace oracle {

// Polynomial coefficients, lowest degree first.
using Poly = std::vector<double>;

inline double peval(const Poly& p, double u) {
  double r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * u + *it;
  return r;
}

inline Poly pderiv(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(static_cast<double>(k) * p[k]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

inline double coeff(const Poly& p, std::size_t k) { return k < p.size() ? p[k] : 0.0; }

// Taylor series of the frame ODE about u = 0 for polynomial invariants.
// Rows of F are T, h, nu; F' = K F with K = [[0,ks,kn],[-ks,0,kt],[-kn,-kt,0]];
// gamma' = T. Coefficients by (k+1) F_{k+1} = sum_i K_i F_{k-i}.
struct TaylorFrame {
  std::vector<Eigen::Matrix3d> F;
  std::vector<Eigen::Vector3d> gamma;

  TaylorFrame(const Poly& ks, const Poly& kn, const Poly& kt, int terms = 60) {
    const std::size_t deg = std::max({ks.size(), kn.size(), kt.size()});
    std::vector<Eigen::Matrix3d> K(deg);
    for (std::size_t i = 0; i < deg; ++i) {
      K[i] << 0, coeff(ks, i), coeff(kn, i), -coeff(ks, i), 0, coeff(kt, i), -coeff(kn, i), -coeff(kt, i), 0;
    }
    F.push_back(Eigen::Matrix3d::Identity());
    gamma.push_back(Eigen::Vector3d::Zero());
    for (int k = 0; k < terms; ++k) {
      Eigen::Matrix3d acc = Eigen::Matrix3d::Zero();
      for (std::size_t i = 0; i < deg && i <= static_cast<std::size_t>(k); ++i) {
        acc += K[i] * F[static_cast<std::size_t>(k) - i];
      }
      F.push_back(acc / (k + 1));
      gamma.push_back(F[static_cast<std::size_t>(k)].row(0).transpose() / (k + 1));
    }
  }

  frontal::AxisFrame at(double u) const {
    Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
    Eigen::Vector3d g = Eigen::Vector3d::Zero();
    for (std::size_t k = F.size(); k-- > 0;) {
      M = M * u + F[k];
      g = g * u + gamma[k];
    }
    frontal::AxisFrame f;
    f.u = u;
    f.gamma = g;
    f.T = M.row(0).transpose();
    f.h = M.row(1).transpose();
    f.nu = M.row(2).transpose();
    return f;
  }
};

inline double d1(const std::function<double(double)>& g, double u, double h) {
  return (g(u - 2 * h) - 8 * g(u - h) + 8 * g(u + h) - g(u + 2 * h)) / (12 * h);
}

inline double d2(const std::function<double(double)>& g, double u, double h) {
  return (-g(u - 2 * h) + 16 * g(u - h) - 30 * g(u) + 16 * g(u + h) - g(u + 2 * h)) / (12 * h * h);
}

// Developable NR fingerprint at u0 from the sampled frame alone.
// psi(u) = det(beta', T, T') along beta(u) = gamma + nu / kn(u); B = psi''(u0).
// A = -12 kn'^3 ks'' / kn^4 from the prescribed polynomials.
struct Fingerprint {
  double psi = 0, psi1 = 0, B = 0, A = 0;
  double B_closed = 0;  // -ks'' kn' / kn^2
  double lambda_eta = 0;  // d/du (1 - w kn) at w = 1/kn(u0)
};

inline Fingerprint developable_fingerprint(const frontal::AxisModel& m, const Poly& ks, const Poly& kn, double u0) {
  const double h = 1e-3, H = 5e-3;
  auto beta = [&](double u) {
    const frontal::AxisFrame f = m.frame(u);
    return Eigen::Vector3d(f.gamma + f.nu / peval(kn, u));
  };
  auto psi = [&](double u) {
    Eigen::Vector3d b1, t1;
    const Eigen::Vector3d bm2 = beta(u - 2 * h), bm1 = beta(u - h), bp1 = beta(u + h), bp2 = beta(u + 2 * h);
    b1 = (bm2 - 8 * bm1 + 8 * bp1 - bp2) / (12 * h);
    const Eigen::Vector3d tm2 = m.frame(u - 2 * h).T, tm1 = m.frame(u - h).T, tp1 = m.frame(u + h).T,
                          tp2 = m.frame(u + 2 * h).T;
    t1 = (tm2 - 8 * tm1 + 8 * tp1 - tp2) / (12 * h);
    return b1.dot(m.frame(u).T.cross(t1));
  };
  Fingerprint fp;
  fp.psi = psi(u0);
  fp.psi1 = d1(psi, u0, H);
  fp.B = d2(psi, u0, H);
  const double n0 = peval(kn, u0), n1 = peval(pderiv(kn), u0);
  const double s2 = peval(pderiv(pderiv(ks)), u0);
  fp.A = -12 * n1 * n1 * n1 * s2 / (n0 * n0 * n0 * n0);
  fp.B_closed = -s2 * n1 / (n0 * n0);
  fp.lambda_eta = -(1.0 / n0) * n1;
  return fp;
}

// Brute-force product of two coefficient tables c[i][j] (truncated at order).
inline std::vector<std::vector<double>> poly_mul(const std::vector<std::vector<double>>& a,
                                                 const std::vector<std::vector<double>>& b, int order) {
  std::vector<std::vector<double>> c(static_cast<std::size_t>(order) + 1,
                                     std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0));
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j)
      for (int k = 0; k <= order; ++k)
        for (int l = 0; k + l <= order; ++l)
          if (i + k + j + l <= order) c[i + k][j + l] += a[i][j] * b[k][l];
  return c;
}

}  // namespace oracle
