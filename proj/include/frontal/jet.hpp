#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "frontal/errors.hpp"
#include "frontal/ops.hpp"

namespace frontal {

struct Point2 {
  double u = 0.0;
  double v = 0.0;
  bool operator==(const Point2&) const = default;
};

enum class Var { U, V };

// Global knob: relative size below which a constant term counts as zero
// for division, log and sqrt.
double jet_zero_threshold();
void set_jet_zero_threshold(double t);

// Truncated bivariate Taylor jet. Coefficients are stored by total degree,
// so truncation to a lower order is a prefix of the storage.
class Jet2 {
 public:
  Jet2() : c_(1, 0.0) {}
  Jet2(Point2 base, int order, double value = 0.0);

  static Jet2 lift(Var var, Point2 base, int order);

  static std::size_t size_for(int order) {
    return static_cast<std::size_t>(order + 1) * (order + 2) / 2;
  }
  static std::size_t index(int i, int j) {
    const int d = i + j;
    return static_cast<std::size_t>(d) * (d + 1) / 2 + j;
  }

  const Point2& base() const { return base_; }
  int order() const { return order_; }
  double value() const { return c_[0]; }
  const std::vector<double>& coeffs() const { return c_; }

  // c[i][j]; throws if i+j exceeds the order.
  double coeff(int i, int j) const;
  void set_coeff(int i, int j, double x);
  // i! j! c[i][j]
  double partial(int i, int j) const;

  Jet2 truncated(int order) const;
  // max(1, max |c|)
  double scale() const;
  // Value of the truncated polynomial at base + (du, dv).
  double eval_offset(double du, double dv) const;

  Jet2 operator-() const;
  Jet2& operator+=(const Jet2& b);
  Jet2& operator-=(const Jet2& b);
  Jet2& operator*=(const Jet2& b);
  Jet2& operator/=(const Jet2& b);
  Jet2& operator+=(double b) { c_[0] += b; return *this; }
  Jet2& operator-=(double b) { c_[0] -= b; return *this; }
  Jet2& operator*=(double b);
  Jet2& operator/=(double b);

 private:
  friend Jet2 mul(const Jet2&, const Jet2&);
  friend Jet2 div(const Jet2&, const Jet2&);
  friend Jet2 sqrt(const Jet2&);

  Point2 base_;
  int order_ = 0;
  std::vector<double> c_;
};

Jet2 mul(const Jet2& a, const Jet2& b);
Jet2 div(const Jet2& a, const Jet2& b);

inline Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
inline Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
inline Jet2 operator*(const Jet2& a, const Jet2& b) { return mul(a, b); }
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return div(a, b); }
inline Jet2 operator+(Jet2 a, double b) { return a += b; }
inline Jet2 operator+(double a, Jet2 b) { return b += a; }
inline Jet2 operator-(Jet2 a, double b) { return a -= b; }
inline Jet2 operator-(double a, const Jet2& b) { return (-b) += a; }
inline Jet2 operator*(Jet2 a, double b) { return a *= b; }
inline Jet2 operator*(double a, Jet2 b) { return b *= a; }
inline Jet2 operator/(Jet2 a, double b) { return a /= b; }
Jet2 operator/(double a, const Jet2& b);

Jet2 sqrt(const Jet2& a);
Jet2 exp(const Jet2& a);
Jet2 log(const Jet2& a);
Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 tan(const Jet2& a);
Jet2 sinh(const Jet2& a);
Jet2 cosh(const Jet2& a);
Jet2 tanh(const Jet2& a);
Jet2 atan(const Jet2& a);
Jet2 apply_analytic(UnaryOp op, const Jet2& a);
Jet2 intpow(const Jet2& a, int n);
inline Jet2 divide(const Jet2& a, const Jet2& b) { return div(a, b); }
inline Jet2 constant_like(const Jet2& proto, double c) { return Jet2(proto.base(), proto.order(), c); }

// Partial-derivative jets; order drops by one.
Jet2 d_u(const Jet2& a);
Jet2 d_v(const Jet2& a);

// a / v^k for a jet based on the axis v0 = 0.
Jet2 deflate_v(const Jet2& a, int k, double tol);

// a(subs_u, subs_v) as a jet at the substitution base. Constant terms of
// the substitutions must equal a's base point.
Jet2 compose(const Jet2& a, const Jet2& subs_u, const Jet2& subs_v);

// Re-expand the truncated polynomial a about a new base point.
Jet2 reexpand(const Jet2& a, Point2 new_base, int order);

// ---------------------------------------------------------------------------

class JetVec3 {
 public:
  JetVec3() = default;
  JetVec3(Jet2 x, Jet2 y, Jet2 z);

  const Jet2& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  Jet2& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  int order() const { return c_[0].order(); }
  const Point2& base() const { return c_[0].base(); }
  Eigen::Vector3d value() const;
  // i! j! c[i][j] of each component
  Eigen::Vector3d partial(int i, int j) const;
  JetVec3 truncated(int order) const;

  JetVec3 operator-() const;
  JetVec3& operator+=(const JetVec3& b);
  JetVec3& operator-=(const JetVec3& b);

 private:
  std::array<Jet2, 3> c_;
};

inline JetVec3 operator+(JetVec3 a, const JetVec3& b) { return a += b; }
inline JetVec3 operator-(JetVec3 a, const JetVec3& b) { return a -= b; }
JetVec3 operator*(const Jet2& s, const JetVec3& a);
JetVec3 operator*(double s, const JetVec3& a);
JetVec3 operator/(const JetVec3& a, const Jet2& s);
JetVec3 constant_vec(const Eigen::Vector3d& x, Point2 base, int order);

Jet2 dot(const JetVec3& a, const JetVec3& b);
JetVec3 cross(const JetVec3& a, const JetVec3& b);
Jet2 det3(const JetVec3& a, const JetVec3& b, const JetVec3& c);
Jet2 norm(const JetVec3& a);
JetVec3 normalized(const JetVec3& a);
JetVec3 d_u(const JetVec3& a);
JetVec3 d_v(const JetVec3& a);
JetVec3 deflate_v(const JetVec3& a, int k, double tol);
JetVec3 compose(const JetVec3& a, const Jet2& subs_u, const Jet2& subs_v);
JetVec3 reexpand(const JetVec3& a, Point2 new_base, int order);

}  // namespace frontal
