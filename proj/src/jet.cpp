#include "frontal/jet.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <string>

namespace frontal {

namespace {

std::atomic<double> g_zero_threshold{1e-10};

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

void check_base(const Jet2& a, const Jet2& b) {
  if (!(a.base() == b.base())) {
    throw NumericalError("jet base mismatch: (" + num(a.base().u) + ", " + num(a.base().v) +
                         ") vs (" + num(b.base().u) + ", " + num(b.base().v) + ")");
  }
}

double max_abs(const std::vector<double>& c) {
  double m = 0.0;
  for (double x : c) m = std::max(m, std::abs(x));
  return m;
}

// Constant term is "zero" relative to the jet's own coefficients.
bool tiny_constant(const Jet2& a) {
  return std::abs(a.value()) <= jet_zero_threshold() * max_abs(a.coeffs());
}

// ---- univariate series helpers (coefficients of g(x0 + s)) ----

using Series = std::vector<double>;

Series series_div(const Series& a, const Series& b) {
  Series q(a.size(), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    double s = a[k];
    for (std::size_t i = 1; i <= k; ++i) s -= b[i] * q[k - i];
    q[k] = s / b[0];
  }
  return q;
}

Series trig_series(double x0, int K, bool is_sin) {
  Series g(static_cast<std::size_t>(K) + 1);
  const double s = std::sin(x0), c = std::cos(x0);
  const double cyc_sin[4] = {s, c, -s, -c};
  const double cyc_cos[4] = {c, -s, -c, s};
  double fact = 1.0;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) fact *= k;
    g[static_cast<std::size_t>(k)] = (is_sin ? cyc_sin[k % 4] : cyc_cos[k % 4]) / fact;
  }
  return g;
}

Series hyp_series(double x0, int K, bool is_sinh) {
  Series g(static_cast<std::size_t>(K) + 1);
  const double s = std::sinh(x0), c = std::cosh(x0);
  double fact = 1.0;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) fact *= k;
    const bool odd = k % 2 == 1;
    g[static_cast<std::size_t>(k)] = (is_sinh ? (odd ? c : s) : (odd ? s : c)) / fact;
  }
  return g;
}

Series univariate(UnaryOp op, double x0, int K) {
  const auto n = static_cast<std::size_t>(K) + 1;
  Series g(n, 0.0);
  switch (op) {
    case UnaryOp::Exp: {
      double e = std::exp(x0), fact = 1.0;
      for (int k = 0; k <= K; ++k) {
        if (k > 0) fact *= k;
        g[static_cast<std::size_t>(k)] = e / fact;
      }
      return g;
    }
    case UnaryOp::Log: {
      g[0] = std::log(x0);
      double p = 1.0;
      for (int k = 1; k <= K; ++k) {
        p *= x0;
        g[static_cast<std::size_t>(k)] = ((k % 2 == 1) ? 1.0 : -1.0) / (k * p);
      }
      return g;
    }
    case UnaryOp::Sin: return trig_series(x0, K, true);
    case UnaryOp::Cos: return trig_series(x0, K, false);
    case UnaryOp::Sinh: return hyp_series(x0, K, true);
    case UnaryOp::Cosh: return hyp_series(x0, K, false);
    case UnaryOp::Tan: return series_div(trig_series(x0, K, true), trig_series(x0, K, false));
    case UnaryOp::Tanh: return series_div(hyp_series(x0, K, true), hyp_series(x0, K, false));
    case UnaryOp::Atan: {
      // atan' = 1/(1 + (x0+s)^2), then integrate
      Series one(n, 0.0), den(n, 0.0);
      one[0] = 1.0;
      den[0] = 1.0 + x0 * x0;
      if (n > 1) den[1] = 2.0 * x0;
      if (n > 2) den[2] = 1.0;
      Series d = series_div(one, den);
      g[0] = std::atan(x0);
      for (std::size_t k = 1; k < n; ++k) g[k] = d[k - 1] / static_cast<double>(k);
      return g;
    }
    default:
      break;
  }
  throw NumericalError("univariate series not available for " + std::string(unary_name(op)));
}

// Horner evaluation of sum g_k * nil^k where nil has zero constant term.
Jet2 compose_series(const Series& g, const Jet2& nil) {
  const int K = nil.order();
  Jet2 r(nil.base(), K, g[static_cast<std::size_t>(K)]);
  for (int k = K - 1; k >= 0; --k) {
    r = r * nil;
    r += g[static_cast<std::size_t>(k)];
  }
  return r;
}

Jet2 nilpotent_part(const Jet2& a) {
  Jet2 n = a;
  n.set_coeff(0, 0, 0.0);
  return n;
}

// sum_{i,j} c_ij du^i dv^j by nested Horner.
Jet2 substitute(const Jet2& a, const Jet2& du, const Jet2& dv, int order) {
  const int K = a.order();
  Jet2 r(du.base(), order, 0.0);
  for (int i = K; i >= 0; --i) {
    Jet2 p(du.base(), order, a.coeff(i, K - i));
    for (int j = K - i - 1; j >= 0; --j) {
      p = p * dv;
      p += a.coeff(i, j);
    }
    if (i == K) {
      r = p;
    } else {
      r = r * du;
      r += p;
    }
  }
  return r;
}

}  // namespace

double jet_zero_threshold() { return g_zero_threshold.load(); }
void set_jet_zero_threshold(double t) { g_zero_threshold.store(t); }

// ---------------------------------------------------------------------------

Jet2::Jet2(Point2 base, int order, double value) : base_(base), order_(order) {
  if (order < 0) throw NumericalError("jet order must be >= 0");
  c_.assign(size_for(order), 0.0);
  c_[0] = value;
}

Jet2 Jet2::lift(Var var, Point2 base, int order) {
  Jet2 r(base, order, var == Var::U ? base.u : base.v);
  if (order >= 1) r.set_coeff(var == Var::U ? 1 : 0, var == Var::U ? 0 : 1, 1.0);
  return r;
}

double Jet2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order_) {
    throw NumericalError("jet order exceeded: requested (" + std::to_string(i) + "," +
                         std::to_string(j) + ") of an order-" + std::to_string(order_) + " jet");
  }
  return c_[index(i, j)];
}

void Jet2::set_coeff(int i, int j, double x) {
  if (i < 0 || j < 0 || i + j > order_) throw NumericalError("jet order exceeded in set_coeff");
  c_[index(i, j)] = x;
}

double Jet2::partial(int i, int j) const {
  double f = coeff(i, j);
  for (int k = 2; k <= i; ++k) f *= k;
  for (int k = 2; k <= j; ++k) f *= k;
  return f;
}

Jet2 Jet2::truncated(int order) const {
  if (order >= order_) return *this;
  Jet2 r = *this;
  r.order_ = order;
  r.c_.resize(size_for(order));
  return r;
}

double Jet2::scale() const { return std::max(1.0, max_abs(c_)); }

double Jet2::eval_offset(double du, double dv) const {
  double r = 0.0;
  for (int i = order_; i >= 0; --i) {
    double p = 0.0;
    for (int j = order_ - i; j >= 0; --j) p = p * dv + c_[index(i, j)];
    r = r * du + p;
  }
  return r;
}

Jet2 Jet2::operator-() const {
  Jet2 r = *this;
  for (double& x : r.c_) x = -x;
  return r;
}

Jet2& Jet2::operator+=(const Jet2& b) {
  check_base(*this, b);
  if (b.order_ < order_) *this = truncated(b.order_);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += b.c_[k];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& b) {
  check_base(*this, b);
  if (b.order_ < order_) *this = truncated(b.order_);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= b.c_[k];
  return *this;
}

Jet2& Jet2::operator*=(const Jet2& b) { return *this = mul(*this, b); }
Jet2& Jet2::operator/=(const Jet2& b) { return *this = div(*this, b); }

Jet2& Jet2::operator*=(double b) {
  for (double& x : c_) x *= b;
  return *this;
}

Jet2& Jet2::operator/=(double b) {
  if (b == 0.0) throw DomainError("division by zero scalar");
  for (double& x : c_) x /= b;
  return *this;
}

Jet2 mul(const Jet2& a, const Jet2& b) {
  check_base(a, b);
  const int K = std::min(a.order_, b.order_);
  Jet2 r(a.base_, K, 0.0);
  const double* ac = a.c_.data();
  const double* bc = b.c_.data();
  double* rc = r.c_.data();
  for (int d1 = 0; d1 <= K; ++d1) {
    for (int j1 = 0; j1 <= d1; ++j1) {
      const double x = ac[Jet2::index(d1 - j1, j1)];
      if (x == 0.0) continue;
      for (int d2 = 0; d2 <= K - d1; ++d2) {
        const std::size_t row = static_cast<std::size_t>(d1 + d2) * (d1 + d2 + 1) / 2 + j1;
        const std::size_t brow = static_cast<std::size_t>(d2) * (d2 + 1) / 2;
        for (int j2 = 0; j2 <= d2; ++j2) rc[row + j2] += x * bc[brow + j2];
      }
    }
  }
  return r;
}

Jet2 div(const Jet2& a, const Jet2& b) {
  check_base(a, b);
  if (tiny_constant(b)) {
    throw DomainError("division by (numerically) zero constant term, |b00| = " +
                      num(std::abs(b.value())));
  }
  const int K = std::min(a.order_, b.order_);
  Jet2 q(a.base_, K, 0.0);
  const double b0 = b.c_[0];
  for (int d = 0; d <= K; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      double s = a.c_[Jet2::index(i, j)];
      for (int k = 0; k <= i; ++k) {
        for (int l = 0; l <= j; ++l) {
          if (k == 0 && l == 0) continue;
          s -= b.c_[Jet2::index(k, l)] * q.c_[Jet2::index(i - k, j - l)];
        }
      }
      q.c_[Jet2::index(i, j)] = s / b0;
    }
  }
  return q;
}

Jet2 operator/(double a, const Jet2& b) { return div(Jet2(b.base(), b.order(), a), b); }

Jet2 sqrt(const Jet2& a) {
  if (a.value() <= 0.0 || tiny_constant(a)) {
    throw DomainError("sqrt of non-positive constant term " + num(a.value()));
  }
  const int K = a.order_;
  Jet2 s(a.base_, K, std::sqrt(a.value()));
  const double two_s0 = 2.0 * s.c_[0];
  for (int d = 1; d <= K; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      double acc = a.c_[Jet2::index(i, j)];
      for (int k = 0; k <= i; ++k) {
        for (int l = 0; l <= j; ++l) {
          if ((k == 0 && l == 0) || (k == i && l == j)) continue;
          acc -= s.c_[Jet2::index(k, l)] * s.c_[Jet2::index(i - k, j - l)];
        }
      }
      s.c_[Jet2::index(i, j)] = acc / two_s0;
    }
  }
  return s;
}

Jet2 apply_analytic(UnaryOp op, const Jet2& a) {
  switch (op) {
    case UnaryOp::Neg: return -a;
    case UnaryOp::Sqrt: return sqrt(a);
    case UnaryOp::Log:
      if (a.value() <= 0.0 || tiny_constant(a)) {
        throw DomainError("log of non-positive constant term " + num(a.value()));
      }
      break;
    default:
      break;
  }
  return compose_series(univariate(op, a.value(), a.order()), nilpotent_part(a));
}

Jet2 exp(const Jet2& a) { return apply_analytic(UnaryOp::Exp, a); }
Jet2 log(const Jet2& a) { return apply_analytic(UnaryOp::Log, a); }
Jet2 sin(const Jet2& a) { return apply_analytic(UnaryOp::Sin, a); }
Jet2 cos(const Jet2& a) { return apply_analytic(UnaryOp::Cos, a); }
Jet2 tan(const Jet2& a) { return apply_analytic(UnaryOp::Tan, a); }
Jet2 sinh(const Jet2& a) { return apply_analytic(UnaryOp::Sinh, a); }
Jet2 cosh(const Jet2& a) { return apply_analytic(UnaryOp::Cosh, a); }
Jet2 tanh(const Jet2& a) { return apply_analytic(UnaryOp::Tanh, a); }
Jet2 atan(const Jet2& a) { return apply_analytic(UnaryOp::Atan, a); }

Jet2 intpow(const Jet2& a, int n) {
  if (n < 0) return 1.0 / intpow(a, -n);
  Jet2 r(a.base(), a.order(), 1.0);
  Jet2 p = a;
  while (n > 0) {
    if (n & 1) r = r * p;
    n >>= 1;
    if (n > 0) p = p * p;
  }
  return r;
}

Jet2 d_u(const Jet2& a) {
  if (a.order() < 1) throw NumericalError("d_u of an order-0 jet");
  Jet2 r(a.base(), a.order() - 1, 0.0);
  for (int d = 0; d <= r.order(); ++d)
    for (int j = 0; j <= d; ++j) r.set_coeff(d - j, j, (d - j + 1) * a.coeff(d - j + 1, j));
  return r;
}

Jet2 d_v(const Jet2& a) {
  if (a.order() < 1) throw NumericalError("d_v of an order-0 jet");
  Jet2 r(a.base(), a.order() - 1, 0.0);
  for (int d = 0; d <= r.order(); ++d)
    for (int j = 0; j <= d; ++j) r.set_coeff(d - j, j, (j + 1) * a.coeff(d - j, j + 1));
  return r;
}

Jet2 deflate_v(const Jet2& a, int k, double tol) {
  if (a.base().v != 0.0) throw NumericalError("deflate_v needs a jet based on v = 0");
  if (k < 0 || k > a.order()) throw NumericalError("deflate_v: k exceeds the jet order");
  const double bound = tol * a.scale();
  double worst = 0.0;
  for (int i = 0; i <= a.order(); ++i)
    for (int j = 0; j < k && i + j <= a.order(); ++j) worst = std::max(worst, std::abs(a.coeff(i, j)));
  if (worst >= bound) {
    throw DeflationError("not divisible by v^" + std::to_string(k) +
                             ": largest offending coefficient " + num(worst),
                         worst);
  }
  Jet2 r(a.base(), a.order() - k, 0.0);
  for (int d = 0; d <= r.order(); ++d)
    for (int j = 0; j <= d; ++j) r.set_coeff(d - j, j, a.coeff(d - j, j + k));
  return r;
}

Jet2 compose(const Jet2& a, const Jet2& subs_u, const Jet2& subs_v) {
  check_base(subs_u, subs_v);
  auto near = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); };
  if (!near(subs_u.value(), a.base().u) || !near(subs_v.value(), a.base().v)) {
    throw NumericalError("compose: substitution constant terms (" + num(subs_u.value()) + ", " +
                         num(subs_v.value()) + ") do not match the jet base (" +
                         num(a.base().u) + ", " + num(a.base().v) + ")");
  }
  const int K = std::min({a.order(), subs_u.order(), subs_v.order()});
  return substitute(a, nilpotent_part(subs_u).truncated(K), nilpotent_part(subs_v).truncated(K), K);
}

Jet2 reexpand(const Jet2& a, Point2 new_base, int order) {
  const int K = std::min(order, a.order());
  Jet2 du = Jet2::lift(Var::U, new_base, K) - a.base().u;
  Jet2 dv = Jet2::lift(Var::V, new_base, K) - a.base().v;
  return substitute(a, du, dv, K);
}

// ---------------------------------------------------------------------------

JetVec3::JetVec3(Jet2 x, Jet2 y, Jet2 z) {
  check_base(x, y);
  check_base(x, z);
  const int K = std::min({x.order(), y.order(), z.order()});
  c_ = {x.truncated(K), y.truncated(K), z.truncated(K)};
}

Eigen::Vector3d JetVec3::value() const { return {c_[0].value(), c_[1].value(), c_[2].value()}; }

Eigen::Vector3d JetVec3::partial(int i, int j) const {
  return {c_[0].partial(i, j), c_[1].partial(i, j), c_[2].partial(i, j)};
}

JetVec3 JetVec3::truncated(int order) const {
  return {c_[0].truncated(order), c_[1].truncated(order), c_[2].truncated(order)};
}

JetVec3 JetVec3::operator-() const { return {-c_[0], -c_[1], -c_[2]}; }

JetVec3& JetVec3::operator+=(const JetVec3& b) {
  for (int i = 0; i < 3; ++i) (*this)[i] += b[i];
  return *this;
}

JetVec3& JetVec3::operator-=(const JetVec3& b) {
  for (int i = 0; i < 3; ++i) (*this)[i] -= b[i];
  return *this;
}

JetVec3 operator*(const Jet2& s, const JetVec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
JetVec3 operator*(double s, const JetVec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
JetVec3 operator/(const JetVec3& a, const Jet2& s) { return {a[0] / s, a[1] / s, a[2] / s}; }

JetVec3 constant_vec(const Eigen::Vector3d& x, Point2 base, int order) {
  return {Jet2(base, order, x[0]), Jet2(base, order, x[1]), Jet2(base, order, x[2])};
}

Jet2 dot(const JetVec3& a, const JetVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

JetVec3 cross(const JetVec3& a, const JetVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Jet2 det3(const JetVec3& a, const JetVec3& b, const JetVec3& c) { return dot(a, cross(b, c)); }

Jet2 norm(const JetVec3& a) { return sqrt(dot(a, a)); }

JetVec3 normalized(const JetVec3& a) { return a / norm(a); }

JetVec3 d_u(const JetVec3& a) { return {d_u(a[0]), d_u(a[1]), d_u(a[2])}; }
JetVec3 d_v(const JetVec3& a) { return {d_v(a[0]), d_v(a[1]), d_v(a[2])}; }

JetVec3 deflate_v(const JetVec3& a, int k, double tol) {
  // One scale for the whole vector, so a small component is judged
  // against the others.
  double s = 1.0;
  for (int i = 0; i < 3; ++i) s = std::max(s, a[i].scale());
  JetVec3 r;
  for (int i = 0; i < 3; ++i) r[i] = deflate_v(a[i], k, tol * s / a[i].scale());
  return r;
}

JetVec3 compose(const JetVec3& a, const Jet2& su, const Jet2& sv) {
  return {compose(a[0], su, sv), compose(a[1], su, sv), compose(a[2], su, sv)};
}

JetVec3 reexpand(const JetVec3& a, Point2 nb, int order) {
  return {reexpand(a[0], nb, order), reexpand(a[1], nb, order), reexpand(a[2], nb, order)};
}

}  // namespace frontal
