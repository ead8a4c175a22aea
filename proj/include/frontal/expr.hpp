#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "frontal/errors.hpp"
#include "frontal/ops.hpp"

namespace frontal {

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Constant, Variable, Unary, Binary, IntPow };
  Kind kind = Kind::Constant;
  double value = 0.0;   // Constant
  std::string name;     // Constant: "pi", "e" or empty for literals; Variable: "u", "v", "w"
  UnaryOp uop = UnaryOp::Neg;
  BinaryOp bop = BinaryOp::Add;
  int exponent = 0;     // IntPow
  Expr a, b;
};

Expr make_constant(double x, std::string name = {});
Expr make_variable(std::string name);
Expr make_unary(UnaryOp op, Expr a);
Expr make_binary(BinaryOp op, Expr a, Expr b);
Expr make_intpow(Expr a, int n);

// Grammar (lowest to highest): + - , * / , unary minus , ^ (right assoc).
// Throws InputError carrying the byte offset.
Expr parse_expression(std::string_view text,
                      const std::vector<std::string>& variables = {"u", "v"});

std::string print_expression(const Expr& e);

// Replace variables by expressions (used to precompose charts).
Expr substitute(const Expr& e, const std::map<std::string, Expr>& subs);

template <class T>
struct Bindings {
  const T* u = nullptr;
  const T* v = nullptr;
  const T* w = nullptr;
};

inline double constant_like(const double&, double c) { return c; }

namespace detail {
[[noreturn]] void rethrow_located(const DomainError& e, const ExprNode& n);
[[noreturn]] void unbound_variable(const std::string& name);
}  // namespace detail

template <class T>
T eval_expression(const Expr& e, const Bindings<T>& b) {
  const ExprNode& n = *e;
  try {
    switch (n.kind) {
      case ExprNode::Kind::Constant: {
        const T* proto = b.u ? b.u : (b.v ? b.v : b.w);
        if (!proto) return constant_like(T{}, n.value);
        return constant_like(*proto, n.value);
      }
      case ExprNode::Kind::Variable: {
        const T* p = n.name == "u" ? b.u : n.name == "v" ? b.v : b.w;
        if (!p) detail::unbound_variable(n.name);
        return *p;
      }
      case ExprNode::Kind::Unary:
        return apply_analytic(n.uop, eval_expression(n.a, b));
      case ExprNode::Kind::IntPow:
        return intpow(eval_expression(n.a, b), n.exponent);
      case ExprNode::Kind::Binary: {
        T x = eval_expression(n.a, b);
        T y = eval_expression(n.b, b);
        switch (n.bop) {
          case BinaryOp::Add: return x + y;
          case BinaryOp::Sub: return x - y;
          case BinaryOp::Mul: return x * y;
          case BinaryOp::Div: return divide(x, y);
        }
      }
    }
  } catch (const DomainError& err) {
    if (err.located()) throw;
    detail::rethrow_located(err, n);
  }
  throw Error("corrupt expression node");
}

double eval_real(const Expr& e, double u, double v, double w = 0.0);

}  // namespace frontal
