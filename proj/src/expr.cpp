#include "frontal/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace frontal {

// ---- scalar ops -----------------------------------------------------------

std::string_view unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "neg";
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
    case UnaryOp::Tan: return "tan";
    case UnaryOp::Sinh: return "sinh";
    case UnaryOp::Cosh: return "cosh";
    case UnaryOp::Tanh: return "tanh";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Log: return "log";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::Atan: return "atan";
  }
  return "?";
}

double apply_analytic(UnaryOp op, double x) {
  switch (op) {
    case UnaryOp::Neg: return -x;
    case UnaryOp::Sin: return std::sin(x);
    case UnaryOp::Cos: return std::cos(x);
    case UnaryOp::Tan: return std::tan(x);
    case UnaryOp::Sinh: return std::sinh(x);
    case UnaryOp::Cosh: return std::cosh(x);
    case UnaryOp::Tanh: return std::tanh(x);
    case UnaryOp::Exp: return std::exp(x);
    case UnaryOp::Atan: return std::atan(x);
    case UnaryOp::Log:
      if (!(x > 0.0)) throw DomainError("log of non-positive value " + std::to_string(x));
      return std::log(x);
    case UnaryOp::Sqrt:
      if (!(x > 0.0)) throw DomainError("sqrt of non-positive value " + std::to_string(x));
      return std::sqrt(x);
  }
  return x;
}

double intpow(double x, int n) {
  if (n < 0) return divide(1.0, intpow(x, -n));
  double r = 1.0, p = x;
  while (n > 0) {
    if (n & 1) r *= p;
    n >>= 1;
    if (n > 0) p *= p;
  }
  return r;
}

double divide(double x, double y) {
  if (y == 0.0) throw DomainError("division by zero");
  return x / y;
}

// ---- node constructors ----------------------------------------------------

Expr make_constant(double x, std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Constant;
  n->value = x;
  n->name = std::move(name);
  return n;
}

Expr make_variable(std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Variable;
  n->name = std::move(name);
  return n;
}

Expr make_unary(UnaryOp op, Expr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Unary;
  n->uop = op;
  n->a = std::move(a);
  return n;
}

Expr make_binary(BinaryOp op, Expr a, Expr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Binary;
  n->bop = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Expr make_intpow(Expr a, int e) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::IntPow;
  n->exponent = e;
  n->a = std::move(a);
  return n;
}

namespace detail {

void rethrow_located(const DomainError& e, const ExprNode& n) {
  auto self = std::shared_ptr<const ExprNode>(std::shared_ptr<const ExprNode>{}, &n);
  throw DomainError(std::string(e.what()) + " in '" + print_expression(self) + "'", true);
}

void unbound_variable(const std::string& name) {
  throw InputError("variable '" + name + "' is not bound");
}

}  // namespace detail

double eval_real(const Expr& e, double u, double v, double w) {
  Bindings<double> b{&u, &v, &w};
  return eval_expression(e, b);
}

// ---- parser ---------------------------------------------------------------

namespace {

struct Parser {
  std::string_view s;
  const std::vector<std::string>& vars;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw InputError("syntax error at offset " + std::to_string(at) + ": " + msg);
  }

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r')) ++pos;
  }

  bool accept(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  Expr parse_all() {
    Expr e = expr();
    skip_ws();
    if (pos != s.size()) fail(std::string("unexpected '") + s[pos] + "'", pos);
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(BinaryOp::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make_binary(BinaryOp::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(BinaryOp::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make_binary(BinaryOp::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return make_unary(UnaryOp::Neg, unary());
    return power();
  }

  static bool integral_literal(const Expr& e, int& n) {
    if (e->kind == ExprNode::Kind::Constant && e->name.empty() && e->value == std::floor(e->value) &&
        std::abs(e->value) <= 1e6) {
      n = static_cast<int>(e->value);
      return true;
    }
    if (e->kind == ExprNode::Kind::Unary && e->uop == UnaryOp::Neg && integral_literal(e->a, n)) {
      n = -n;
      return true;
    }
    return false;
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) {
      Expr ex = unary();
      int n = 0;
      if (integral_literal(ex, n)) return make_intpow(base, n);
      return make_unary(UnaryOp::Exp, make_binary(BinaryOp::Mul, ex, make_unary(UnaryOp::Log, base)));
    }
    return base;
  }

  Expr primary() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input", pos);
    const char c = s[pos];
    if (c == '(') {
      ++pos;
      Expr e = expr();
      if (!accept(')')) fail("expected ')'", pos);
      return e;
    }
    if ((c >= '0' && c <= '9') || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected '") + c + "'", pos);
  }

  Expr number() {
    const std::size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) ++pos;
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
      std::size_t q = pos + 1;
      if (q < s.size() && (s[q] == '+' || s[q] == '-')) ++q;
      if (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) {
        pos = q;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      }
    }
    double x = 0.0;
    auto [p, ec] = std::from_chars(s.data() + start, s.data() + pos, x);
    if (ec != std::errc() || p != s.data() + pos) fail("malformed number", start);
    return make_constant(x);
  }

  Expr identifier() {
    const std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    const std::string id(s.substr(start, pos - start));
    static const std::pair<const char*, UnaryOp> fns[] = {
        {"sin", UnaryOp::Sin},   {"cos", UnaryOp::Cos},   {"tan", UnaryOp::Tan},
        {"sinh", UnaryOp::Sinh}, {"cosh", UnaryOp::Cosh}, {"tanh", UnaryOp::Tanh},
        {"exp", UnaryOp::Exp},   {"log", UnaryOp::Log},   {"sqrt", UnaryOp::Sqrt},
        {"atan", UnaryOp::Atan}};
    for (const auto& [name, op] : fns) {
      if (id == name) {
        if (!accept('(')) fail("function '" + id + "' needs parentheses", pos);
        Expr arg = expr();
        if (!accept(')')) fail("expected ')'", pos);
        return make_unary(op, arg);
      }
    }
    if (id == "pi") return make_constant(std::numbers::pi, "pi");
    if (id == "e") return make_constant(std::numbers::e, "e");
    if (std::find(vars.begin(), vars.end(), id) != vars.end()) return make_variable(id);
    throw InputError("unknown identifier " + id + " at offset " + std::to_string(start));
  }
};

// ---- printer --------------------------------------------------------------

int precedence(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Kind::Constant: return n.value < 0 ? 3 : 5;
    case ExprNode::Kind::Variable: return 5;
    case ExprNode::Kind::Unary: return n.uop == UnaryOp::Neg ? 3 : 5;
    case ExprNode::Kind::IntPow: return 4;
    case ExprNode::Kind::Binary:
      return (n.bop == BinaryOp::Add || n.bop == BinaryOp::Sub) ? 1 : 2;
  }
  return 0;
}

std::string number_text(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

void print_into(const ExprNode& n, int min_prec, std::string& out) {
  const bool paren = precedence(n) < min_prec;
  if (paren) out += '(';
  switch (n.kind) {
    case ExprNode::Kind::Constant:
      if (!n.name.empty()) {
        out += n.name;
      } else if (n.value < 0) {
        out += '-';
        out += number_text(-n.value);
      } else {
        out += number_text(n.value);
      }
      break;
    case ExprNode::Kind::Variable:
      out += n.name;
      break;
    case ExprNode::Kind::Unary:
      if (n.uop == UnaryOp::Neg) {
        out += '-';
        print_into(*n.a, 3, out);
      } else {
        out += unary_name(n.uop);
        out += '(';
        print_into(*n.a, 0, out);
        out += ')';
      }
      break;
    case ExprNode::Kind::IntPow:
      print_into(*n.a, 5, out);
      out += '^';
      out += std::to_string(n.exponent);
      break;
    case ExprNode::Kind::Binary: {
      const int p = precedence(n);
      print_into(*n.a, p, out);
      switch (n.bop) {
        case BinaryOp::Add: out += " + "; break;
        case BinaryOp::Sub: out += " - "; break;
        case BinaryOp::Mul: out += '*'; break;
        case BinaryOp::Div: out += '/'; break;
      }
      print_into(*n.b, p + 1, out);
      break;
    }
  }
  if (paren) out += ')';
}

}  // namespace

Expr parse_expression(std::string_view text, const std::vector<std::string>& variables) {
  Parser p{text, variables};
  return p.parse_all();
}

std::string print_expression(const Expr& e) {
  std::string out;
  print_into(*e, 0, out);
  return out;
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& subs) {
  switch (e->kind) {
    case ExprNode::Kind::Constant: return e;
    case ExprNode::Kind::Variable: {
      auto it = subs.find(e->name);
      return it == subs.end() ? e : it->second;
    }
    case ExprNode::Kind::Unary: return make_unary(e->uop, substitute(e->a, subs));
    case ExprNode::Kind::IntPow: return make_intpow(substitute(e->a, subs), e->exponent);
    case ExprNode::Kind::Binary:
      return make_binary(e->bop, substitute(e->a, subs), substitute(e->b, subs));
  }
  return e;
}

}  // namespace frontal
