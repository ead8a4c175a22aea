#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "frontal/expr.hpp"
#include "frontal/surface.hpp"

using namespace frontal;

namespace {

// Random expression trees that stay finite on [-0.9, 0.9]^2.
Expr random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  switch (pick(rng)) {
    case 0: return make_variable("u");
    case 1: return make_variable("v");
    case 2: {
      const double x = std::round(val(rng) * 100) / 100;
      return make_constant(x);
    }
    case 3: return make_binary(BinaryOp::Add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return make_binary(BinaryOp::Sub, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5: return make_binary(BinaryOp::Mul, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 6: {
      // denominators bounded away from zero
      Expr den = make_binary(BinaryOp::Add, make_constant(2.0),
                             make_unary(UnaryOp::Sin, random_expr(rng, depth - 1)));
      return make_binary(BinaryOp::Div, random_expr(rng, depth - 1), den);
    }
    case 7: return make_unary(UnaryOp::Neg, random_expr(rng, depth - 1));
    case 8: {
      static const UnaryOp ops[] = {UnaryOp::Sin, UnaryOp::Cos, UnaryOp::Atan, UnaryOp::Tanh};
      return make_unary(ops[std::uniform_int_distribution<int>(0, 3)(rng)], random_expr(rng, depth - 1));
    }
    default: return make_intpow(random_expr(rng, depth - 1), std::uniform_int_distribution<int>(2, 4)(rng));
  }
}

int error_offset(const std::string& text) {
  try {
    parse_expression(text);
  } catch (const InputError& e) {
    const std::string msg = e.what();
    const auto at = msg.find("offset ");
    REQUIRE(at != std::string::npos);
    return std::stoi(msg.substr(at + 7));
  }
  FAIL("no error for '" << text << "'");
  return -1;
}

}  // namespace

TEST_CASE("print/parse round trip on random expressions") {
  std::mt19937 rng(12345);
  for (int n = 0; n < 1000; ++n) {
    const Expr e = random_expr(rng, 4);
    const std::string text = print_expression(e);
    const Expr back = parse_expression(text);
    CHECK(print_expression(back) == text);
    for (double u : {-0.7, 0.1, 0.6})
      for (double v : {-0.4, 0.3}) {
        const double a = eval_real(e, u, v), b = eval_real(back, u, v);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
      }
  }
}

TEST_CASE("precedence and associativity") {
  CHECK(eval_real(parse_expression("1 - 2 - 3"), 0, 0) == -4);
  CHECK(eval_real(parse_expression("2^3^2"), 0, 0) == doctest::Approx(512));
  CHECK(eval_real(parse_expression("-u^2"), 3, 0) == -9);
  CHECK(eval_real(parse_expression("8/4/2"), 0, 0) == 1);
  CHECK(eval_real(parse_expression("u*v^5/5"), 2, 1) == doctest::Approx(0.4));
  CHECK(eval_real(parse_expression("sin(pi/2) + e"), 0, 0) == doctest::Approx(1 + std::exp(1.0)));
}

TEST_CASE("syntax errors carry the byte offset") {
  CHECK(error_offset("u +") == 3);
  CHECK(error_offset("u * * v") == 4);
  CHECK(error_offset("(u + v") == 6);
  CHECK(error_offset("u + q") == 4);
  CHECK(error_offset("foo(u)") == 0);
  CHECK_THROWS_AS(parse_expression("u + w"), InputError);
  CHECK_NOTHROW(parse_expression("u + w", {"u", "v", "w"}));
}

TEST_CASE("domain errors name the failing subexpression") {
  const Expr e = parse_expression("u + log(v)");
  try {
    eval_real(e, 1.0, -1.0);
    FAIL("expected DomainError");
  } catch (const DomainError& err) {
    CHECK(std::string(err.what()).find("log(v)") != std::string::npos);
  }
  CHECK_THROWS_AS(eval_real(parse_expression("1/v"), 0, 0), DomainError);
}

TEST_CASE("substitution precomposes charts") {
  const Expr e = parse_expression("u*v^2 + v^5/5");
  const Expr s = substitute(e, {{"u", parse_expression("u + v")}, {"v", parse_expression("2*v")}});
  for (double u : {-0.3, 0.2})
    for (double v : {-0.1, 0.4}) CHECK(eval_real(s, u, v) == doctest::Approx(eval_real(e, u + v, 2 * v)));
}

TEST_CASE("surface file round trip and registry consistency") {
  for (const char* name : {"paper-52", "helicoid"}) {
    const SurfaceDef a = parse_surface_file(std::string(FRONTAL_DATA_DIR) + "/surfaces/" + name + ".surf");
    const SurfaceDef b = parse_surface_text(format_surface(a), "x");
    CHECK(b.name == a.name);
    CHECK(b.transverse == a.transverse);
    CHECK(b.singular_value == a.singular_value);
    CHECK(b.u_range.lo == a.u_range.lo);
    CHECK(b.v_range.hi == a.v_range.hi);
  }
  // paper-52 is stored in the builtin chart; the helicoid file uses u = e^w
  const SurfaceDef p52 = parse_surface_file(std::string(FRONTAL_DATA_DIR) + "/surfaces/paper-52.surf");
  const SurfaceDef hel = parse_surface_file(std::string(FRONTAL_DATA_DIR) + "/surfaces/helicoid.surf");
  for (double p : {-0.2, 0.3})
    for (double q : {-0.1, 0.05}) {
      CHECK((p52.point(p, q) - builtin("paper-52").point(p, q)).norm() < 1e-12);
      CHECK((hel.point(p, std::expm1(q)) - builtin("helicoid").point(p, q)).norm() < 1e-12);
    }
}

TEST_CASE("surface file errors") {
  const std::string ranges = "singular_value = 0.0\nu_range = [-0.5, 0.5]\nv_range = [-0.5, 0.5]\n";
  const std::string good = "x = \"u\"\ny = \"v^2\"\nz = \"v^3\"\ntransverse_param = \"v\"\n" + ranges;
  CHECK_NOTHROW(parse_surface_text(good, "t"));
  CHECK_THROWS_AS(parse_surface_text("x = \"u\"\ny = \"v\"\n", "t"), InputError);
  CHECK_THROWS_AS(parse_surface_text("x = \"u\"\ny = \"v^2\"\nz = \"u +\"\ntransverse_param = \"v\"\n" + ranges, "t"),
                  InputError);
  CHECK_THROWS_AS(parse_surface_text("x = \"u\"\ny = \"v^2\"\nz = \"v^3\"\ntransverse_param = \"q\"\n" + ranges, "t"),
                  InputError);
  CHECK_THROWS_AS(parse_surface_text(good + "colour = \"red\"\n", "t"), InputError);
  CHECK_THROWS_AS(parse_surface_text(
                      "x = \"u\"\ny = \"v^2\"\nz = \"v^3\"\ntransverse_param = \"v\"\nsingular_value = 0.0\n"
                      "u_range = [1, 0]\nv_range = [-0.5, 0.5]\n",
                      "t"),
                  InputError);
  CHECK_THROWS_AS(builtin("no-such-surface"), InputError);
  const SurfaceDef s = parse_surface_text("# comment\n" + good, "plain");
  CHECK(s.name == "plain");
  CHECK(s.transverse == Transverse::V);
}

TEST_CASE("chart maps are inverse to each other") {
  for (const std::string& name : builtin_names()) {
    const SurfaceDef s = builtin(name);
    const Point2 p{0.13, -0.07};
    const Point2 back = s.to_internal(s.to_user(p));
    CHECK(back.u == doctest::Approx(p.u));
    CHECK(back.v == doctest::Approx(p.v));
  }
}
