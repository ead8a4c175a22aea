#pragma once

#include <string_view>

namespace frontal {

enum class UnaryOp { Neg, Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Atan };
enum class BinaryOp { Add, Sub, Mul, Div };

std::string_view unary_name(UnaryOp op);

// Plain floating-point versions with the same domain rules as the jets.
double apply_analytic(UnaryOp op, double x);
double intpow(double x, int n);
double divide(double x, double y);

}  // namespace frontal
