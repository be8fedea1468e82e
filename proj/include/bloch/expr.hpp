#pragma once

#include <string_view>

namespace bloch {

/// Evaluates a closed-form arithmetic expression.
///
/// Grammar: numbers, + - * / ^ (right associative), parentheses, unary minus,
/// the constant `pi`, and the functions sqrt, asin, acos, atan, acsc, asec, acot.
/// Throws InvalidArgument on malformed input.
double evaluate_expression(std::string_view text);

}  // namespace bloch
