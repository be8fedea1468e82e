#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bloch/error.hpp"
#include "bloch/expr.hpp"

using namespace bloch;

TEST_SUITE("expr") {

TEST_CASE("arithmetic and precedence") {
  CHECK(evaluate_expression("1+2*3") == 7.0);
  CHECK(evaluate_expression("(1+2)*3") == 9.0);
  CHECK(evaluate_expression("2^3^2") == 512.0);
  CHECK(evaluate_expression("-2^2") == -4.0);
  CHECK(evaluate_expression("2^-1") == 0.5);
  CHECK(evaluate_expression("8/4/2") == 1.0);
  CHECK(evaluate_expression(" 1.5e1 - .5 ") == 14.5);
  CHECK(evaluate_expression("-(4)/(135)*(3)") == doctest::Approx(-4.0 / 45));
}

TEST_CASE("constants and functions") {
  const double pi = std::numbers::pi;
  CHECK(evaluate_expression("pi") == pi);
  CHECK(evaluate_expression("sqrt(2)") == std::sqrt(2.0));
  CHECK(evaluate_expression("asin(1)") == doctest::Approx(pi / 2));
  CHECK(evaluate_expression("acos(0)") == doctest::Approx(pi / 2));
  CHECK(evaluate_expression("atan(1)") == doctest::Approx(pi / 4));
  CHECK(evaluate_expression("acsc(sqrt(6))") == doctest::Approx(std::asin(1 / std::sqrt(6.0))));
  CHECK(evaluate_expression("asec(2)") == doctest::Approx(pi / 3));
  CHECK(evaluate_expression("acot(1)") == doctest::Approx(pi / 4));
  CHECK(evaluate_expression("(26*sqrt(2)+27*atan(2*sqrt(2)))/(27*pi)") == doctest::Approx(0.825312).epsilon(1e-6));
}

TEST_CASE("malformed input") {
  for (const char* bad : {"", "1+", "(1", "1)", "foo(1)", "sqrt 2", "1..2", "pi pi", "2**3", "sin(1)"})
    CHECK_THROWS_AS(evaluate_expression(bad), InvalidArgument);
}

}
