#include <doctest.h>

#include <cmath>

#include "jsqd/expr.hpp"

using namespace jsqd;

TEST_CASE("expression grammar") {
  CHECK(Expression::parse("1 - log(100)/100").evaluate(5) == doctest::Approx(1 - std::log(100.0) / 100));
  CHECK(Expression::parse("sqrt(n)").evaluate(10000) == 100.0);
  CHECK(Expression::parse("log n").evaluate(std::exp(2.0)) == doctest::Approx(2.0));
  CHECK(Expression::parse("log n^2").evaluate(std::exp(3.0)) == doctest::Approx(9.0));
  CHECK(Expression::parse("2^3^2").evaluate(0) == 512.0);
  CHECK(Expression::parse("-2^2").evaluate(0) == -4.0);
  CHECK(Expression::parse("loglog n").evaluate(std::exp(std::exp(1.0))) == doctest::Approx(1.0));
  CHECK(Expression::parse("2 × n − 1").evaluate(3) == 5.0);
  CHECK_THROWS(Expression::parse("2 +"));
  CHECK_THROWS(Expression::parse("foo(n)"));
  CHECK_THROWS(Expression::parse("(n"));
}

TEST_CASE("parameter rules round and clamp d") {
  const auto r = ParameterRule::parse("2*n", "0.9");
  CHECK(r.at(5).d == 5);
  CHECK(ParameterRule::parse("0.2", "0.9").at(10).d == 1);
  CHECK(ParameterRule::parse("log(n)", "0.5").at(1000).d == 7);
  CHECK(ParameterRule::parse("n", "1 - 1/sqrt(n)").at(10000).lambda == doctest::Approx(0.99));
}
