#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "hcert/errors.hpp"
#include "hcert/expression.hpp"

using namespace hcert;

TEST_CASE("precedence and associativity") {
  auto e = [](const char* s) { return Expression::compile(s, {})({}); };
  CHECK(e("1 + 2*3") == 7.0);
  CHECK(e("2^3^2") == 512.0);
  CHECK(e("-2^2") == -4.0);
  CHECK(e("(1 + 2)*3") == 9.0);
  CHECK(e("1/4 + 3/4") == 1.0);
  CHECK(e("2 < 3") == 1.0);
  CHECK(e("if(2 >= 3, 1, 5)") == 5.0);
  CHECK(e("max(1, 7, 3) + min(4, -2)") == 5.0);
  CHECK(e("pi") == doctest::Approx(M_PI));
  CHECK(std::isinf(e("inf")));
  CHECK(e("1e-3*1e3") == doctest::Approx(1.0));
}

TEST_CASE("variables and functions") {
  Expression f = Expression::compile("t*u^2 + (t*(1-t) + 1/4)*v", {"t", "u", "v"});
  CHECK(f({0.5, 2.0, 3.0}) == doctest::Approx(0.5 * 4 + 0.5 * 3));
  CHECK(f.uses("v"));
  Expression g = Expression::compile("exp(s) + cosh(s) - sqrt(abs(s)) + atan(s) + log(2)", {"s"});
  double s = -0.7;
  CHECK(g({s}) == doctest::Approx(std::exp(s) + std::cosh(s) - std::sqrt(0.7) + std::atan(s) + std::log(2.0)));
  CHECK_FALSE(g.uses("t"));
}

TEST_CASE("parse errors carry the column") {
  for (const char* bad : {"1 +", "foo(1)", "t*", "(1", "x + 1", "1 2", "max()"}) {
    INFO(bad);
    try {
      Expression::compile(bad, {"t"});
      FAIL("expected ExpressionError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ExpressionError);
      CHECK(std::string(e.what()).find("column") != std::string::npos);
    }
  }
}
