#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mdcutfem/error.hpp"
#include "mdcutfem/expr.hpp"

using mdcutfem::Expr;
using mdcutfem::ParseError;

TEST_SUITE("expr") {

TEST_CASE("arithmetic and precedence") {
  CHECK(Expr::parse("1+2*3")(0, 0) == 7);
  CHECK(Expr::parse("(1+2)*3")(0, 0) == 9);
  CHECK(Expr::parse("8/4/2")(0, 0) == 1);
  CHECK(Expr::parse("2-3-4")(0, 0) == -5);
  // unary minus binds looser than ^, and ^ associates to the left
  CHECK(Expr::parse("-x^2")(3, 0) == -9);
  CHECK(Expr::parse("2^3^2")(0, 0) == 64);
  CHECK(Expr::parse("2^-1")(0, 0) == 0.5);
  CHECK(Expr::parse("1e-5*2")(0, 0) == doctest::Approx(2e-5));
}

TEST_CASE("variables and functions") {
  CHECK(Expr::parse("x*y")(2, 3) == 6);
  CHECK(Expr::parse("r")(3, 4) == doctest::Approx(5));
  CHECK(Expr::parse("theta")(0, 1) == doctest::Approx(std::numbers::pi / 2));
  CHECK(Expr::parse("theta")(-1, -1e-300) == doctest::Approx(-std::numbers::pi));
  CHECK(Expr::parse("exp(1)")(0, 0) == doctest::Approx(std::exp(1.0)));
  CHECK(Expr::parse("sin(pi/2)+cos(0)+sqrt(4)+abs(-3)")(0, 0) == doctest::Approx(1 + 1 + 2 + 3));
  CHECK(Expr::parse("2*exp(y)")(0.3, 0) == 2);
}

TEST_CASE("printing round trip") {
  for (const char* s : {"-x^2+3*y", "r^(5/3)*sin(2*theta)", "exp(-(x-0.5)+y)", "1/3", "2^3^2", "-(-x)"}) {
    const Expr a = Expr::parse(s);
    const Expr b = Expr::parse(a.str());
    for (double x : {-0.7, 0.1, 0.9})
      for (double y : {-0.3, 0.25, 1.1}) CHECK(a(x, y) == b(x, y));
  }
  CHECK(Expr::constant(0.1).str() == Expr::parse(Expr::constant(0.1).str()).str());
  CHECK(Expr::parse("2*3").is_constant());
  CHECK_FALSE(Expr::parse("2*x").is_constant());
}

TEST_CASE("parse errors carry the position") {
  auto position = [](const char* s) -> std::size_t {
    try {
      Expr::parse(s);
    } catch (const ParseError& e) {
      return e.position();
    }
    return 999;
  };
  CHECK(position("exp(x") == 5);
  CHECK(position("1+*2") == 2);
  CHECK(position("foo(1)") == 0);
  CHECK(position("x y") == 2);
  CHECK_THROWS_AS(Expr::parse(""), ParseError);
}

}
