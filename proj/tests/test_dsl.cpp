#include "doctest.h"

#include "symflat/dsl.hpp"
#include "symflat/random.hpp"

using namespace symflat;

TEST_CASE("parse examples") {
  CHECK(parse_form("dx1/\\dy1 + dx2/\\dy2", 2) == Form::omega(2));
  Form lambda = Poly::coordinate(2, 0) * Form::dy(2, 1) + Poly::coordinate(2, 1) * Form::dy(2, 2);
  CHECK(parse_form("x1*dy1 + x2*dy2", 2) == lambda);
  Poly c = Rational(3, 2) * Poly::coordinate(2, 0) * Poly::coordinate(2, 0);
  CHECK(parse_form("(3/2*x1^2)*dx1/\\dx2", 2) == c * wedge(Form::dx(2, 1), Form::dx(2, 2)));
  CHECK(parse_form("3/2*x1^2*dx1/\\dx2", 2) == c * wedge(Form::dx(2, 1), Form::dx(2, 2)));
  CHECK(parse_form("-x2", 2) == Form::function(-Poly::coordinate(2, 1)));
  CHECK(parse_form("1", 1) == Form::constant(1, 1));
  CHECK(parse_form("(x1 + y1)^2", 1) ==
        Form::function(Poly::coordinate(1, 0) * Poly::coordinate(1, 0) + Rational(2) * Poly::coordinate(1, 0) * Poly::coordinate(1, 1) +
                       Poly::coordinate(1, 1) * Poly::coordinate(1, 1)));
  CHECK(parse_form("dy1/\\dx1", 1) == -Form::omega(1));
  CHECK(parse_form("4/6", 1) == Form::constant(1, Rational(2, 3)));
}

TEST_CASE("zero and expected degrees") {
  Form z = parse_form("0", 2, 2);
  CHECK(z.is_zero());
  CHECK(z.degree() == 2);
  CHECK(parse_form("x1*dx1 - x1*dx1", 2).degree() == 1);
  CHECK(parse_form("0 + dx1", 2) == Form::dx(2, 1));
  CHECK_THROWS_AS(parse_form("dx1", 2, 2), ParseError);
}

TEST_CASE("parse errors carry positions") {
  auto expect_error = [](const char* src, int n, int line, int column) {
    try {
      parse_form(src, n);
      FAIL("no error for ", src);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == column);
    }
  };
  expect_error("dx3", 2, 1, 1);
  expect_error("dx1 + x1", 2, 1, 5);
  expect_error("dx1 * dy1", 2, 1, 5);
  expect_error("x1 +\n  $", 2, 2, 3);
  expect_error("(x1", 2, 1, 4);
  expect_error("dx1^2", 2, 1, 4);
  expect_error("x1 x2", 2, 1, 4);
  expect_error("3/", 2, 1, 3);
  expect_error("dz1", 2, 1, 1);
}

TEST_CASE("print and parse round trip") {
  Rng rng(99);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 200; ++trial) {
      const int degree = rng.uniform(0, 2 * n);
      Form f = random_form(rng, n, degree, RandomShape{3, 3, 50});
      std::string text = to_string(f);
      INFO(text);
      CHECK(parse_form(text, n, degree) == f);
    }
}

TEST_CASE("printing") {
  CHECK(to_string(Form::omega(2)) == "dx1/\\dy1 + dx2/\\dy2");
  CHECK(to_string(Form(2, 1)) == "0");
  CHECK(to_string(Poly::coordinate(1, 0) * Form::dy(1, 1) - Form::dx(1, 1)) == "-dx1 + x1*dy1");
}
