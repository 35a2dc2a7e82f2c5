#include "doctest.h"

#include "degloc/circuit.hpp"
#include "degloc/upoly.hpp"

using namespace degloc;

TEST_CASE("circuit evaluates parsed polynomials") {
  Circuit c = circuit_from_strings(2, {"X1^2 - 3*X2 + 1/2", "(X1 + X2)^3"});
  auto v = c.evaluate<Rational>({Rational(2), Rational(5)}, Rational(0));
  CHECK(v[0] == Rational(-21, 2));
  CHECK(v[1] == Rational(343));
  CHECK(c.degree_bounds() == std::vector<long>{2, 3});
}

TEST_CASE("determinant circuit matches cofactor expansion") {
  CircuitBuilder b(3);
  auto x = b.inputs();
  Matrix<Expr> m(3, 3, b.constant(0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = x[(i + j) % 3] * b.constant(i + 1) + b.constant(j);
  b.add_output(determinant(b, m), "det");
  Circuit c = b.build();
  std::vector<Rational> pt{Rational(3), Rational(-2), Rational(7, 3)};
  QMatrix q(3, 3, Rational(0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) q(i, j) = pt[(i + j) % 3] * (i + 1) + j;
  CHECK(c.evaluate(pt, Rational(0))[0] == det_cofactor(q, Rational(1)));
}

TEST_CASE("jacobian circuit and forward mode agree") {
  Circuit c = circuit_from_strings(2, {"X1^3*X2 - X2^2"});
  Circuit j = jacobian_circuit(c, {0});
  std::vector<Rational> pt{Rational(2), Rational(3)};
  auto jv = j.evaluate(pt, Rational(0));
  CHECK(jv[0] == Rational(36));
  CHECK(jv[1] == Rational(2));
  auto [v, jac] = jacobian_evaluate(c, pt, {0}, Rational(0));
  CHECK(v[0] == Rational(15));
  CHECK(jac(0, 0) == Rational(36));
  CHECK(jac(0, 1) == Rational(2));
}

TEST_CASE("parse errors report line and column") {
  CircuitBuilder b(2);
  try {
    parse_polynomial(b, "X1 + \n  X3", {"X1", "X2"}, 4, 7);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_polynomial(b, "X1 / X2", {"X1", "X2"}), ParseError);
}

TEST_CASE("exact degrees detect cancellation") {
  Circuit c = circuit_from_strings(2, {"(X1+X2)^2 - X1^2 - X2^2", "X1^4 - X1^3*X1 + X2"});
  CHECK(c.degree_bounds() == std::vector<long>{2, 4});
  CHECK(c.exact_degrees() == std::vector<long>{2, 1});
}
