#include "doctest.h"

#include "degloc/kronecker.hpp"

using namespace degloc;

namespace {

QPoly qp(std::initializer_list<long> c) { return QPoly::from_ints(c); }

Frame reference_frame() {
  QMatrix minv = identity<Rational>(3);
  minv(0, 1) = -1;
  return Frame::from_inverse(minv);
}

}  // namespace

TEST_CASE("V fiber of the sphere cone in the coordinates Y1 = X1 - X2") {
  Circuit c = circuit_from_strings(3, {"X1^2+X2^2+X3^2", "X1*X2*X3"}, {"G1", "H"});
  auto f0 = ambient_fiber<Rational>(reference_frame(), {Rational(-1), Rational(-1), Rational(0)});
  auto f1 = intersect_with_hypersurface(c, f0, 0, {1});
  CHECK(f1.dim() == 2);
  CHECK(f1.Q == qp({5, 0, 1}));
  CHECK(f1.v[0] == qp({0, 1}));
  CHECK(check_invariants(c, f1).ok());
}

TEST_CASE("zero-dimensional fiber of X1^2 - 2") {
  Circuit c = circuit_from_strings(1, {"X1^2 - 2"});
  auto f0 = ambient_fiber<Rational>(Frame::identity(1), {Rational(0)});
  auto f1 = intersect_with_hypersurface(c, f0, 0, {});
  CHECK(f1.Q == qp({-2, 0, 1}));
  CHECK(f1.v[0] == qp({0, 1}));
}

TEST_CASE("lifting the square root series") {
  // X2^2 = 1 + X1 around X1 = 0, X2 = 1
  Circuit c = circuit_from_strings(2, {"X2^2 - 1 - X1"});
  LiftingFiber<Rational> f;
  f.system = {0};
  f.frame = Frame::identity(2);
  f.z = {Rational(0)};
  f.lambda = {Rational(1)};
  f.Q = qp({-1, 1});
  f.v = {QPoly::constant(Rational(1))};
  auto lift = lift_curve(c, f, {Rational(1)}, 4, false);
  const auto& y = lift.y[1];
  CHECK(y[0].coeffs()[0] == Rational(1));
  CHECK(y[1].coeffs()[0] == Rational(1, 2));
  CHECK(y[2].coeffs()[0] == Rational(-1, 8));
  CHECK(y[3].coeffs()[0] == Rational(1, 16));
}
