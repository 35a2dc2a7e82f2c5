#include "doctest.h"

#include <random>

#include "degloc/applications.hpp"
#include "../support/oracles.hpp"

using namespace degloc;

namespace {

QPoly qp(std::initializer_list<long> c) { return QPoly::from_ints(c); }

Circuit sys(std::size_t n, std::vector<std::string> p) { return circuit_from_strings(n, p); }

}  // namespace

TEST_CASE("real root isolation on small examples") {
  auto r = isolate_real_roots(qp({-2, 0, 1}));
  REQUIRE(r.size() == 2);
  CHECK(sgn(r[0].hi) <= 0);
  CHECK(sgn(r[1].lo) >= 0);
  auto s = refine(qp({-2, 0, 1}), r[1], Rational(1, 1000000));
  CHECK(s.lo * s.lo < 2);
  CHECK(s.hi * s.hi > 2);
  CHECK(isolate_real_roots(qp({5, 0, 1})).empty());
  CHECK(isolate_real_roots(qp({126, -150, 67, -12, 1})).empty());
  auto e = isolate_real_roots(qp({0, -1, 0, 1}));  // -1, 0, 1
  CHECK(e.size() == 3);
}

TEST_CASE("Descartes isolation and Sturm counts agree") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> d(-20, 20);
  for (int t = 0; t < 60; ++t) {
    std::vector<Rational> c;
    std::size_t deg = 1 + rng() % 7;
    for (std::size_t i = 0; i <= deg; ++i) c.emplace_back(d(rng));
    if (sgn(c.back()) == 0) c.back() = 1;
    QPoly p(std::move(c));
    auto iv = isolate_real_roots(p);
    CHECK(iv.size() == sturm_count(p));
    for (std::size_t i = 0; i + 1 < iv.size(); ++i) CHECK(iv[i].hi <= iv[i + 1].lo);
    for (const auto& x : iv)
      if (!x.exact()) CHECK(sturm_count(p, x.lo, x.hi) == 1);
  }
}

TEST_CASE("generic fibers of small maps") {
  SolveOptions o;
  auto tri = generic_fiber(sys(2, {"X1", "X2 + X1^2"}), o);
  CHECK(tri.cardinality == 1);
  CHECK(maps_to_target(sys(2, {"X1", "X2 + X1^2"}), tri.solve.resolution, tri.target));

  auto sq = generic_fiber(sys(2, {"X1^2", "X2"}), o);
  CHECK(sq.cardinality == 2);
  CHECK(maps_to_target(sys(2, {"X1^2", "X2"}), sq.solve.resolution, sq.target));

  auto nd = generic_fiber(sys(2, {"X1", "X1"}), o);
  CHECK(nd.solve.empty());
  CHECK(nd.cardinality == 0);
}

TEST_CASE("homotopy counts in one variable") {
  auto one = homotopy_count(sys(1, {"X1 - 3"}), sys(1, {"2*X1 + 1"}));
  CHECK(one.count == 1);
  auto mixed = homotopy_count(sys(1, {"X1 - 3"}), sys(1, {"X1^2 - 1"}));
  CHECK(mixed.count == 2);
  auto two = homotopy_count(sys(1, {"X1^2 - 2"}), sys(1, {"X1^2 - 5"}));
  CHECK(two.count == 2);
}

TEST_CASE("homotopy count agrees with a resultant oracle") {
  Circuit f = sys(2, {"X1^2 + X2 - 1", "X1 - X2^2 + 2"});
  Circuit g = sys(2, {"X1*X2 - 1", "X1 + X2"});
  auto r = homotopy_count(f, g);
  CHECK(r.count == oracle::bivariate_solution_count(f));
}

TEST_CASE("polar varieties of the unit sphere") {
  PolarTask t{sys(3, {"X1^2 + X2^2 + X3^2 - 1"}), std::nullopt, oracle::spheres_a()};
  auto r = polar_sample_points(t);
  CHECK(r.solve.resolution.degree() == 2);
  CHECK(r.points.size() == 2);
  for (const auto& p : r.points) {
    Rational s = 0;
    for (const auto& x : p.approx) s += x * x;
    CHECK(abs(s - 1) < Rational(1, 1000000));
  }
  PolarTask empty{sys(3, {"X1^2 + X2^2 + X3^2 + 1"}), std::nullopt, oracle::spheres_a()};
  auto e = polar_sample_points(empty);
  CHECK(e.solve.resolution.degree() == 2);
  CHECK(e.points.empty());
}
