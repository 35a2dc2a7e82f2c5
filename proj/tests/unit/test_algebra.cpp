#include "doctest.h"

#include <random>

#include "degloc/matrix.hpp"
#include "degloc/modular.hpp"
#include "degloc/quotient.hpp"
#include "degloc/series.hpp"

using namespace degloc;

namespace {

QPoly random_qpoly(std::mt19937_64& rng, std::size_t deg, long bound = 9) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<Rational> c;
  for (std::size_t i = 0; i <= deg; ++i) c.emplace_back(d(rng));
  if (sgn(c.back()) == 0) c.back() = 1;
  return QPoly(std::move(c));
}

// Sylvester determinant, expanded by cofactors
Rational sylvester_resultant(const QPoly& f, const QPoly& g) {
  const std::size_t m = f.degree(), n = g.degree(), N = m + n;
  QMatrix s(N, N, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) s(i, i + j) = f[m - j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) s(n + i, i + j) = g[n - j];
  return det_cofactor(s, Rational(1));
}

}  // namespace

TEST_CASE("resultant agrees with the Sylvester determinant") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    QPoly f = random_qpoly(rng, 1 + rng() % 4), g = random_qpoly(rng, 1 + rng() % 3);
    CHECK(resultant(f, g) == sylvester_resultant(f, g));
  }
  CHECK(resultant(QPoly::from_ints({-2, 0, 1}), QPoly::from_ints({0, 1})) == Rational(-2));
}

TEST_CASE("gcd of products with a common factor") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    QPoly c = random_qpoly(rng, 1 + rng() % 3).monic();
    QPoly a = random_qpoly(rng, 2) * c, b = random_qpoly(rng, 2) * c;
    QPoly g = gcd(a, b);
    CHECK(divides(c, g));
    CHECK(divides(g, a));
    CHECK(divides(g, b));
    auto x = xgcd(a, b);
    CHECK(x.g == a * x.s + b * x.t);
  }
  CHECK(gcd(QPoly::from_ints({1, 0, 1}), QPoly::from_ints({-1, 1})).degree() == 0);
}

TEST_CASE("squarefree part and interpolation") {
  QPoly f = from_roots<Rational>({Rational(1), Rational(1), Rational(-3), Rational(1, 2)});
  CHECK(squarefree_part(f) == from_roots<Rational>({Rational(1), Rational(-3), Rational(1, 2)}));
  CHECK_FALSE(is_squarefree(f));
  std::vector<Rational> xs{0, 1, 2, 3}, ys;
  for (auto& x : xs) ys.push_back(f(x));
  QPoly p = interpolate(xs, ys);
  CHECK(p.degree() <= 3);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(p(xs[i]) == ys[i]);
}

TEST_CASE("quotient ring: trace, norm and characteristic polynomial from the roots") {
  std::vector<Rational> roots{Rational(1), Rational(-2), Rational(3, 2)};
  QuoRing<Rational> ring(from_roots<Rational>(roots));
  QPoly a = QPoly::from_ints({1, -1, 2});  // 1 - T + 2 T^2
  auto e = ring.from_poly(a);
  Rational tr = 0, nm = 1;
  std::vector<Rational> images;
  for (auto& r : roots) {
    tr += a(r);
    nm *= a(r);
    images.push_back(a(r));
  }
  CHECK(e.trace() == tr);
  CHECK(e.norm() == nm);
  CHECK(charpoly(e) == from_roots<Rational>(images));
  CHECK(charpoly(ring.gen()) == ring.modulus());
  CHECK((e * e.inverse() - ring.one()).is_zero());
}

TEST_CASE("series inverse, exponential and norm") {
  Series<Rational> s(std::vector<Rational>{1, 2, 3, 4, 5});
  auto inv = s.inverse();
  auto one = s * inv;
  CHECK(one[0] == 1);
  for (std::size_t i = 1; i < 5; ++i) CHECK(one[i] == 0);
  auto e = series_exp(Series<Rational>(std::vector<Rational>{0, 1, 0, 0, 0}));
  CHECK(e[4] == Rational(1, 24));

  QuoRing<Rational> ring(from_roots<Rational>({Rational(1), Rational(2)}));
  Series<QuoElem<Rational>> t(std::vector<QuoElem<Rational>>{ring.gen(), ring.one(), ring.zero(), ring.zero()});
  auto n = series_norm(t);  // (1 + t)(2 + t)
  CHECK(n[0] == 2);
  CHECK(n[1] == 3);
  CHECK(n[2] == 1);
  CHECK(n[3] == 0);
}

TEST_CASE("Berkowitz determinant equals cofactor expansion") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> d(-5, 5);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int t = 0; t < 5; ++t) {
      QMatrix m(n, n, Rational(0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
      CHECK(det_berkowitz(m, Rational(1)) == det_cofactor(m, Rational(1)));
      if (rank(m) == n) CHECK(m * inverse(m) == identity<Rational>(n));
    }
}

TEST_CASE("CRT and rational reconstruction round trip") {
  std::mt19937_64 rng(21);
  std::vector<Rational> values{Rational(3, 7), Rational(-123456789, 1000003), Rational(0), Rational(5)};
  RationalReconstructor rr;
  bool done = false;
  for (int k = 0; k < 6 && !done; ++k) {
    std::uint64_t p = random_prime(rng, 62);
    std::vector<std::uint64_t> res;
    for (auto& v : values) res.push_back(*reduce_mod(v, p));
    CHECK(reduces_to(values, p, res));
    rr.add(p, res);
    if (auto r = rr.try_reconstruct()) {
      CHECK(*r == values);
      done = true;
    }
  }
  CHECK(done);
  CHECK(crt(Integer(2), Integer(3), Integer(3), Integer(5)) == 8);
  CHECK_FALSE(reduce_mod(Rational(1, 7), 7));
}

TEST_CASE("Zp arithmetic modulo a 62-bit prime") {
  std::mt19937_64 rng(4);
  std::uint64_t p = random_prime(rng, 62);
  CHECK(is_prime(p));
  PrimeScope scope(p);
  for (int t = 0; t < 50; ++t) {
    Zp a(rng()), b(rng());
    if (a.is_zero()) continue;
    CHECK(a * a.inverse() == Zp(1));
    CHECK((a + b) - b == a);
    CHECK(a.pow(p - 1) == Zp(1));
  }
  CHECK(Zp::from_int(-1) + Zp(1) == Zp(0));
}
