#include "doctest.h"

#include <algorithm>

#include "degloc/degeneracy.hpp"
#include "degloc/modular.hpp"
#include "../support/oracles.hpp"

using namespace degloc;

namespace {

QPoly qp(std::initializer_list<long> c) { return QPoly::from_ints(c); }

QPoly qpr(std::vector<Rational> c) { return QPoly(std::move(c)); }

using oracle::qmat;

DegeneracyProblem worked_example() {
  return make_problem(3, {"X1^2+X2^2+X3^2"}, "X1*X2*X3", {{"X1", "X1*X2+X2^2", "X1*X3"}},
                      qmat(2, 3, {1, 2, 3, 2, 1, 3}));
}

Choices worked_choices() {
  QMatrix minv = identity<Rational>(3);
  minv(0, 1) = -1;
  return {Frame::from_inverse(minv), {Rational(-1), Rational(-1), Rational(0)}};
}

HittingSequence identity_chart() {
  HittingSequence h;
  h.b.push_back(identity<Rational>(3));
  h.columns.push_back({0});
  return h;
}

}  // namespace

TEST_CASE("worked example: chain on the chart Delta = X1") {
  auto prob = worked_example();
  Prepared prep = prepare(prob, identity_chart());
  auto run = run_pipeline<Rational>(prep, worked_choices());
  REQUIRE(run.charts.size() == 1);
  const auto& ch = run.charts[0];
  REQUIRE(ch.fibers.size() == 3);

  CHECK(run.vfiber.Q == qp({5, 0, 1}));
  const auto& w1 = ch.fibers[1];
  CHECK(w1.dim() == 1);
  CHECK(w1.Q == qpr({Rational(1, 3), Rational(-2, 3), Rational(1, 2), Rational(-1), Rational(1)}));
  CHECK(w1.v[0] == qp({0, 1}));
  CHECK(w1.v[1] == qp({3, -1, 0, -6}));

  CHECK(ch.pre_clean[1] == qp({0, 198, 72, 31, 4, 1}));
  const auto& w2 = ch.fibers[2];
  CHECK(w2.dim() == 0);
  CHECK(w2.Q == qp({198, 72, 31, 4, 1}));
  CHECK(w2.v[0] == qp({0, 1}));
  CHECK(w2.v[1] == qpr({Rational(1), Rational(1, 2), Rational(1, 9), Rational(1, 18)}));
  CHECK(w2.v[2] == qp({3}));
  CHECK(run.result.degree() == 4);
  CHECK(membership_test(prob, 2, run.result));
  CHECK(membership_test(prob, 2, run.result.P, run.result.Q, 11));
}

TEST_CASE("worked example: hitting sequence keeps one chart") {
  auto prob = worked_example();
  auto h = choose_hitting_sequence(prob);
  REQUIRE(h.b.size() == 1);
  CHECK(h.columns[0] == std::vector<std::size_t>{0});
  CHECK(h.b[0] == identity<Rational>(3));
}

TEST_CASE("worked example: full solve") {
  auto prob = worked_example();
  SolveOptions opt;
  opt.seed = 3;
  auto res = solve(prob, opt);
  REQUIRE(res.resolution.degree() == 4);
  CHECK(res.report.charts.size() == 1);
  CHECK(res.report.charts[0].degrees == std::vector<std::size_t>{2, 4, 4});
  // same points as the hand-picked run
  auto run = run_pipeline<Rational>(prepare(prob, identity_chart()), worked_choices());
  auto moved = change_primitive_element(run.result, res.resolution.u);
  CHECK(moved.P == res.resolution.P);
  CHECK(moved.Q == res.resolution.Q);
}

TEST_CASE("T(a_i) views and minor shapes") {
  auto prob = worked_example();
  auto t1 = build_T(prob, 1);
  CHECK(t1.view.rows() == 3);
  auto t3 = build_T(prob, 3);
  CHECK(t3.view.rows() == 1);  // T(a_{r+1}) = F when s = p + r
  for (std::size_t i = 1; i <= 3; ++i)
    for (const auto& m : build_T(prob, i).minors) {
      CHECK(std::is_sorted(m.cols.begin(), m.cols.end()));
      CHECK(std::adjacent_find(m.cols.begin(), m.cols.end()) == m.cols.end());
      std::size_t rows = m.role == MinorRole::Delta ? prob.p : prob.s - m.level + 1;
      CHECK(m.cols.size() == rows);
    }
  CHECK_THROWS_AS(build_T(prob, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_T(prob, 4), std::invalid_argument);
}

TEST_CASE("the bordered minor of T(a_1) is the displayed determinant") {
  auto prob = worked_example();
  auto t1 = build_T(prob, 1);
  const MinorSpec* top = nullptr;
  for (const auto& m : t1.minors)
    if (m.role == MinorRole::M && m.index == 3) top = &m;
  REQUIRE(top);
  Circuit d = determinant_circuit(prob, *top, identity<Rational>(3));
  Circuit expect = circuit_from_strings(3, {"3*X1 + 3*X1*X2 + 3*X2^2 - 3*X1*X3"});
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    std::vector<Rational> x{Rational(long(rng() % 19) - 9), Rational(long(rng() % 19) - 9), Rational(long(rng() % 19) - 9)};
    CHECK(d.evaluate(x, Rational(0)).back() == expect.evaluate(x, Rational(0))[0]);
  }
}

TEST_CASE("membership: points of the worked example and points off W") {
  auto prob = worked_example();
  auto res = solve(prob, {}).resolution;
  CHECK(membership_test(prob, 2, res));
  CHECK(membership_test(prob, 1, res));  // chain monotonicity
  // generic points of V over a quadratic field are not in W(a_2)
  auto pt = fiber_of_V<Rational>(prob, prob.circuit, make_choices(prob, 9, 0));
  auto x = apply_matrix(to_field<Rational>(pt.frame.M),
                        std::vector<QPoly>{QPoly::constant(pt.z[0]), QPoly::constant(pt.z[1]), pt.v[0]});
  CHECK_FALSE(membership_test(prob, 2, pt.Q, x));
  // not on V
  CHECK_THROWS_AS(membership_test(prob, 2, qp({-2, 0, 1}), {qp({0, 1}), qp({1}), qp({1})}), NotOnVariety);
}

TEST_CASE("sphere: W(a_2) has the two points of the closed form") {
  QMatrix a = qmat(2, 3, {2, -3, 5, 1, 4, -7});
  auto prob = make_problem(3, {"X1^2+X2^2+X3^2-1"}, "", {{"2*X1", "2*X2", "2*X3"}}, a);
  auto res = solve(prob, {}).resolution;
  REQUIRE(res.degree() == 2);
  QuoRing<Rational> ring(res.P);
  auto x1 = ring.from_poly(res.Q[0]), x2 = ring.from_poly(res.Q[1]), x3 = ring.from_poly(res.Q[2]);
  Rational c = a(0, 0) * a(0, 0) / (a(0, 2) * a(0, 2)) + a(0, 1) * a(0, 1) / (a(0, 2) * a(0, 2)) + 1;
  CHECK((x3 * x3).scaled(c) - ring.one() == ring.zero());
  CHECK(x1 - x3.scaled(Rational(a(0, 0) / a(0, 2))) == ring.zero());
  CHECK(x2 - x3.scaled(Rational(a(0, 1) / a(0, 2))) == ring.zero());
  CHECK(membership_test(prob, 2, res));
  // (1, 0, 0) lies on the sphere but not on its polar variety
  CHECK_FALSE(membership_test(prob, 2, qp({0, 1}), {qp({1}), qp({0}), qp({0})}));
}

TEST_CASE("hitting sequence covers points of a curve for a 2 x 4 matrix") {
  // twisted cubic; F has no constant 2-minor
  auto prob = make_problem(3, {"X2 - X1^2", "X3 - X1*X2"}, "",
                           {{"X1", "X2", "1 + X3", "X1*X2"}, {"X2", "X1 - 1", "X3", "2*X1"}},
                           qmat(2, 4, {1, 2, 3, 4, 5, 6, 7, 9}));
  auto h = choose_hitting_sequence(prob);
  CHECK(h.b.size() >= 1);
  std::mt19937_64 rng(1);
  int covered = 0;
  for (int t = 0; t < 100; ++t) {
    Rational x1(long(rng() % 41) - 20, long(rng() % 5) + 1);
    std::vector<Rational> x{x1, x1 * x1, x1 * x1 * x1};
    auto v = prob.circuit.evaluate(x, Rational(0));
    QMatrix F(2, 4, Rational(0));
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t l = 0; l < 4; ++l) F(k, l) = v[prob.f(k, l)];
    if (rank(F) < 2) continue;
    bool hit = false;
    for (const auto& cols : h.columns) {
      QMatrix m = F.submatrix({0, 1}, cols);
      if (sgn(det_cofactor(m, Rational(1))) != 0) hit = true;
    }
    covered += hit;
    CHECK(hit);
  }
  CHECK(covered > 50);
}

TEST_CASE("rank conditions agree with Gaussian elimination") {
  std::mt19937_64 rng(2024);
  int agree = 0, total = 0;
  for (std::size_t s = 1; s <= 4; ++s)
    for (std::size_t p = 1; p <= s; ++p)
      for (std::size_t rows = p; rows <= s; ++rows)
        for (int rep = 0; rep < 10 && total < 200; ++rep) {
          std::size_t kf = rng() % (p + 1);
          QMatrix F = oracle::low_rank(p, s, kf, rng);
          QMatrix extra = (rep % 2 == 0) ? oracle::low_rank(rows - p, s, rng() % (rows - p + 1), rng)
                                         : random_matrix(rows - p, s, rng, 5);
          QMatrix T(rows, s, Rational(0));
          for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < s; ++j) T(i, j) = i < p ? F(i, j) : extra(i - p, j);
          auto [c1, c2] = rank_conditions(F, T, rng);
          bool ok = c1 == (rank(F) == p) && c2 == (rank(T) < rows);
          agree += ok;
          ++total;
        }
  CHECK(total >= 100);
  CHECK(agree == total);
}

TEST_CASE("modular images are reductions of the rational result") {
  auto prob = worked_example();
  auto exact = solve(prob, {}).resolution;
  std::mt19937_64 rng(77);
  for (int t = 0; t < 2; ++t) {
    std::uint64_t p = random_prime(rng, 62);
    SolveOptions o;
    o.prime = p;
    auto img = solve(prob, o);
    REQUIRE(img.report.modulus);
    CHECK(img.resolution.degree() == exact.degree());
    std::vector<std::uint64_t> res;
    for (const auto& c : img.resolution.P.coeffs()) res.push_back(c.get_num().get_ui());
    CHECK(reduces_to(exact.P.coeffs(), p, res));
  }
}

TEST_CASE("a tiny probe prime is flagged and does not change the answer") {
  auto prob = worked_example();
  auto exact = solve(prob, {}).resolution;
  SolveOptions o;
  o.probe_primes = {3, 1000003};
  auto r = solve(prob, o);
  CHECK(r.resolution.P == exact.P);
  CHECK(std::find(r.report.bad_primes.begin(), r.report.bad_primes.end(), 3) != r.report.bad_primes.end());
  CHECK(std::find(r.report.bad_primes.begin(), r.report.bad_primes.end(), 1000003) == r.report.bad_primes.end());
}

TEST_CASE("a chain over the affine plane with s > p + r") {
  // rank of [X1 X2 1] against a 3 x 4 matrix; W(a_r) is a single point
  auto prob = make_problem(2, {}, "", {{"X1", "X2", "1", "X1*X2"}}, qmat(3, 4, {1, 2, 3, 4, 2, 0, 1, 3, 5, 1, 1, 2}));
  auto r = solve(prob, {});
  CHECK(r.report.charts.size() >= 1);
  if (!r.empty()) CHECK(membership_test(prob, 2, r.resolution));
}

TEST_CASE("audit counters see every emitted fiber") {
  auto before = audit_counters().checked.load();
  solve(worked_example(), {});
  CHECK(audit_counters().checked.load() > before);
  CHECK(audit_counters().failures.load() == 0);
}

TEST_CASE("the OpenMP driver matches the serial reference") {
  std::vector<DegeneracyProblem> probs{
      worked_example(),
      make_problem(3, {"X1^2+X2^2+X3^2-1"}, "", {{"2*X1", "2*X2", "2*X3"}}, qmat(2, 3, {2, -3, 5, 1, 4, -7}))};
  for (const auto& prob : probs) {
    SolveOptions serial, par;
    serial.parallel = false;
    par.parallel = true;
    auto a = solve(prob, serial), b = solve(prob, par);
    CHECK(a.resolution.P == b.resolution.P);
    CHECK(a.resolution.Q == b.resolution.Q);
    CHECK(a.report.signature() == b.report.signature());
  }
}
