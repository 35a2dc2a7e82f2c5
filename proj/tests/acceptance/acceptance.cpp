// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "degloc/applications.hpp"
#include "degloc/modular.hpp"
#include "oracles.hpp"

using namespace degloc;
using oracle::qmat;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

QPoly qp(std::initializer_list<long> c) { return QPoly::from_ints(c); }

Circuit sys(std::size_t n, std::vector<std::string> p) { return circuit_from_strings(n, p); }

/// Resolutions produced along the way, re-checked by criteria 6 and 9.
struct Produced {
  std::string name;
  DegeneracyProblem prob;
  std::size_t level;
  GeometricResolution<Rational> res;
};
std::vector<Produced> produced;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

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

void c1(Outcome& o) {
  auto t0 = Clock::now();
  auto prob = worked_example();
  auto r = solve(prob, {});
  double t = seconds_since(t0);
  const auto& g = r.resolution;
  o.require(g.degree() == 4, "degree 4");
  o.require(is_squarefree(g.P), "P separable");
  if (g.degree() == 4) {
    // reference parameterization in Y1 = X1 - X2, Y2 = X2, Y3 = X3
    QuoRing<Rational> ring(g.P);
    auto x1 = ring.from_poly(g.Q[0]), x2 = ring.from_poly(g.Q[1]), x3 = ring.from_poly(g.Q[2]);
    auto y1 = x1 - x2;
    QPoly ref_q = qp({198, 72, 31, 4, 1});
    QPoly ref_v2({Rational(1), Rational(1, 2), Rational(1, 9), Rational(1, 18)});
    auto res_q = evaluate_at(ref_q, y1);
    auto res_v2 = x2 - evaluate_at(ref_v2, y1);
    auto res_v3 = x3 - ring.scalar(Rational(3));
    o.require(res_q.is_zero() && res_v2.is_zero() && res_v3.is_zero(), "reference residuals vanish");
  }
  o.require(t < 10, "runtime < 10 s");
  o.detail << "deg P = " << g.degree() << ", u = X1 + X2 + X3, P = " << to_string(g.P) << ", " << t << " s";
  produced.push_back({"worked example", prob, 2, g});
}

void c2(Outcome& o) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(2);
  QMatrix a = random_matrix(2, 3, rng, 50);
  while (sgn(a(0, 2)) == 0) a = random_matrix(2, 3, rng, 50);
  auto prob = make_problem(3, {"X1^2+X2^2+X3^2-1"}, "", {{"2*X1", "2*X2", "2*X3"}}, a);
  auto r = solve(prob, {});
  double t = seconds_since(t0);
  const auto& g = r.resolution;
  o.require(g.degree() == 2, "exactly 2 points");
  if (g.degree() == 2) {
    QuoRing<Rational> ring(g.P);
    auto x1 = ring.from_poly(g.Q[0]), x2 = ring.from_poly(g.Q[1]), x3 = ring.from_poly(g.Q[2]);
    Rational a13sq = a(0, 2) * a(0, 2);
    Rational c = a(0, 0) * a(0, 0) / a13sq + a(0, 1) * a(0, 1) / a13sq + 1;
    o.require(((x3 * x3).scaled(c) - ring.one()).is_zero(), "quadratic in X3");
    o.require((x1 - x3.scaled(Rational(a(0, 0) / a(0, 2)))).is_zero(), "X1 relation");
    o.require((x2 - x3.scaled(Rational(a(0, 1) / a(0, 2)))).is_zero(), "X2 relation");
  }
  o.require(t < 5, "runtime < 5 s");
  o.detail << "deg P = " << g.degree() << ", closed form holds symbolically, " << t << " s";
  produced.push_back({"unit sphere", prob, 2, g});
}

void c3(Outcome& o) {
  auto prob = worked_example();
  auto run = run_pipeline<Rational>(prepare(prob, identity_chart()), worked_choices());
  o.require(run.charts.size() == 1 && run.charts[0].fibers.size() == 3, "one chart with three fibers");
  if (!o.pass) return;
  const auto& ch = run.charts[0];
  QPoly quintic = ch.pre_clean[1];
  QPoly w2 = ch.fibers[2].Q;
  o.require(ch.fibers[1].Q.degree() == 4, "W(a_1) fiber of degree 4");
  o.require(quintic == qp({0, 198, 72, 31, 4, 1}), "the five-point intersection");
  o.require(quintic.degree() == 5 && w2.degree() == 4, "one point dropped");
  o.require(w2 * qp({0, 1}) == quintic, "the dropped point is the origin");
  o.detail << "deg W(a_1) fiber = " << ch.fibers[1].Q.degree() << ", before cleaning " << to_string(quintic)
           << ", after " << to_string(w2);
}

void c4(Outcome& o) {
  struct Case {
    std::string name;
    std::vector<std::string> map;
    std::size_t expect;
  };
  std::vector<Case> cases{{"(X1, X1)", {"X1", "X1"}, 0},
                          {"(X1, X2 + X1^2, X3 + X2^2)", {"X1", "X2 + X1^2", "X3 + X2^2"}, 1},
                          {"(X1^2, X2)", {"X1^2", "X2"}, 2}};
  for (const auto& c : cases) {
    auto t0 = Clock::now();
    Circuit m = sys(c.map.size(), c.map);
    auto r = generic_fiber(m, {});
    double t = seconds_since(t0);
    o.require(r.cardinality == c.expect, c.name + " cardinality");
    o.require(c.expect != 0 || r.solve.empty(), c.name + " empty");
    o.require(maps_to_target(m, r.solve.resolution, r.target), c.name + " maps to the target");
    o.require(t < 5, c.name + " runtime");
    // independent count: the target fiber of a triangular map has one point,
    // X1^2 = c has two
    o.detail << c.name << " -> " << (r.solve.empty() ? std::string("EMPTY") : std::to_string(r.cardinality)) << " ("
             << t << " s); ";
    if (!r.solve.empty()) produced.push_back({"fiber " + c.name, r.problem, m.num_inputs(), r.solve.resolution});
  }
}

std::string random_bivariate(std::mt19937_64& rng, int deg) {
  std::uniform_int_distribution<long> coef(-5, 5);
  std::string s;
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; i + j <= deg; ++j) {
      long c = coef(rng);
      if (i + j == deg && c == 0) c = 1;  // keep the top degree
      if (c == 0 || (i + j > 0 && i + j < deg && rng() % 2)) continue;
      if (!s.empty()) s += " + ";
      s += "(" + std::to_string(c) + ")";
      if (i) s += "*X1^" + std::to_string(i);
      if (j) s += "*X2^" + std::to_string(j);
    }
  return s.empty() ? "1" : s;
}

void c5(Outcome& o) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(55);
  for (int k = 0; k < 5; ++k) {
    int df = 1 + static_cast<int>(rng() % 3), dg = 1 + static_cast<int>(rng() % 3);
    std::vector<std::string> f{random_bivariate(rng, df), random_bivariate(rng, dg)};
    std::vector<std::string> g{random_bivariate(rng, 1 + rng() % 3), random_bivariate(rng, 1 + rng() % 3)};
    QMatrix a = random_matrix(2, 4, rng, 30);
    while (sgn(a(0, 2)) == 0 || sgn(a(0, 3)) == 0) a = random_matrix(2, 4, rng, 30);
    auto r = homotopy_count(sys(2, f), sys(2, g), {}, a);
    // the deformed system a13 F_k + a14 G_k = a1k
    std::vector<std::string> deformed;
    for (int i = 0; i < 2; ++i)
      deformed.push_back("(" + to_string(a(0, 2)) + ")*(" + f[i] + ") + (" + to_string(a(0, 3)) + ")*(" + g[i] +
                         ") - (" + to_string(a(0, i)) + ")");
    std::size_t expect = oracle::bivariate_solution_count(sys(2, deformed));
    o.require(r.count == expect, "pair " + std::to_string(k + 1));
    o.detail << r.count << "/" << expect << " ";
    produced.push_back({"homotopy " + std::to_string(k + 1), r.problem, 2, r.solve.resolution});
  }
  double t = seconds_since(t0);
  o.require(t < 30, "runtime < 30 s");
  o.detail << "(engine/oracle), " << t << " s";
}

void c6(Outcome& o) {
  std::size_t members = 0;
  for (const auto& p : produced) {
    if (p.res.empty()) continue;
    bool ok = membership_test(p.prob, p.level, p.res);
    o.require(ok, p.name + " member");
    members += ok;
  }
  o.detail << members << " resolutions pass; ";

  // points of V off W: lifting fibers of V for the worked example, and
  // rational points of the unit sphere
  std::size_t rejected = 0, tried = 0;
  auto prob = worked_example();
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto f = fiber_of_V<Rational>(prob, prob.circuit, make_choices(prob, seed, 0));
    std::vector<QPoly> y;
    for (const auto& zi : f.z) y.push_back(QPoly::constant(zi));
    for (const auto& vj : f.v) y.push_back(vj);
    auto x = apply_matrix(to_field<Rational>(f.frame.M), y);
    tried += f.Q.degree();
    if (!membership_test(prob, 2, f.Q, x, seed)) rejected += f.Q.degree();
  }
  auto sphere = make_problem(3, {"X1^2+X2^2+X3^2-1"}, "", {{"2*X1", "2*X2", "2*X3"}}, qmat(2, 3, {2, -3, 5, 1, 4, -7}));
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<long> d(-40, 40);
  for (int k = 0; k < 100; ++k) {
    Rational u(d(rng), 7), v(d(rng), 11);
    Rational den = u * u + v * v + 1;
    std::vector<QPoly> x{QPoly::constant(Rational(2 * u / den)), QPoly::constant(Rational(2 * v / den)),
                         QPoly::constant(Rational((u * u + v * v - 1) / den))};
    ++tried;
    if (!membership_test(sphere, 2, qp({0, 1}), x, k + 1)) ++rejected;
  }
  o.require(rejected == tried, "off-W points rejected");
  o.detail << rejected << "/" << tried << " off-W points rejected; ";

  std::size_t agree = 0, total = 0;
  for (std::size_t s = 1; s <= 4; ++s)
    for (std::size_t p = 1; p <= s; ++p)
      for (std::size_t rows = p; rows <= s; ++rows)
        for (std::size_t kf = 0; kf <= p; ++kf)
          for (int rep = 0; rep < 4; ++rep) {
            QMatrix F = oracle::low_rank(p, s, kf, rng);
            std::size_t ke = rows - p == 0 ? 0 : rng() % (rows - p + 1);
            QMatrix extra = oracle::low_rank(rows - p, s, ke, rng);
            if (rep >= 2) extra = random_matrix(rows - p, s, rng, 3);
            QMatrix T(rows, s, Rational(0));
            for (std::size_t i = 0; i < rows; ++i)
              for (std::size_t j = 0; j < s; ++j) T(i, j) = i < p ? F(i, j) : extra(i - p, j);
            auto [full, deficient] = rank_conditions(F, T, rng);
            agree += full == (rank(F) == p) && deficient == (rank(T) < rows);
            ++total;
          }
  o.require(total >= 200, "at least 200 matrices");
  o.require(agree == total, "rank oracle agreement");
  o.detail << agree << "/" << total << " matrices agree with the rank oracle";
}

void c7(Outcome& o) {
  auto prob = worked_example();
  auto exact = solve(prob, {}).resolution;
  std::mt19937_64 rng(7);
  std::uint64_t p1 = random_prime(rng, 62), p2 = random_prime(rng, 62);
  while (p2 == p1) p2 = random_prime(rng, 62);
  for (std::uint64_t p : {p1, p2}) {
    SolveOptions opt;
    opt.prime = p;
    auto img = solve(prob, opt);
    o.require(img.report.modulus && *img.report.modulus == p, "modular mode");
    auto flat = [](const GeometricResolution<Rational>& g) {
      std::vector<Rational> v(g.P.coeffs());
      for (const auto& q : g.Q) {
        for (std::size_t i = 0; i < g.P.size() - 1; ++i) v.push_back(q[i]);
      }
      return v;
    };
    std::vector<std::uint64_t> residues;
    for (const auto& c : flat(img.resolution)) residues.push_back(c.get_num().get_ui());
    bool same_u = img.resolution.u == exact.u;
    o.require(same_u && reduces_to(flat(exact), p, residues), "image modulo " + std::to_string(p));
  }
  SolveOptions bad;
  bad.probe_primes = {3};
  auto r = solve(prob, bad);
  bool flagged = std::find(r.report.bad_primes.begin(), r.report.bad_primes.end(), 3) != r.report.bad_primes.end();
  o.require(flagged, "prime 3 detected");
  o.require(r.resolution.P == exact.P && r.resolution.Q == exact.Q, "output unchanged");
  o.detail << "primes " << p1 << ", " << p2 << " reduce correctly; probe prime 3 " << (flagged ? "flagged" : "missed")
           << ", output " << (r.resolution.P == exact.P ? "unchanged" : "changed");
}

void c8(Outcome& o) {
  const double limits[] = {60, 600};
  for (int N = 1; N <= 2; ++N) {
    auto t0 = Clock::now();
    PolarTask task{sys(3, {oracle::shifted_spheres(N)}), oracle::spheres_change(), oracle::spheres_a()};
    auto r = polar_sample_points(task, {}, 12);
    double t = seconds_since(t0);
    produced.push_back({"spheres N=" + std::to_string(N), r.problem, r.problem.r(), r.solve.resolution});

    const double lo[3] = {2, -2, -2}, hi[3] = {4.0 * N + 2, 2, 2};
    oracle::Marching m([N](double x, double y, double z) { return oracle::shifted_spheres_value(N, x, y, z); }, lo,
                       hi, 0.05);
    std::vector<char> hit(m.components, 0);
    const QMatrix C = oracle::spheres_change();
    for (const auto& p : r.points) {
      double X[3];
      for (int i = 0; i < 3; ++i) {
        Rational s = 0;
        for (int j = 0; j < 3; ++j) s += C(i, j) * p.approx[j];
        X[i] = s.get_d();
      }
      std::size_t c = m.component_of(X[0], X[1], X[2]);
      if (c != SIZE_MAX) hit[c] = 1;
    }
    std::size_t covered = std::count(hit.begin(), hit.end(), 1);
    o.require(m.components == static_cast<std::size_t>(N), "oracle finds N components");
    o.require(covered == m.components, "every component has a point");
    o.require(t < limits[N - 1], "runtime");
    o.detail << "N=" << N << ": deg P = " << r.solve.resolution.degree() << ", " << r.points.size()
             << " real points, " << covered << "/" << m.components << " components, " << t << " s; ";
  }
}

void c9(Outcome& o) {
  auto& a = audit_counters();
  o.require(a.checked.load() > 0, "fibers audited");
  o.require(a.failures.load() == 0, "no audit failures");
  std::size_t within = 0;
  for (const auto& p : produced) {
    long bound = 1;
    for (std::size_t i = 0; i < p.prob.n; ++i) bound *= p.prob.d;
    bool ok = static_cast<long>(p.res.degree()) <= bound;
    o.require(ok, p.name + " degree bound");
    within += ok;
  }
  o.detail << a.checked.load() << " fibers audited, " << a.failures.load() << " failures; deg P <= d^n for " << within
           << "/" << produced.size() << " resolutions";
}

}  // namespace

int main() {
  set_audit_enabled(true);
  struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
  };
  std::vector<Criterion> criteria{{"C1 golden worked example", c1},
                                  {"C2 sphere polar variety", c2},
                                  {"C3 intermediate fiber and cleaning", c3},
                                  {"C4 endomorphism fibers", c4},
                                  {"C5 homotopy counts", c5},
                                  {"C6 membership test soundness", c6},
                                  {"C7 modular round trip", c7},
                                  {"C8 shifted spheres N=1,2", c8},
                                  {"C9 fiber invariants and degree bound", c9}};
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
