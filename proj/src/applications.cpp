#include "degloc/applications.hpp"

#include <algorithm>

namespace degloc {

namespace {

QPoly integer_primitive(const QPoly& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return p.scaled(Rational(l));
}

std::size_t sign_variations(const std::vector<Rational>& c) {
  std::size_t v = 0;
  int last = 0;
  for (const auto& x : c) {
    int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

/// Descartes bound for the roots of p in (lo, hi).
std::size_t descartes(const QPoly& p, const Rational& lo, const Rational& hi) {
  // x in (0, 1) <-> lo + (hi - lo) x, then x = 1 / (1 + y) maps (0, inf) onto (0, 1).
  QPoly q = p.taylor_shift(lo).scale_variable(Rational(hi - lo));
  std::vector<Rational> rev(q.coeffs().rbegin(), q.coeffs().rend());
  return sign_variations(QPoly(std::move(rev)).taylor_shift(Rational(1)).coeffs());
}

Rational cauchy_bound(const QPoly& p) {
  Rational m = 0;
  const Rational lc = p.lc();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    Rational r = abs(p.coeffs()[i] / lc);
    if (r > m) m = r;
  }
  Rational b = 1;
  while (b <= m + 1) b *= 2;
  return b;
}

void isolate(const QPoly& p, const Rational& lo, const Rational& hi, std::vector<Interval>& out) {
  std::size_t v = descartes(p, lo, hi);
  if (v == 0) return;
  if (v == 1) {
    out.push_back({lo, hi});
    return;
  }
  Rational mid = (lo + hi) / 2;
  isolate(p, lo, mid, out);
  if (sgn(p(mid)) == 0) out.push_back({mid, mid});
  isolate(p, mid, hi, out);
}

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> s{p, p.derivative()};
  while (!s.back().is_zero()) {
    QPoly r = s[s.size() - 2] % s.back();
    if (r.is_zero()) break;
    s.push_back(-r);
  }
  return s;
}

std::size_t variations_at(const std::vector<QPoly>& s, const Rational& x) {
  std::vector<Rational> v;
  for (const auto& f : s) v.push_back(f(x));
  return sign_variations(v);
}

std::size_t variations_at_infinity(const std::vector<QPoly>& s, int sign) {
  std::vector<Rational> v;
  for (const auto& f : s) {
    Rational l = f.lc();
    if (sign < 0 && f.degree() % 2 == 1) l = -l;
    v.push_back(l);
  }
  return sign_variations(v);
}

QPoly squarefree_part(const QPoly& p) { return (p / gcd(p, p.derivative())).monic(); }

}  // namespace

std::vector<Interval> isolate_real_roots(const QPoly& p0) {
  std::vector<Interval> out;
  if (p0.degree() < 1) return out;
  QPoly p = integer_primitive(squarefree_part(p0));
  Rational b = cauchy_bound(p);
  isolate(p, -b, b, out);
  return out;
}

Interval refine(const QPoly& p, Interval iv, const Rational& width) {
  if (iv.exact()) return iv;
  int slo = sgn(p(iv.lo));
  while (iv.width() > width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    int sm = sgn(p(mid));
    if (sm == 0) return {mid, mid};
    if (sm == slo) {
      iv.lo = mid;
    } else {
      iv.hi = mid;
    }
  }
  return iv;
}

std::size_t sturm_count(const QPoly& p) {
  if (p.degree() < 1) return 0;
  auto s = sturm_sequence(p);
  return variations_at_infinity(s, -1) - variations_at_infinity(s, 1);
}

std::size_t sturm_count(const QPoly& p, const Rational& lo, const Rational& hi) {
  if (p.degree() < 1) return 0;
  auto s = sturm_sequence(p);
  return variations_at(s, lo) - variations_at(s, hi);
}

std::vector<RealPoint> real_points(const GeometricResolution<Rational>& g, unsigned digits) {
  std::vector<RealPoint> out;
  if (g.empty()) return out;
  Rational width(1);
  for (unsigned i = 0; i < digits + 4; ++i) width /= 10;
  for (auto iv : isolate_real_roots(g.P)) {
    RealPoint pt;
    pt.t = refine(g.P, iv, width);
    Rational t = (pt.t.lo + pt.t.hi) / 2;
    for (const auto& q : g.Q) {
      pt.approx.push_back(q(t));
      pt.decimals.push_back(to_decimal(pt.approx.back(), digits));
    }
    out.push_back(std::move(pt));
  }
  return out;
}

DegeneracyProblem polar_problem(const PolarTask& task, std::uint64_t seed, HittingSequence* hitting) {
  const Circuit& eq = task.equations;
  const std::size_t n = eq.num_inputs(), p = eq.num_outputs();
  if (p == 0 || p > n) throw std::invalid_argument("polar task needs 1 <= p <= n equations");

  // G o C as a circuit with outputs G_1..G_p
  Circuit g;
  {
    CircuitBuilder b(n);
    std::vector<Expr> x = b.inputs();
    if (task.change) {
      const QMatrix& c = *task.change;
      if (c.rows() != n || c.cols() != n || rank(c) != n) throw std::invalid_argument("coordinate change must be invertible");
      std::vector<Expr> y;
      for (std::size_t i = 0; i < n; ++i) {
        Expr acc = b.constant(Rational(0));
        for (std::size_t j = 0; j < n; ++j)
          if (sgn(c(i, j)) != 0) acc = acc + b.scale(x[j], c(i, j));
        y.push_back(acc);
      }
      x = y;
    }
    auto outs = inline_circuit(b, eq, x);
    for (std::size_t k = 0; k < p; ++k) b.add_output(outs[k], "G" + std::to_string(k + 1));
    g = b.build();
  }
  std::vector<std::size_t> all(p);
  for (std::size_t k = 0; k < p; ++k) all[k] = k;
  Circuit jac = jacobian_circuit(g, all);

  CircuitBuilder b(n);
  auto x = b.inputs();
  auto gv = inline_circuit(b, g, x);
  auto jv = inline_circuit(b, jac, x);
  OutputGroups grp;
  grp.p = p;
  grp.s = n;
  for (std::size_t k = 0; k < p; ++k) grp.eqs.push_back(b.add_output(gv[k], "G" + std::to_string(k + 1)));
  for (std::size_t k = 0; k < p * n; ++k)
    grp.F.push_back(b.add_output(jv[k], "dG" + std::to_string(k / n + 1) + "/dX" + std::to_string(k % n + 1)));

  std::mt19937_64 rng(seed ^ 0xa5a5a5a5ULL);
  QMatrix a = task.a ? *task.a : random_matrix(n - p, n, rng);
  Circuit base = b.build().with_groups(grp);
  DegeneracyProblem pre = DegeneracyProblem::from_circuit(base, a, seed);
  HittingSequence hs = choose_hitting_sequence(pre);

  // H = sum of the squares of the chart minors
  CircuitBuilder hb(base);
  OutputGroups g2 = grp;
  for (std::size_t k = 0; k < base.num_outputs(); ++k) hb.add_output(hb.base_output(k), base.output_names()[k]);
  Expr h = hb.constant(Rational(0));
  for (const auto& cols : hs.columns) {
    Matrix<Expr> d(p, p, hb.constant(Rational(0)));
    for (std::size_t k = 0; k < p; ++k)
      for (std::size_t l = 0; l < p; ++l) d(k, l) = hb.base_output(grp.f(k, cols[l]));
    Expr det = determinant(hb, d);
    h = h + det * det;
  }
  g2.ineq = hb.add_output(h, "H");
  if (hitting) *hitting = hs;
  return DegeneracyProblem::from_circuit(hb.build().with_groups(g2), a, seed);
}

PolarResult polar_sample_points(const PolarTask& task, const SolveOptions& opt, unsigned digits) {
  HittingSequence hs;
  PolarResult r{polar_problem(task, opt.seed, &hs), {}, {}};
  SolveOptions o = opt;
  o.hitting = hs;
  r.solve = solve(r.problem, o);
  if (!r.solve.report.modulus) r.points = real_points(r.solve.resolution, digits);
  return r;
}

DegeneracyProblem fiber_problem(const Circuit& map, const QMatrix& a) {
  const std::size_t n = map.num_inputs();
  if (map.num_outputs() != n) throw std::invalid_argument("an endomorphism needs n components");
  CircuitBuilder b(n);
  auto outs = inline_circuit(b, map, b.inputs());
  OutputGroups g;
  g.p = 1;
  g.s = n + 1;
  for (std::size_t k = 0; k < n; ++k) g.F.push_back(b.add_output(outs[k], "F" + std::to_string(k + 1)));
  g.F.push_back(b.add_output(b.constant(Rational(1)), "one"));
  return DegeneracyProblem::from_circuit(b.build().with_groups(g), a);
}

bool maps_to_target(const Circuit& map, const GeometricResolution<Rational>& g, const std::vector<Rational>& target) {
  if (g.empty()) return true;
  QuoRing<Rational> ring(g.P);
  std::vector<QuoElem<Rational>> x;
  for (const auto& q : g.Q) x.push_back(ring.from_poly(q));
  auto v = map.evaluate(x, ring.zero());
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!(v[k] - ring.scalar(target[k])).is_zero()) return false;
  return true;
}

FiberResult generic_fiber(const Circuit& map, const SolveOptions& opt, std::optional<QMatrix> a) {
  const std::size_t n = map.num_inputs();
  std::mt19937_64 rng(opt.seed ^ 0xf1be7ULL);
  QMatrix am = a ? *a : random_matrix(n, n + 1, rng);
  if (sgn(am(0, n)) == 0) throw std::invalid_argument("a_{1,n+1} must be nonzero");
  FiberResult r{fiber_problem(map, am), {}, 0, {}};
  r.solve = solve(r.problem, opt);
  r.cardinality = r.solve.resolution.degree();
  for (std::size_t k = 0; k < n; ++k) r.target.push_back(am(0, k) / am(0, n));
  return r;
}

DegeneracyProblem homotopy_problem(const Circuit& f, const Circuit& g, const QMatrix& a) {
  const std::size_t n = f.num_inputs();
  if (g.num_inputs() != n || f.num_outputs() != n || g.num_outputs() != n)
    throw std::invalid_argument("homotopy needs two systems of n equations in n variables");
  CircuitBuilder b(n);
  auto x = b.inputs();
  auto fv = inline_circuit(b, f, x);
  auto gv = inline_circuit(b, g, x);
  OutputGroups grp;
  grp.p = 2;
  grp.s = n + 2;
  Expr one = b.constant(Rational(1)), zero = b.constant(Rational(0));
  for (std::size_t k = 0; k < n; ++k) grp.F.push_back(b.add_output(fv[k], "F" + std::to_string(k + 1)));
  grp.F.push_back(b.add_output(one, "F_one"));
  grp.F.push_back(b.add_output(zero, "F_zero"));
  for (std::size_t k = 0; k < n; ++k) grp.F.push_back(b.add_output(gv[k], "G" + std::to_string(k + 1)));
  grp.F.push_back(b.add_output(zero, "G_zero"));
  grp.F.push_back(b.add_output(one, "G_one"));
  return DegeneracyProblem::from_circuit(b.build().with_groups(grp), a);
}

HomotopyResult homotopy_count(const Circuit& f, const Circuit& g, const SolveOptions& opt, std::optional<QMatrix> a) {
  const std::size_t n = f.num_inputs();
  std::mt19937_64 rng(opt.seed ^ 0x40a07ULL);
  QMatrix am = a ? *a : random_matrix(n, n + 2, rng);
  HomotopyResult r{homotopy_problem(f, g, am), {}, 0};
  r.solve = solve(r.problem, opt);
  r.count = r.solve.resolution.degree();
  return r;
}

}  // namespace degloc
