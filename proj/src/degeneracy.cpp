#include "degloc/degeneracy.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "degloc/modular.hpp"

namespace degloc {

void DegeneracyProblem::validate() const {
  const auto& g = circuit.groups();
  if (n != circuit.num_inputs()) throw std::invalid_argument("n does not match the circuit");
  if (q != g.eqs.size() || q > n) throw std::invalid_argument("bad number of equations");
  if (p != g.p || s != g.s || p == 0 || p > s) throw std::invalid_argument("bad shape of F");
  if (s - p < r()) throw std::invalid_argument("s - p must be at least n - q");
  if (a.rows() != s - p || a.cols() != s) throw std::invalid_argument("a must be (s - p) x s");
  if (s > p && rank(a) != s - p) throw std::invalid_argument("a must have full row rank");
}

DegeneracyProblem DegeneracyProblem::from_circuit(Circuit c, QMatrix a, std::uint64_t seed) {
  DegeneracyProblem pr;
  const auto& g = c.groups();
  pr.n = c.num_inputs();
  pr.q = g.eqs.size();
  pr.p = g.p;
  pr.s = g.s;
  pr.d = std::max<long>(1, c.degree_metadata());
  pr.circuit = std::move(c);
  pr.a = std::move(a);
  pr.seed = seed;
  pr.validate();
  return pr;
}

DegeneracyProblem make_problem(std::size_t n, const std::vector<std::string>& eqs, const std::string& ineq,
                               const std::vector<std::vector<std::string>>& F, const QMatrix& a,
                               std::uint64_t seed) {
  CircuitBuilder b(n);
  auto vars = default_variables(n);
  OutputGroups g;
  for (std::size_t k = 0; k < eqs.size(); ++k)
    g.eqs.push_back(b.add_output(parse_polynomial(b, eqs[k], vars), "G" + std::to_string(k + 1)));
  if (!ineq.empty()) g.ineq = b.add_output(parse_polynomial(b, ineq, vars), "H");
  g.p = F.size();
  g.s = F.empty() ? 0 : F[0].size();
  for (std::size_t k = 0; k < g.p; ++k) {
    if (F[k].size() != g.s) throw std::invalid_argument("ragged matrix F");
    for (std::size_t l = 0; l < g.s; ++l)
      g.F.push_back(b.add_output(parse_polynomial(b, F[k][l], vars),
                                 "F" + std::to_string(k + 1) + "_" + std::to_string(l + 1)));
  }
  return DegeneracyProblem::from_circuit(b.build().with_groups(g), a, seed);
}

QMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  for (;;) {
    QMatrix m(rows, cols, Rational(0));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(dist(rng));
    if (rows == 0 || rank(m) == std::min(rows, cols)) return m;
  }
}

TBuild build_T(const DegeneracyProblem& prob, std::size_t i) {
  const std::size_t r = prob.r(), s = prob.s, p = prob.p;
  if (i < 1 || i > r + 1) throw std::invalid_argument("level out of range");
  TBuild t;
  t.view.level = i;
  t.view.p = p;
  t.view.s = s;
  t.view.a_rows = s - p - i + 1;
  auto range = [](std::size_t k) {
    std::vector<std::size_t> c(k);
    for (std::size_t j = 0; j < k; ++j) c[j] = j;
    return c;
  };
  t.minors.push_back({MinorRole::Delta, i, 0, range(p)});
  // m_{i-1} is the upper-left minor of T(a_i); for i = 1 it is det T(a_1).
  t.minors.push_back({MinorRole::m, i, i - 1, range(s - i + 1)});
  for (std::size_t j = s - i + 1; j <= s; ++j) {
    auto c = range(s - i);
    c.push_back(j - 1);
    t.minors.push_back({MinorRole::M, i, j, c});
  }
  if (i <= r) {
    for (std::size_t j = s - i; j <= s; ++j) {
      auto c = range(s - i - 1);
      c.push_back(j - 1);
      t.minors.push_back({MinorRole::N, i + 1, j, c});
    }
  }
  return t;
}

namespace {

struct ChartBuilder {
  const DegeneracyProblem& prob;
  CircuitBuilder b;
  Matrix<Expr> fb;   // F b
  QMatrix ab;        // a b

  ChartBuilder(const DegeneracyProblem& pr, const QMatrix& bm) : prob(pr), b(pr.circuit) {
    const std::size_t p = pr.p, s = pr.s;
    for (std::size_t k = 0; k < pr.circuit.num_outputs(); ++k)
      b.add_output(b.base_output(k), pr.circuit.output_names()[k]);
    fb = Matrix<Expr>(p, s, b.constant(Rational(0)));
    for (std::size_t k = 0; k < p; ++k)
      for (std::size_t l = 0; l < s; ++l) {
        Expr acc = b.constant(Rational(0));
        for (std::size_t j = 0; j < s; ++j)
          if (sgn(bm(j, l)) != 0) acc = acc + b.scale(b.base_output(pr.f(k, j)), bm(j, l));
        fb(k, l) = acc;
      }
    ab = pr.a.rows() == 0 ? QMatrix(0, s, Rational(0)) : pr.a * bm;
  }

  /// Minor of T'(a_level) on the given columns (all rows).
  Expr minor(std::size_t level, const std::vector<std::size_t>& cols) {
    const std::size_t p = prob.p, rows = prob.s - level + 1;
    if (cols.size() != rows) throw std::logic_error("minor is not square");
    Matrix<Expr> m(rows, rows, b.constant(Rational(0)));
    for (std::size_t k = 0; k < rows; ++k)
      for (std::size_t l = 0; l < rows; ++l)
        m(k, l) = k < p ? fb(k, cols[l]) : b.constant(ab(k - p, cols[l]));
    return determinant(b, m);
  }
};

std::string minor_name(const MinorSpec& spec) {
  switch (spec.role) {
    case MinorRole::Delta: return "Delta";
    case MinorRole::m: return "m" + std::to_string(spec.index);
    case MinorRole::M: return "M" + std::to_string(spec.level) + "_" + std::to_string(spec.index);
    case MinorRole::N: return "N" + std::to_string(spec.level) + "_" + std::to_string(spec.index);
  }
  return "minor";
}

}  // namespace

Circuit determinant_circuit(const DegeneracyProblem& prob, const MinorSpec& spec, const QMatrix& b) {
  ChartBuilder cb(prob, b);
  std::size_t level = spec.role == MinorRole::Delta ? prob.s - prob.p + 1 : spec.level;
  cb.b.add_output(cb.minor(level, spec.cols), minor_name(spec));
  return cb.b.build().with_groups(prob.circuit.groups());
}

ChartCircuit build_chart(const DegeneracyProblem& prob, const QMatrix& b) {
  const std::size_t r = prob.r(), s = prob.s, p = prob.p;
  ChartBuilder cb(prob, b);
  ChartCircuit cc;
  cc.b = b;
  auto cols_for = [&](std::size_t level, std::size_t j) {
    std::vector<std::size_t> c;
    for (std::size_t k = 0; k + level < s; ++k) c.push_back(k);
    c.push_back(j - 1);
    return c;
  };
  auto add = [&](std::size_t level, std::size_t j) {
    if (cc.border.count({level, j})) return;
    std::string name = "T" + std::to_string(level) + "_" + std::to_string(j);
    cc.border[{level, j}] = cb.b.add_output(cb.minor(level, cols_for(level, j)), name);
  };
  {
    Matrix<Expr> d(p, p, cb.b.constant(Rational(0)));
    for (std::size_t k = 0; k < p; ++k)
      for (std::size_t l = 0; l < p; ++l) d(k, l) = cb.fb(k, l);
    cc.delta = cb.b.add_output(determinant(cb.b, d), "Delta");
  }
  if (r >= 1) {
    add(1, s);
    for (std::size_t i = 1; i <= r; ++i) {
      add(i + 1, s - i);  // m_i
      if (i < r)
        for (std::size_t j = s - i + 1; j <= s; ++j) add(i + 1, j);
    }
  }
  cc.circuit = cb.b.build().with_groups(prob.circuit.groups());
  return cc;
}

QMatrix column_permutation(std::size_t s, const std::vector<std::size_t>& cols) {
  std::vector<std::size_t> order = cols;
  for (std::size_t j = 0; j < s; ++j)
    if (std::find(cols.begin(), cols.end(), j) == cols.end()) order.push_back(j);
  QMatrix b(s, s, Rational(0));
  for (std::size_t l = 0; l < s; ++l) b(order[l], l) = 1;
  return b;
}

namespace {

void next_subsets(std::size_t s, std::size_t p, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> c(p);
  for (std::size_t j = 0; j < p; ++j) c[j] = j;
  for (;;) {
    out.push_back(c);
    std::size_t k = p;
    while (k > 0 && c[k - 1] == s - p + k - 1) --k;
    if (k == 0) return;
    ++c[k - 1];
    for (std::size_t j = k; j < p; ++j) c[j] = c[j - 1] + 1;
  }
}

/// {h1 = 0} contained in {h2 = 0}, tested on a random line: the squarefree
/// part of h1 restricted to the line divides h2 restricted to the line.
/// Returns nullopt when h1 vanishes identically.
std::optional<bool> zero_set_contained(const Circuit& c, std::size_t h1, std::size_t h2, std::uint64_t seed) {
  PrimeScope scope(2305843009213693951ULL);
  std::mt19937_64 rng(seed);
  std::vector<ZpPoly> x;
  for (std::size_t j = 0; j < c.num_inputs(); ++j) x.push_back(ZpPoly({Zp(rng()), Zp(rng() | 1)}));
  auto v = c.select({h1, h2}).evaluate(x, ZpPoly());
  if (v[0].is_zero()) return std::nullopt;
  if (v[0].degree() == 0) return true;
  ZpPoly sq = v[0] / gcd(v[0], v[0].derivative());
  return (v[1] % sq).is_zero();
}

}  // namespace

HittingSequence choose_hitting_sequence(const DegeneracyProblem& prob) {
  const std::size_t p = prob.p, s = prob.s;
  HittingSequence hs;
  std::vector<std::vector<std::size_t>> subsets;
  next_subsets(s, p, subsets);

  // One chart is enough when some p-minor of F is a nonzero constant.
  for (const auto& cols : subsets) {
    CircuitBuilder b(prob.circuit);
    Matrix<Expr> d(p, p, b.constant(Rational(0)));
    for (std::size_t k = 0; k < p; ++k)
      for (std::size_t l = 0; l < p; ++l) d(k, l) = b.base_output(prob.f(k, cols[l]));
    Expr det = determinant(b, d);
    if (det.is_constant() && !det.is_zero()) {
      hs.b.push_back(column_permutation(s, cols));
      hs.columns.push_back(cols);
      hs.skipped = subsets.size() - 1;
      return hs;
    }
  }

  bool covered = false;
  for (const auto& cols : subsets) {
    if (covered) {
      ++hs.skipped;
      continue;
    }
    QMatrix b = column_permutation(s, cols);
    CircuitBuilder cb(prob.circuit);
    Matrix<Expr> d(p, p, cb.constant(Rational(0)));
    for (std::size_t k = 0; k < p; ++k)
      for (std::size_t l = 0; l < p; ++l) d(k, l) = cb.base_output(prob.f(k, cols[l]));
    std::size_t delta = cb.add_output(determinant(cb, d), "Delta");
    std::size_t h = prob.has_ineq() ? cb.add_output(cb.base_output(prob.ineq()), "H") : SIZE_MAX;
    Circuit c = cb.build();
    auto contained = zero_set_contained(c, delta, h == SIZE_MAX ? delta : h, prob.seed ^ 0x9e3779b97f4a7c15ULL);
    if (!contained) {
      ++hs.skipped;  // identically zero minor
      continue;
    }
    hs.b.push_back(b);
    hs.columns.push_back(cols);
    // Delta cannot vanish on V, so this chart already sees all of W.
    if (h != SIZE_MAX && *contained) covered = true;
  }
  if (hs.b.empty()) {
    // Every p-minor vanishes: W is empty, keep one chart to report it.
    hs.b.push_back(column_permutation(s, subsets[0]));
    hs.columns.push_back(subsets[0]);
    hs.skipped = subsets.size() - 1;
  }
  return hs;
}

std::string SolveReport::signature() const {
  std::ostringstream o;
  o << "V";
  for (auto d : v_degrees) o << " " << d;
  for (const auto& c : charts) {
    o << " |";
    for (auto d : c.degrees) o << " " << d;
    o << " /";
    for (auto d : c.pre_clean) o << " " << d;
  }
  o << " u" << candidate;
  return o.str();
}

Choices make_choices(const DegeneracyProblem& prob, std::uint64_t seed, std::size_t attempt) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(attempt), std::uint64_t{0x6465676c6f63ULL}};
  std::mt19937_64 rng(seq);
  Choices ch;
  ch.frame = Frame::random(prob.n, rng);
  std::uniform_int_distribution<long> dist(-(1L << 16), 1L << 16);
  for (std::size_t i = 0; i < prob.n; ++i) ch.z.push_back(Rational(dist(rng)));
  return ch;
}

std::vector<Rational> primitive_candidate(std::size_t n, std::size_t k) {
  // X_1 + c X_2 + c^2 X_3 + ... for c = 1, -1, 2, -2, ...
  long c = static_cast<long>(k / 2 + 1);
  if (k % 2 == 1) c = -c;
  std::vector<Rational> u(n);
  Rational pw(1);
  for (std::size_t j = 0; j < n; ++j) {
    u[j] = pw;
    pw *= c;
  }
  return u;
}

Prepared prepare(const DegeneracyProblem& prob, const std::optional<HittingSequence>& hitting) {
  prob.validate();
  Prepared pr;
  pr.prob = prob;
  pr.hitting = hitting ? *hitting : choose_hitting_sequence(prob);
  for (const auto& b : pr.hitting.b) pr.charts.push_back(build_chart(prob, b));
  return pr;
}

std::vector<std::uint64_t> flatten_residues(const GeometricResolution<Zp>& g) {
  std::vector<std::uint64_t> r;
  if (g.empty()) return r;
  const std::size_t d = g.degree();
  for (std::size_t i = 0; i <= d; ++i) r.push_back(g.P[i].value());
  for (const auto& q : g.Q)
    for (std::size_t i = 0; i < d; ++i) r.push_back(q[i].value());
  return r;
}

namespace {

GeometricResolution<Rational> unflatten(const std::vector<Rational>& u, std::size_t n, std::size_t d,
                                        const std::vector<Rational>& vals) {
  GeometricResolution<Rational> g;
  g.u = u;
  if (d == 0) {
    g.P = QPoly::constant(Rational(1));
    g.Q.assign(n, QPoly());
    return g;
  }
  g.P = QPoly(std::vector<Rational>(vals.begin(), vals.begin() + d + 1));
  for (std::size_t j = 0; j < n; ++j) {
    auto it = vals.begin() + d + 1 + j * d;
    g.Q.push_back(QPoly(std::vector<Rational>(it, it + d)));
  }
  return g;
}

struct Image {
  std::uint64_t prime = 0;
  bool ok = false;
  std::string error;
  SolveReport report;
  std::size_t degree = 0;
  std::vector<std::uint64_t> residues;
};

Image run_modular(const Prepared& prep, const Choices& ch, std::uint64_t prime) {
  Image img;
  img.prime = prime;
  PrimeScope scope(prime);
  try {
    auto run = run_pipeline<Zp>(prep, ch);
    img.ok = true;
    img.report = run.report;
    img.degree = run.result.degree();
    img.residues = flatten_residues(run.result);
  } catch (const Error& e) {
    img.error = e.what();
  } catch (const std::invalid_argument& e) {
    img.error = e.what();
  }
  return img;
}

std::vector<Image> run_batch(const Prepared& prep, const Choices& ch, const std::vector<std::uint64_t>& primes,
                             bool parallel) {
  std::vector<Image> out(primes.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t k = 0; k < primes.size(); ++k) out[k] = run_modular(prep, ch, primes[k]);
  } else {
    for (std::size_t k = 0; k < primes.size(); ++k) out[k] = run_modular(prep, ch, primes[k]);
  }
  return out;
}

std::size_t batch_size(bool parallel) {
#ifdef _OPENMP
  if (parallel) return static_cast<std::size_t>(std::max(1, omp_get_max_threads()));
#endif
  (void)parallel;
  return 1;
}

bool squarefree(const QPoly& p) { return gcd(p, p.derivative()).degree() == 0; }

/// Exact checks of a reconstructed resolution over Q.
bool post_verify(const DegeneracyProblem& prob, const GeometricResolution<Rational>& g, bool membership) {
  if (g.empty()) return true;
  if (!squarefree(g.P)) return false;
  std::vector<std::size_t> nonzero;
  if (prob.has_ineq()) nonzero.push_back(prob.ineq());
  if (!resolution_satisfies(prob.circuit, g, prob.eqs(), nonzero)) return false;
  if (membership) {
    try {
      if (!membership_test(prob, std::max<std::size_t>(prob.r(), 1), g, prob.seed ^ 0x5bd1e995ULL)) return false;
    } catch (const NotOnVariety&) {
      return false;
    }
  }
  return true;
}

}  // namespace

SolveResult solve(const DegeneracyProblem& prob, const SolveOptions& opt) {
  std::optional<HittingSequence> hitting = opt.hitting;
  Prepared prep = prepare(prob, hitting);
  SolveResult res;
  SolveReport& rep = res.report;

  auto choices_for = [&](std::size_t attempt) {
    Choices ch = make_choices(prob, opt.seed, attempt);
    if (opt.frame) ch.frame = *opt.frame;
    if (opt.lifting_point) ch.z = *opt.lifting_point;
    return ch;
  };

  if (opt.prime) {
    for (std::size_t attempt = 0; attempt < opt.max_attempts; ++attempt) {
      Choices ch = choices_for(attempt);
      Image img = run_modular(prep, ch, *opt.prime);
      ++rep.attempts;
      if (!img.ok) {
        ++rep.retries;
        continue;
      }
      std::vector<Rational> vals;
      for (auto v : img.residues) vals.emplace_back(Integer(static_cast<unsigned long>(v)));
      std::vector<Rational> u;
      {
        PrimeScope scope(*opt.prime);
        for (const auto& x : to_field<Zp>(primitive_candidate(prob.n, img.report.candidate)))
          u.push_back(Rational(Integer(static_cast<unsigned long>(x.value()))));
      }
      SolveReport r = img.report;
      r.attempts = rep.attempts;
      r.retries = rep.retries;
      r.primes = {*opt.prime};
      r.modulus = *opt.prime;
      res.report = r;
      res.resolution = unflatten(u, prob.n, img.degree, vals);
      return res;
    }
    throw RandomnessFailure("no successful run modulo the given prime");
  }

  std::mt19937_64 prime_rng(opt.seed * 0x2545f4914f6cdd1dULL + 0x1234567ULL);
  const std::size_t batch = batch_size(opt.parallel);
  std::string last_error = "no attempt";
  for (std::size_t attempt = 0; attempt < opt.max_attempts; ++attempt) {
    ++rep.attempts;
    Choices ch = choices_for(attempt);
    struct Group {
      RationalReconstructor rr;
      std::vector<std::uint64_t> primes;
    };
    std::map<std::string, Group> groups;
    std::optional<std::vector<Rational>> candidate;
    std::string cand_sig;
    std::size_t used = 0, failures = 0, successes = 0;
    bool accepted = false, abandon = false;
    std::vector<Rational> final_vals;
    Image final_img;
    std::vector<std::uint64_t> failed;

    while (!accepted && !abandon && used < opt.max_primes) {
      std::vector<std::uint64_t> primes;
      for (std::size_t k = 0; k < batch; ++k) primes.push_back(random_prime(prime_rng, 62));
      used += primes.size();
      for (auto& img : run_batch(prep, ch, primes, opt.parallel)) {
        if (!img.ok) {
          ++failures;
          last_error = img.error;
          failed.push_back(img.prime);
          if (successes == 0 && failures >= 3) abandon = true;
          continue;
        }
        ++successes;
        const std::string sig = img.report.signature();
        if (candidate && sig == cand_sig && reduces_to(*candidate, img.prime, img.residues)) {
          accepted = true;
          final_vals = *candidate;
          final_img = std::move(img);
          break;
        }
        Group& grp = groups[sig];
        grp.rr.add(img.prime, img.residues);
        grp.primes.push_back(img.prime);
        // vote: follow the signature seen modulo the most primes
        bool leading = true;
        for (const auto& [k, v] : groups)
          if (v.primes.size() > grp.primes.size()) leading = false;
        if (leading) {
          candidate = grp.rr.try_reconstruct();
          cand_sig = sig;
        }
      }
      if (!accepted && successes > 0 && failures > 4 * successes + 8) abandon = true;
    }
    if (!accepted) {
      ++rep.retries;
      for (auto pr : failed) rep.bad_primes.push_back(pr);
      continue;
    }

    GeometricResolution<Rational> g =
        unflatten(primitive_candidate(prob.n, final_img.report.candidate), prob.n, final_img.degree, final_vals);
    std::vector<std::uint64_t> bad = failed;
    for (const auto& [k, v] : groups)
      if (k != cand_sig) bad.insert(bad.end(), v.primes.begin(), v.primes.end());
    std::vector<std::uint64_t> used_primes = groups.at(cand_sig).primes;
    used_primes.push_back(final_img.prime);

    // small probe primes only cross-check the answer
    for (auto pp : opt.probe_primes) {
      Image im = run_modular(prep, ch, pp);
      bool agrees = im.ok && im.report.signature() == cand_sig && reduces_to(final_vals, pp, im.residues);
      if (!agrees) bad.push_back(pp);
    }

    if (!post_verify(prob, g, opt.verify)) {
      ++rep.retries;
      rep.bad_primes.insert(rep.bad_primes.end(), bad.begin(), bad.end());
      last_error = "post-verification failed";
      if (attempt + 1 == opt.max_attempts)
        throw PromiseViolationDetected("output does not satisfy the exact post-checks");
      continue;
    }
    SolveReport r = final_img.report;
    r.attempts = rep.attempts;
    r.retries = rep.retries;
    r.primes = used_primes;
    r.bad_primes = rep.bad_primes;
    r.bad_primes.insert(r.bad_primes.end(), bad.begin(), bad.end());
    r.verified = opt.verify;
    res.report = r;
    res.resolution = g;
    return res;
  }
  throw RandomnessFailure("all attempts failed: " + last_error);
}

QMatrix structured_u(std::size_t s, std::size_t cols, const std::vector<Rational>& u) {
  QMatrix m(s, cols, Rational(0));
  for (std::size_t k = 0; k < s; ++k)
    for (std::size_t l = 0; l < cols && l <= k; ++l) m(k, l) = k == l ? Rational(1) : u.at(k - l);
  return m;
}

namespace {

std::vector<Rational> draw_u(std::size_t s, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dist(-(1L << 30), 1L << 30);
  std::vector<Rational> u(s, Rational(0));
  for (std::size_t k = 1; k < s; ++k) u[k] = Rational(dist(rng));
  return u;
}

template <class R>
Matrix<R> times(const Matrix<R>& a, const QMatrix& b, const R& zero) {
  Matrix<R> r(a.rows(), b.cols(), zero);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      R acc = zero;
      for (std::size_t k = 0; k < a.cols(); ++k)
        if (sgn(b(k, j)) != 0) acc += scale(a(i, k), b(k, j));
      r(i, j) = acc;
    }
  return r;
}

}  // namespace

std::pair<bool, bool> rank_conditions(const QMatrix& Fx, const QMatrix& Tx, std::mt19937_64& rng,
                                      std::size_t draws) {
  const std::size_t p = Fx.rows(), s = Fx.cols();
  const std::size_t rows = Tx.rows();
  bool c1 = false, c2 = true;
  for (std::size_t t = 0; t < draws; ++t) {
    auto u = draw_u(s, rng);
    QMatrix up = structured_u(s, p, u);
    QMatrix ui = structured_u(s, rows, u);
    if (sgn(det_berkowitz(Fx * up, Rational(1))) != 0) c1 = true;
    if (sgn(det_berkowitz(Tx * ui, Rational(1))) != 0) c2 = false;
  }
  return {c1, c2};
}

bool membership_test(const DegeneracyProblem& prob, std::size_t i, const QPoly& minpoly,
                     const std::vector<QPoly>& x, std::uint64_t seed, std::size_t draws) {
  GeometricResolution<Rational> g;
  g.P = minpoly.monic();
  g.Q = x;
  g.u.assign(prob.n, Rational(0));
  if (g.P.degree() < 1) throw std::invalid_argument("minimal polynomial of degree zero");
  return membership_test(prob, i, g, seed, draws);
}

bool membership_test(const DegeneracyProblem& prob, std::size_t i, const GeometricResolution<Rational>& g,
                     std::uint64_t seed, std::size_t draws) {
  using E = QuoElem<Rational>;
  const std::size_t n = prob.n, p = prob.p, s = prob.s;
  if (i < 1 || i > prob.r() + 1) throw std::invalid_argument("level out of range");
  if (g.empty()) return true;
  QuoRing<Rational> ring(g.P);
  std::vector<E> x;
  for (std::size_t j = 0; j < n; ++j) x.push_back(ring.from_poly(g.Q.at(j)));
  std::vector<std::size_t> outs = prob.eqs();
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t l = 0; l < s; ++l) outs.push_back(prob.f(k, l));
  if (prob.has_ineq()) outs.push_back(prob.ineq());
  auto vals = prob.circuit.select(outs).evaluate(x, ring.zero());
  for (std::size_t k = 0; k < prob.q; ++k)
    if (!vals[k].is_zero()) throw NotOnVariety("an equation does not vanish at the point");
  if (prob.has_ineq() && !vals.back().is_unit()) throw NotOnVariety("the inequation vanishes at the point");

  const std::size_t rows = s - i + 1;
  Matrix<E> Fx(p, s, ring.zero()), Tx(rows, s, ring.zero());
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t l = 0; l < s; ++l) Fx(k, l) = Tx(k, l) = vals[prob.q + k * s + l];
  for (std::size_t k = p; k < rows; ++k)
    for (std::size_t l = 0; l < s; ++l) Tx(k, l) = ring.scalar(prob.a(k - p, l));

  std::mt19937_64 rng(seed);
  QPoly common = g.P;  // points where every det(F u) drawn so far vanishes
  bool c2 = true;
  for (std::size_t t = 0; t < draws; ++t) {
    auto u = draw_u(s, rng);
    E d1 = det_berkowitz(times(Fx, structured_u(s, p, u), ring.zero()), ring.one());
    UPoly<Rational> dp = d1.to_poly();
    common = dp.is_zero() ? common : gcd(common, dp);
    E d2 = det_berkowitz(times(Tx, structured_u(s, rows, u), ring.zero()), ring.one());
    if (!d2.is_zero()) c2 = false;
  }
  return common.degree() == 0 && c2;
}

}  // namespace degloc
