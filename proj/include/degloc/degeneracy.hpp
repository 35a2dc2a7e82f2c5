#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "degloc/circuit.hpp"
#include "degloc/kronecker.hpp"

namespace degloc {

/// Input of the degeneracy solver: V = {G = 0} minus {H = 0} and the p x s
/// matrix F, all read from the output groups of `circuit`, plus the
/// (s - p) x s matrix a.
struct DegeneracyProblem {
  Circuit circuit;
  std::size_t n = 0, q = 0, p = 0, s = 0;
  QMatrix a;
  std::uint64_t seed = 1;
  long d = 1;

  std::size_t r() const { return n - q; }
  bool has_ineq() const { return circuit.groups().has_ineq(); }
  std::size_t ineq() const { return circuit.groups().ineq; }
  const std::vector<std::size_t>& eqs() const { return circuit.groups().eqs; }
  std::size_t f(std::size_t k, std::size_t l) const { return circuit.groups().f(k, l); }

  /// Throws std::invalid_argument when shapes or ranks are inconsistent.
  void validate() const;
  /// Sizes and degree bound taken from the circuit groups.
  static DegeneracyProblem from_circuit(Circuit c, QMatrix a, std::uint64_t seed = 1);
};

/// Problem from polynomial strings over X1..Xn; an empty `ineq` means H = 1.
DegeneracyProblem make_problem(std::size_t n, const std::vector<std::string>& eqs, const std::string& ineq,
                               const std::vector<std::vector<std::string>>& F, const QMatrix& a,
                               std::uint64_t seed = 1);

/// Random integer matrix with entries in [-bound, bound] and full row rank.
QMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, long bound = 1L << 20);

/// Rows of T(a_i) = [F; a_i], where a_i is the top s - p - i + 1 rows of a.
struct MatrixView {
  std::size_t level = 1;
  std::size_t p = 0, s = 0;
  std::size_t a_rows = 0;
  std::size_t rows() const { return p + a_rows; }
};

enum class MinorRole { Delta, m, M, N };

/// A minor of T(a_level) (rows: all rows of the view).
struct MinorSpec {
  MinorRole role;
  std::size_t level;
  std::size_t index;               // j for M/N, i for m
  std::vector<std::size_t> cols;   // 0-based, increasing
};

struct TBuild {
  MatrixView view;
  std::vector<MinorSpec> minors;
};

/// T(a_i) and the minors attached to it: Delta, m_{i-1} (upper-left),
/// and the bordered minors with columns 1..s-i plus one column j > s-i.
TBuild build_T(const DegeneracyProblem& prob, std::size_t i);

/// Circuit computing the determinant of the given minor of T(a_i) b on
/// top of the problem circuit; the result is its last output.
Circuit determinant_circuit(const DegeneracyProblem& prob, const MinorSpec& spec, const QMatrix& b);

/// Extended circuit for one chart: T' = [F b; a b] and the minors the
/// descending chain needs. Base outputs keep their indices.
struct ChartCircuit {
  QMatrix b;
  Circuit circuit;
  std::size_t delta = 0;
  /// border[{l, j}] = minor of T'(a_l) on columns 1..s-l and j (1-based j).
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> border;
  std::size_t minor(std::size_t level, std::size_t j) const { return border.at({level, j}); }
};

ChartCircuit build_chart(const DegeneracyProblem& prob, const QMatrix& b);

/// Charts covering W: one chart when F has a constant nonzero p-minor,
/// otherwise one chart per p-subset of columns, dropping the charts made
/// redundant by an earlier Delta that cannot vanish on V.
struct HittingSequence {
  std::vector<QMatrix> b;
  std::vector<std::vector<std::size_t>> columns;  // p-minor columns of F for each chart
  std::size_t skipped = 0;
};
HittingSequence choose_hitting_sequence(const DegeneracyProblem& prob);
/// Column permutation matrix moving `cols` to the front.
QMatrix column_permutation(std::size_t s, const std::vector<std::size_t>& cols);

struct ChartReport {
  std::vector<std::size_t> columns;
  std::vector<std::size_t> degrees;    // V_Delta, W(a_1), ..., W(a_r)
  std::vector<std::size_t> pre_clean;  // intersection degree before cleaning, per step
};

struct SolveReport {
  std::vector<std::size_t> v_degrees;  // after each equation G_k
  std::vector<ChartReport> charts;
  std::size_t skipped_charts = 0;
  std::size_t system_degree = 0;
  std::size_t candidate = 0;
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> bad_primes;
  std::size_t attempts = 0;
  std::size_t retries = 0;
  std::optional<std::uint64_t> modulus;  // set when the output is modulo a prime
  bool verified = false;
  std::string signature() const;
};

/// Random choices of one solving attempt; rational and independent of the prime.
struct Choices {
  Frame frame;
  std::vector<Rational> z;  // ambient lifting point, length n
};
Choices make_choices(const DegeneracyProblem& prob, std::uint64_t seed, std::size_t attempt);

/// Linear forms tried in order as the final primitive element.
std::vector<Rational> primitive_candidate(std::size_t n, std::size_t k);
constexpr std::size_t kMaxCandidates = 64;

/// Everything shared by the runs of one solve.
struct Prepared {
  DegeneracyProblem prob;
  HittingSequence hitting;
  std::vector<ChartCircuit> charts;
};
Prepared prepare(const DegeneracyProblem& prob, const std::optional<HittingSequence>& hitting = std::nullopt);

/// Intermediate fibers of one chart (for inspection and tests).
template <class F>
struct ChartRun {
  std::vector<LiftingFiber<F>> fibers;   // V_Delta, W(a_1), ..., W(a_r)
  std::vector<UPoly<F>> pre_clean;       // per intersection step
  GeometricResolution<F> result;         // in X coordinates
};

template <class F>
struct PipelineRun {
  LiftingFiber<F> vfiber;
  std::vector<ChartRun<F>> charts;
  GeometricResolution<F> result;
  SolveReport report;
};

/// Lifting fiber of V: one intersection per equation, removing the zeros of H.
template <class F>
LiftingFiber<F> fiber_of_V(const DegeneracyProblem& prob, const Circuit& c, const Choices& ch,
                           std::vector<std::size_t>* degrees = nullptr) {
  auto f = ambient_fiber<F>(ch.frame, to_field<F>(ch.z));
  std::vector<std::size_t> avoid;
  if (prob.has_ineq()) avoid.push_back(prob.ineq());
  for (auto g : prob.eqs()) {
    f = intersect_with_hypersurface(c, f, g, avoid);
    if (degrees) degrees->push_back(f.degree());
    if (f.empty()) break;
  }
  if (f.empty()) {
    // keep the shape of a fiber of dimension r
    f.z.resize(prob.r());
  }
  return f;
}

/// Descending chain W(a_1), ..., W(a_r) on one chart.
template <class F>
ChartRun<F> run_chart(const DegeneracyProblem& prob, const ChartCircuit& cc, const LiftingFiber<F>& vfiber) {
  const std::size_t r = prob.r(), s = prob.s;
  const Circuit& c = cc.circuit;
  ChartRun<F> run;
  auto f = clean_nonzeros(c, vfiber, cc.delta, CleanMode::RemoveZeros);
  run.fibers.push_back(f);
  std::vector<std::size_t> H;
  if (prob.has_ineq()) H.push_back(prob.ineq());
  for (std::size_t i = 0; i < r && !f.empty(); ++i) {
    std::vector<std::size_t> avoid = H;
    avoid.push_back(cc.delta);
    avoid.push_back(cc.minor(i + 2, s - i - 1));  // m_{i+1}
    std::vector<std::size_t> sys = prob.eqs();
    std::vector<std::size_t> keep;
    std::size_t g;
    if (i == 0) {
      g = cc.minor(1, s);
      sys.push_back(g);
    } else {
      g = cc.minor(i + 1, s - i);  // m_i
      for (std::size_t j = s - i; j <= s; ++j) sys.push_back(cc.minor(i + 1, j));
      for (std::size_t j = s - i + 1; j <= s; ++j) keep.push_back(cc.minor(i + 1, j));
    }
    IntersectTrace<F> tr;
    f = intersect_with_hypersurface(c, f, g, avoid, keep, sys, &tr);
    run.pre_clean.push_back(tr.pre_clean);
    run.fibers.push_back(f);
  }
  if (f.empty()) {
    run.result.P = UPoly<F>::constant(FieldTraits<F>::one());
    run.result.Q.assign(prob.n, UPoly<F>());
    return run;
  }
  run.result = to_resolution(f);
  return run;
}

/// Complete pipeline over the field F for fixed random choices.
template <class F>
PipelineRun<F> run_pipeline(const Prepared& prep, const Choices& ch) {
  const DegeneracyProblem& prob = prep.prob;
  PipelineRun<F> out;
  out.vfiber = fiber_of_V<F>(prob, prob.circuit, ch, &out.report.v_degrees);
  out.report.skipped_charts = prep.hitting.skipped;
  std::size_t delta = 0;
  for (auto dgr : out.report.v_degrees) delta = std::max(delta, dgr);
  std::vector<GeometricResolution<F>> parts;
  for (std::size_t t = 0; t < prep.charts.size(); ++t) {
    ChartRun<F> cr = run_chart<F>(prob, prep.charts[t], out.vfiber);
    ChartReport rep;
    rep.columns = prep.hitting.columns[t];
    for (const auto& f : cr.fibers) {
      rep.degrees.push_back(f.degree());
      delta = std::max(delta, f.degree());
    }
    for (const auto& pc : cr.pre_clean) rep.pre_clean.push_back(pc.degree() < 0 ? 0 : pc.degree());
    out.report.charts.push_back(std::move(rep));
    if (!cr.result.empty()) parts.push_back(cr.result);
    out.charts.push_back(std::move(cr));
  }
  out.report.system_degree = delta;
  if (parts.empty()) {
    out.result.u = to_field<F>(primitive_candidate(prob.n, 0));
    out.result.P = UPoly<F>::constant(FieldTraits<F>::one());
    out.result.Q.assign(prob.n, UPoly<F>());
    return out;
  }
  for (std::size_t k = 0; k < kMaxCandidates; ++k) {
    std::vector<F> u = to_field<F>(primitive_candidate(prob.n, k));
    try {
      std::vector<GeometricResolution<F>> moved;
      for (const auto& p : parts) moved.push_back(change_primitive_element(p, u));
      out.result = merge_resolutions(moved);
      out.report.candidate = k;
      break;
    } catch (const NotPrimitive&) {
      if (k + 1 == kMaxCandidates) throw RandomnessFailure("no separating linear form among the candidates");
    }
  }
  std::vector<std::size_t> nonzero;
  if (prob.has_ineq()) nonzero.push_back(prob.ineq());
  if (!resolution_satisfies(prob.circuit, out.result, prob.eqs(), nonzero))
    throw RandomnessFailure("output points do not lie on V");
  return out;
}

/// Options of the multi-modular driver.
struct SolveOptions {
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> prime;     // only compute modulo this prime
  bool verify = true;                     // exact post-checks incl. membership
  std::size_t max_attempts = 6;
  std::size_t max_primes = 2000;
  bool parallel = true;
  std::vector<std::uint64_t> probe_primes;  // small primes run as cross-checks only
  std::optional<HittingSequence> hitting;
  std::optional<Frame> frame;
  std::optional<std::vector<Rational>> lifting_point;
};

struct SolveResult {
  GeometricResolution<Rational> resolution;  // residues in [0, p) when report.modulus is set
  SolveReport report;
  bool empty() const { return resolution.empty(); }
};

/// Geometric resolution of W(a_r) (or of the points of V where rank F = p
/// when r = 0). Throws RandomnessFailure when every attempt failed and
/// PromiseViolationDetected when the exact post-checks fail.
SolveResult solve(const DegeneracyProblem& prob, const SolveOptions& opt = {});

/// The structured matrix U^{(i)} (s x (s - i + 1)) specialized at u_2..u_s.
QMatrix structured_u(std::size_t s, std::size_t cols, const std::vector<Rational>& u);

/// Both determinant conditions on explicit matrices F (p x s) and T (any
/// level): {det(F u) != 0 for some draw, det(T u^{(i)}) == 0 for all draws}.
std::pair<bool, bool> rank_conditions(const QMatrix& Fx, const QMatrix& Tx, std::mt19937_64& rng,
                                      std::size_t draws = 2);

/// Whether every point x (coordinates in Q[alpha] = Q[T]/(minpoly)) lies in
/// W(a_i). Throws NotOnVariety when some G(x) != 0 or H(x) = 0.
bool membership_test(const DegeneracyProblem& prob, std::size_t i, const QPoly& minpoly,
                     const std::vector<QPoly>& x, std::uint64_t seed = 7, std::size_t draws = 2);

/// membership_test for all points of a resolution at once.
bool membership_test(const DegeneracyProblem& prob, std::size_t i, const GeometricResolution<Rational>& g,
                     std::uint64_t seed = 7, std::size_t draws = 2);

/// Modular images of a resolution: u is shared, P and the Q_j flattened.
std::vector<std::uint64_t> flatten_residues(const GeometricResolution<Zp>& g);

}  // namespace degloc
