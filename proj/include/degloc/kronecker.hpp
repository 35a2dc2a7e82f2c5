#pragma once

#include <atomic>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "degloc/circuit.hpp"
#include "degloc/matrix.hpp"
#include "degloc/quotient.hpp"
#include "degloc/series.hpp"
#include "degloc/tangent.hpp"

namespace degloc {

/// Noether coordinates Y with X = M Y and Y = M^{-1} X.
struct Frame {
  QMatrix M, Minv;

  std::size_t n() const { return M.rows(); }
  static Frame identity(std::size_t n);
  static Frame from_inverse(const QMatrix& minv);
  /// M^{-1} unit upper triangular with entries drawn from [-bound, bound].
  static Frame random(std::size_t n, std::mt19937_64& rng, long bound = 1L << 16);
};

template <class F>
Matrix<F> to_field(const QMatrix& a) {
  std::vector<F> d;
  d.reserve(a.data().size());
  for (const auto& q : a.data()) d.push_back(FieldTraits<F>::from_rational(q));
  return Matrix<F>(a.rows(), a.cols(), std::move(d));
}

template <class F>
std::vector<F> to_field(const std::vector<Rational>& a) {
  std::vector<F> r;
  r.reserve(a.size());
  for (const auto& q : a) r.push_back(FieldTraits<F>::from_rational(q));
  return r;
}

/// A * y for a scalar matrix A and a vector over an F-algebra.
template <class R, class F>
std::vector<R> apply_matrix(const Matrix<F>& a, const std::vector<R>& y) {
  std::vector<R> x;
  x.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    R s = zero_like(y.at(0));
    bool first = true;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const F& c = a(i, j);
      if (FieldTraits<F>::is_zero(c)) continue;
      R term = c == FieldTraits<F>::one() ? y[j] : scale(y[j], c);
      if (first) {
        s = std::move(term);
        first = false;
      } else {
        s += term;
      }
    }
    x.push_back(std::move(s));
  }
  return x;
}

/// Kronecker representation of an equidimensional variety of dimension m
/// by its fiber over the lifting point: Y_1..Y_m = z, the points of the
/// fiber are (z, v(t)) for the roots t of Q, where t is the value of the
/// primitive element u = lambda . Y_{>m}.
template <class F>
struct LiftingFiber {
  std::vector<std::size_t> system;  // circuit outputs, n - m of them
  Frame frame;
  std::vector<F> z;
  std::vector<F> lambda;
  UPoly<F> Q;
  std::vector<UPoly<F>> v;

  std::size_t n() const { return frame.n(); }
  std::size_t dim() const { return z.size(); }
  bool empty() const { return Q.degree() < 1; }
  std::size_t degree() const { return empty() ? 0 : static_cast<std::size_t>(Q.degree()); }
};

/// Zero-dimensional variety in X coordinates: X_i = Q_i(T) over the roots of P,
/// where T is the value of the linear form u . X.
template <class F>
struct GeometricResolution {
  std::vector<F> u;
  UPoly<F> P;
  std::vector<UPoly<F>> Q;

  bool empty() const { return P.degree() < 1; }
  std::size_t degree() const { return empty() ? 0 : static_cast<std::size_t>(P.degree()); }
};

struct InvariantReport {
  bool squarefree = true;
  bool residual = true;
  bool primitive = true;
  bool jacobian = true;
  bool ok() const { return squarefree && residual && primitive && jacobian; }
  std::string describe() const;
};

/// Process-wide audit of every fiber the engine emits.
struct AuditCounters {
  std::atomic<std::uint64_t> checked{0};
  std::atomic<std::uint64_t> failures{0};
};
AuditCounters& audit_counters();
void set_audit_enabled(bool on);
bool audit_enabled();

namespace detail {

template <class F>
using Elem = QuoElem<F>;
template <class F>
using Ser = Series<QuoElem<F>>;

template <class F>
std::vector<QuoElem<F>> fiber_coordinates(const LiftingFiber<F>& f, const QuoRing<F>& ring) {
  std::vector<QuoElem<F>> y;
  y.reserve(f.n());
  for (const auto& zi : f.z) y.push_back(ring.scalar(zi));
  for (const auto& vj : f.v) y.push_back(ring.from_poly(vj));
  return y;
}

/// Values of the selected outputs at the fiber points.
template <class F>
std::vector<QuoElem<F>> evaluate_on_fiber(const Circuit& c, const LiftingFiber<F>& f, const QuoRing<F>& ring,
                                          const std::vector<std::size_t>& outs) {
  auto x = apply_matrix(to_field<F>(f.frame.M), fiber_coordinates(f, ring));
  return c.select(outs).evaluate(x, ring.zero());
}

/// Inverse of a square matrix over a commutative ring through the adjugate.
template <class R>
Matrix<R> inverse_by_adjugate(const Matrix<R>& a, const R& one) {
  R d = det_berkowitz(a, one);
  R dinv = d.inverse();
  Matrix<R> adj = adjugate(a, one);
  std::vector<R> e;
  e.reserve(adj.data().size());
  for (const auto& x : adj.data()) e.push_back(x * dinv);
  return Matrix<R>(a.rows(), a.cols(), std::move(e));
}

/// Reparametrization of a finite point set given by coordinates
/// coords(t) over the roots of Q, with respect to u = lambda . coords.
/// Inputs are the traces p_i = Tr(u^i) (0 <= i <= D) and
/// q_j,i = Tr(coords_j u^i) (0 <= i < D).
template <class F>
std::pair<UPoly<F>, std::vector<UPoly<F>>> from_traces(const std::vector<F>& p,
                                                       const std::vector<std::vector<F>>& q, std::size_t d) {
  UPoly<F> qn = from_power_sums(p, d);
  if (!is_squarefree(qn)) throw NotPrimitive("linear form does not separate the points");
  UPoly<F> dinv = invmod(qn.derivative(), qn);
  std::vector<UPoly<F>> out;
  const auto& qc = qn.coeffs();
  for (const auto& tr : q) {
    std::vector<F> w(d, FieldTraits<F>::zero());
    for (std::size_t k = 0; k < d; ++k) {
      F s = FieldTraits<F>::zero();
      for (std::size_t i = 0; k + 1 + i <= d; ++i) s = s + qc[k + 1 + i] * tr[i];
      w[k] = s;
    }
    out.push_back(mulmod(UPoly<F>(std::move(w)), dinv, qn));
  }
  return {std::move(qn), std::move(out)};
}

}  // namespace detail

/// Squarefreeness, residuals, primitive-element identity and Jacobian
/// invertibility of a fiber.
template <class F>
InvariantReport check_invariants(const Circuit& c, const LiftingFiber<F>& f) {
  InvariantReport rep;
  if (f.empty()) return rep;
  const std::size_t n = f.n(), m = f.dim(), k = n - m;
  rep.squarefree = f.Q.is_monic() && is_squarefree(f.Q);
  if (!rep.squarefree) return rep;
  QuoRing<F> ring(f.Q);
  auto y = detail::fiber_coordinates(f, ring);
  QuoElem<F> u = ring.zero();
  for (std::size_t j = 0; j < k; ++j) u += y[m + j].scaled(f.lambda[j]);
  rep.primitive = u == ring.gen();
  if (f.system.size() != k) {
    rep.residual = rep.jacobian = false;
    return rep;
  }
  if (k == 0) return rep;
  using TE = Tangent<QuoElem<F>>;
  std::vector<TE> ty;
  for (std::size_t i = 0; i < n; ++i)
    ty.push_back(i < m ? TE::constant(y[i], k) : TE::variable(y[i], k, i - m));
  auto tx = apply_matrix(to_field<F>(f.frame.M), ty);
  auto vals = c.select(f.system).evaluate(tx, TE::constant(ring.zero(), k));
  Matrix<QuoElem<F>> jac(k, k, ring.zero());
  for (std::size_t i = 0; i < k; ++i) {
    if (!vals[i].value().is_zero()) rep.residual = false;
    for (std::size_t j = 0; j < k; ++j) jac(i, j) = vals[i].d(j);
  }
  rep.jacobian = det_berkowitz(jac, ring.one()).is_unit();
  return rep;
}

/// Checks the invariants, updates the audit counters and throws
/// RandomnessFailure on a violation.
template <class F>
void audit(const Circuit& c, const LiftingFiber<F>& f) {
  if (!audit_enabled()) return;
  InvariantReport r = check_invariants(c, f);
  audit_counters().checked++;
  if (!r.ok()) {
    audit_counters().failures++;
    throw RandomnessFailure("fiber invariant violated: " + r.describe());
  }
}

/// Fiber of the whole space A^n at the point z (dimension n, one point).
template <class F>
LiftingFiber<F> ambient_fiber(const Frame& frame, std::vector<F> z) {
  LiftingFiber<F> f;
  f.frame = frame;
  f.z = std::move(z);
  f.Q = UPoly<F>::monomial(FieldTraits<F>::one(), 1);
  return f;
}

/// Power series parametrization of the curve Y_{<=m} = z + t w lifted
/// through the fiber by Newton iteration.
template <class F>
struct CurveLift {
  std::unique_ptr<QuoRing<F>> ring;
  std::vector<Series<QuoElem<F>>> y;   // Y_1..Y_n
  std::vector<Series<QuoElem<F>>> dy;  // dY_{>m}/dt
};

template <class F>
CurveLift<F> lift_curve(const Circuit& c, const LiftingFiber<F>& f, const std::vector<F>& w, std::size_t sigma,
                        bool with_tangent) {
  using E = QuoElem<F>;
  using S = Series<E>;
  using TS = Tangent<S>;
  const std::size_t n = f.n(), m = f.dim(), k = n - m;
  CurveLift<F> out;
  out.ring = std::make_unique<QuoRing<F>>(f.Q);
  const QuoRing<F>& ring = *out.ring;
  const Matrix<F> M = to_field<F>(f.frame.M);
  Circuit sys = c.select(f.system);
  if (sigma == 0) sigma = 1;

  auto free_coord = [&](std::size_t i, std::size_t prec) {
    return S::linear(ring.scalar(f.z[i]), ring.scalar(w[i]), prec);
  };
  std::vector<S> dep;
  for (std::size_t j = 0; j < k; ++j) dep.push_back(S::constant(ring.from_poly(f.v[j]), 1));

  auto jacobian_step = [&](std::size_t prec, std::size_t dirs, bool seed_free) {
    std::vector<TS> ys;
    ys.reserve(n);
    for (std::size_t i = 0; i < m; ++i) {
      TS t = TS::constant(free_coord(i, prec), dirs);
      if (seed_free) t.d()[k] = S::constant(ring.scalar(w[i]), prec);
      ys.push_back(std::move(t));
    }
    for (std::size_t j = 0; j < k; ++j) ys.push_back(TS::variable(dep[j].extend(prec), dirs, j));
    auto xs = apply_matrix(M, ys);
    return sys.evaluate(xs, TS::constant(S::constant(ring.zero(), prec), dirs));
  };
  auto jinv_of = [&](const std::vector<TS>& vals, std::size_t prec) {
    Matrix<S> J(k, k, S::constant(ring.zero(), prec));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) J(i, j) = vals[i].d(j);
    try {
      return detail::inverse_by_adjugate(J, S::constant(ring.one(), prec));
    } catch (const NotInvertible&) {
      throw SingularJacobian("Jacobian of the lifting system is singular at the fiber");
    }
  };

  if (k > 0) {
    std::size_t prec = 1;
    while (prec < sigma) {
      const std::size_t np = std::min(2 * prec, sigma);
      auto vals = jacobian_step(np, k, false);
      Matrix<S> Jinv = jinv_of(vals, np);
      std::vector<S> nd;
      for (std::size_t j = 0; j < k; ++j) {
        S corr = Jinv(j, 0) * vals[0].value();
        for (std::size_t l = 1; l < k; ++l) corr += Jinv(j, l) * vals[l].value();
        nd.push_back(dep[j].extend(np) - corr);
      }
      dep = std::move(nd);
      prec = np;
    }
    for (auto& d : dep) d = d.extend(sigma);
    if (with_tangent) {
      auto vals = jacobian_step(sigma, k + 1, true);
      for (std::size_t i = 0; i < k; ++i)
        if (!vals[i].value().is_zero()) throw SingularJacobian("Newton lifting did not converge");
      Matrix<S> Jinv = jinv_of(vals, sigma);
      for (std::size_t j = 0; j < k; ++j) {
        S s = Jinv(j, 0) * vals[0].d(k);
        for (std::size_t l = 1; l < k; ++l) s += Jinv(j, l) * vals[l].d(k);
        out.dy.push_back(-s);
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) out.y.push_back(free_coord(i, sigma));
  for (auto& d : dep) out.y.push_back(std::move(d));
  return out;
}

enum class CleanMode { KeepZeros, RemoveZeros };

/// Keeps (or removes) the fiber points where the output h vanishes.
template <class F>
LiftingFiber<F> clean_nonzeros(const Circuit& c, const LiftingFiber<F>& f, std::size_t h, CleanMode mode) {
  if (f.empty()) return f;
  QuoRing<F> ring(f.Q);
  UPoly<F> hv = detail::evaluate_on_fiber(c, f, ring, {h})[0].to_poly();
  UPoly<F> g = hv.is_zero() ? f.Q : gcd(f.Q, hv);
  LiftingFiber<F> r = f;
  r.Q = mode == CleanMode::KeepZeros ? g : (f.Q / g).monic();
  for (auto& vj : r.v) vj = r.empty() ? UPoly<F>() : vj % r.Q;
  return r;
}

template <class F>
struct IntersectTrace {
  UPoly<F> pre_clean;       // minimal polynomial of the intersection before cleaning
  std::size_t bound = 0;    // Bezout bound used for the lifting precision
};

/// Fiber of (V cap {g = 0}) minus {avoid = 0}, restricted to the zeros of
/// every output in `keep`. The last free coordinate Y_m becomes the new
/// primitive element. `new_system` defaults to the old system plus g.
template <class F>
LiftingFiber<F> intersect_with_hypersurface(const Circuit& c, const LiftingFiber<F>& f, std::size_t g,
                                            const std::vector<std::size_t>& avoid,
                                            const std::vector<std::size_t>& keep = {},
                                            std::vector<std::size_t> new_system = {},
                                            IntersectTrace<F>* trace = nullptr) {
  using T = FieldTraits<F>;
  using E = QuoElem<F>;
  using S = Series<E>;
  using TS = Tangent<S>;
  const std::size_t n = f.n(), m = f.dim();
  if (m == 0) throw std::invalid_argument("cannot intersect a zero-dimensional fiber");
  if (new_system.empty()) {
    new_system = f.system;
    new_system.push_back(g);
  }
  LiftingFiber<F> out;
  out.system = new_system;
  out.frame = f.frame;
  out.z.assign(f.z.begin(), f.z.end() - 1);
  out.lambda.assign(n - m + 1, T::zero());
  out.lambda[0] = T::one();
  if (f.empty()) {
    out.v.assign(n - m + 1, UPoly<F>());
    return out;
  }
  const std::size_t k = n - m;
  const long dg = c.select({g}).exact_degrees()[0];
  if (dg < 0) throw PromiseViolationDetected("hypersurface equation vanishes identically");
  const std::size_t bound = f.degree() * static_cast<std::size_t>(dg);
  const std::size_t sigma = bound + 2;
  if (trace) trace->bound = bound;

  std::vector<F> w(m, T::zero());
  w[m - 1] = T::one();
  CurveLift<F> lift = lift_curve(c, f, w, sigma, true);
  const QuoRing<F>& ring = *lift.ring;

  // Shear the free coordinate by eps_j Y_j; to first order the curve moves
  // by -Y_j times its tangent vector (e_m, dY_{>m}/dt).
  std::vector<TS> ys;
  ys.reserve(n);
  for (std::size_t i = 0; i + 1 < m; ++i) ys.push_back(TS::constant(lift.y[i], k));
  {
    TS ym = TS::constant(lift.y[m - 1], k);
    for (std::size_t j = 0; j < k; ++j) ym.d()[j] = -lift.y[m + j];
    ys.push_back(std::move(ym));
  }
  for (std::size_t l = 0; l < k; ++l) {
    TS yl = TS::constant(lift.y[m + l], k);
    for (std::size_t j = 0; j < k; ++j) yl.d()[j] = -(lift.dy[l] * lift.y[m + j]);
    ys.push_back(std::move(yl));
  }
  auto xs = apply_matrix(to_field<F>(f.frame.M), ys);
  TS gamma = c.select({g}).evaluate(xs, TS::constant(S::constant(ring.zero(), sigma), k))[0];

  const S& g0 = gamma.value();
  if (!g0[0].is_unit()) throw BadLiftingPoint("hypersurface meets the lifting fiber");
  Series<F> N0 = series_norm(g0);
  if (!T::is_zero(N0[sigma - 1])) throw RandomnessFailure("curve is not in Noether position");
  S ginv = g0.inverse();
  UPoly<F> n0 = to_upoly(N0.truncate(bound + 1));
  std::vector<UPoly<F>> nj;
  for (std::size_t j = 0; j < k; ++j) nj.push_back(to_upoly((N0 * series_trace(gamma.d(j) * ginv)).truncate(bound + 1)));

  if (n0.degree() <= 0) {
    out.Q = UPoly<F>::constant(T::one());
    out.v.assign(n - m + 1, UPoly<F>());
    if (trace) trace->pre_clean = out.Q;
    return out;
  }
  UPoly<F> d0 = n0.derivative();
  UPoly<F> G = gcd(n0, d0);
  UPoly<F> Sq = (n0 / G).monic();
  UPoly<F> dinv;
  try {
    dinv = invmod(d0 / G, Sq);
  } catch (const NotInvertible&) {
    throw RandomnessFailure("intersection multiplicity vanishes in the coefficient field");
  }
  const F shift = -f.z[m - 1];
  out.Q = Sq.taylor_shift(shift);
  out.v.push_back(UPoly<F>::monomial(T::one(), 1) % out.Q);
  for (std::size_t j = 0; j < k; ++j) {
    auto [qt, rm] = divmod(nj[j], G);
    if (!rm.is_zero()) throw RandomnessFailure("non-transversal intersection");
    UPoly<F> yj = mulmod(-qt, dinv, Sq);
    out.v.push_back(yj.taylor_shift(shift) % out.Q);
  }
  if (trace) trace->pre_clean = out.Q;

  // The residual test catches a free coordinate that does not separate.
  {
    QuoRing<F> r2(out.Q);
    std::vector<std::size_t> outs = f.system;
    outs.push_back(g);
    for (const auto& e : detail::evaluate_on_fiber(c, out, r2, outs))
      if (!e.is_zero()) throw NotPrimitive("intersection points share a coordinate value");
  }
  for (auto h : avoid) out = clean_nonzeros(c, out, h, CleanMode::RemoveZeros);
  for (auto h : keep) out = clean_nonzeros(c, out, h, CleanMode::KeepZeros);
  audit(c, out);
  return out;
}

/// Same fiber presented with the primitive element lambda' . Y_{>m}.
template <class F>
LiftingFiber<F> change_primitive_element(const Circuit& c, const LiftingFiber<F>& f, const std::vector<F>& lambda) {
  LiftingFiber<F> r = f;
  r.lambda = lambda;
  if (f.empty()) return r;
  const std::size_t d = f.degree(), k = f.v.size();
  QuoRing<F> ring(f.Q);
  std::vector<QuoElem<F>> y;
  for (const auto& vj : f.v) y.push_back(ring.from_poly(vj));
  QuoElem<F> u = ring.zero();
  for (std::size_t j = 0; j < k; ++j) u += y[j].scaled(lambda[j]);
  std::vector<F> p(d + 1);
  std::vector<std::vector<F>> q(k, std::vector<F>(d));
  QuoElem<F> pw = ring.one();
  for (std::size_t i = 0; i <= d; ++i) {
    p[i] = pw.trace();
    if (i < d)
      for (std::size_t j = 0; j < k; ++j) q[j][i] = (y[j] * pw).trace();
    pw = pw * u;
  }
  auto [qn, vn] = detail::from_traces(p, q, d);
  r.Q = std::move(qn);
  r.v = std::move(vn);
  audit(c, r);
  return r;
}

/// Same variety, fiber over the new lifting point z'.
template <class F>
LiftingFiber<F> change_lifting_point(const Circuit& c, const LiftingFiber<F>& f, const std::vector<F>& znew) {
  using T = FieldTraits<F>;
  const std::size_t m = f.dim(), k = f.n() - m;
  LiftingFiber<F> r = f;
  r.z = znew;
  if (f.empty()) return r;
  const std::size_t d = f.degree();
  std::vector<F> w(m);
  for (std::size_t i = 0; i < m; ++i) w[i] = znew[i] - f.z[i];
  CurveLift<F> lift = lift_curve(c, f, w, d + 2, false);
  const QuoRing<F>& ring = *lift.ring;
  using S = Series<QuoElem<F>>;
  S u = S::constant(ring.zero(), d + 2);
  for (std::size_t j = 0; j < k; ++j) u += lift.y[m + j].scaled(f.lambda[j]);
  // Traces are polynomials in the curve parameter; evaluate them at 1.
  auto at_one = [](const Series<F>& s) {
    F a = T::zero();
    for (const auto& x : s.coeffs()) a = a + x;
    return a;
  };
  std::vector<F> p(d + 1);
  std::vector<std::vector<F>> q(k, std::vector<F>(d));
  S pw = S::constant(ring.one(), d + 2);
  for (std::size_t i = 0; i <= d; ++i) {
    p[i] = at_one(series_trace(pw));
    if (i < d)
      for (std::size_t j = 0; j < k; ++j) q[j][i] = at_one(series_trace(lift.y[m + j] * pw));
    pw = pw * u;
  }
  try {
    auto [qn, vn] = detail::from_traces(p, q, d);
    r.Q = std::move(qn);
    r.v = std::move(vn);
  } catch (const NotPrimitive&) {
    throw BadLiftingPoint("new lifting point lies on the discriminant");
  }
  try {
    audit(c, r);
  } catch (const RandomnessFailure&) {
    throw BadLiftingPoint("new lifting fiber fails the invariant checks");
  }
  return r;
}

/// The variety in new Noether coordinates with lifting point znew and
/// primitive element lambda over the new dependent coordinates.
template <class F>
LiftingFiber<F> change_coordinates(const Circuit& c, const LiftingFiber<F>& f, const Frame& frame,
                                   const std::vector<Rational>& zq, const std::vector<F>& lambda) {
  const std::vector<F> znew = to_field<F>(zq);
  const std::size_t n = f.n(), m = f.dim();
  // Slice with the hyperplanes Y'_i = z'_i, one free coordinate at a time.
  CircuitBuilder b(c);
  for (std::size_t o = 0; o < c.num_outputs(); ++o) b.add_output(b.base_output(o), c.output_names()[o]);
  auto x = b.inputs();
  std::vector<std::size_t> planes;
  for (std::size_t i = 0; i < m; ++i) {
    Expr e = b.constant(0);
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(frame.Minv(i, j)) != 0) e = e + x[j].scaled(frame.Minv(i, j));
    planes.push_back(b.add_output(e - b.constant(zq[i]), "plane" + std::to_string(i + 1)));
  }
  Circuit ext = b.build();
  LiftingFiber<F> cur = f;
  for (std::size_t i = 0; i < m; ++i) cur = intersect_with_hypersurface(ext, cur, planes[i], {});
  LiftingFiber<F> r;
  r.system = f.system;
  r.frame = frame;
  r.z = znew;
  if (cur.empty()) {
    r.lambda = lambda;
    r.Q = cur.Q;
    r.v.assign(n - m, UPoly<F>());
    return r;
  }
  // New coordinates Y' = Minv' M Y of the points.
  Matrix<F> A = to_field<F>(frame.Minv) * to_field<F>(f.frame.M);
  std::vector<UPoly<F>> yp = apply_matrix(A, cur.v);
  for (std::size_t i = 0; i < m; ++i)
    if (!(yp[i] % cur.Q == UPoly<F>::constant(znew[i]) % cur.Q))
      throw RandomnessFailure("coordinate change lost the lifting point");
  r.Q = cur.Q;
  r.lambda.assign(n - m, FieldTraits<F>::zero());
  r.v.assign(yp.begin() + static_cast<long>(m), yp.end());
  for (auto& vj : r.v) vj = vj % r.Q;
  // r.lambda is not yet consistent; reparametrize before auditing.
  const std::size_t d = r.degree(), k = n - m;
  QuoRing<F> ring(r.Q);
  std::vector<QuoElem<F>> y;
  for (const auto& vj : r.v) y.push_back(ring.from_poly(vj));
  QuoElem<F> u = ring.zero();
  for (std::size_t j = 0; j < k; ++j) u += y[j].scaled(lambda[j]);
  std::vector<F> p(d + 1);
  std::vector<std::vector<F>> q(k, std::vector<F>(d));
  QuoElem<F> pw = ring.one();
  for (std::size_t i = 0; i <= d; ++i) {
    p[i] = pw.trace();
    if (i < d)
      for (std::size_t j = 0; j < k; ++j) q[j][i] = (y[j] * pw).trace();
    pw = pw * u;
  }
  auto [qn, vn] = detail::from_traces(p, q, d);
  r.Q = std::move(qn);
  r.v = std::move(vn);
  r.lambda = lambda;
  audit(c, r);
  return r;
}

/// Geometric resolution in X coordinates of a zero-dimensional fiber.
template <class F>
GeometricResolution<F> to_resolution(const LiftingFiber<F>& f) {
  if (f.dim() != 0) throw std::invalid_argument("resolution of a positive-dimensional fiber");
  const std::size_t n = f.n();
  GeometricResolution<F> r;
  Matrix<F> minv = to_field<F>(f.frame.Minv);
  r.u.assign(n, FieldTraits<F>::zero());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) r.u[j] = r.u[j] + f.lambda[i] * minv(i, j);
  r.P = f.Q;
  if (f.empty()) {
    r.Q.assign(n, UPoly<F>());
    return r;
  }
  r.Q = apply_matrix(to_field<F>(f.frame.M), f.v);
  for (auto& q : r.Q) q = q % r.P;
  return r;
}

/// Same point set with respect to the linear form u' . X.
template <class F>
GeometricResolution<F> change_primitive_element(const GeometricResolution<F>& g, const std::vector<F>& u) {
  GeometricResolution<F> r = g;
  r.u = u;
  if (g.empty()) return r;
  const std::size_t d = g.degree(), n = g.Q.size();
  QuoRing<F> ring(g.P);
  std::vector<QuoElem<F>> x;
  for (const auto& q : g.Q) x.push_back(ring.from_poly(q));
  QuoElem<F> t = ring.zero();
  for (std::size_t j = 0; j < n; ++j) t += x[j].scaled(u[j]);
  std::vector<F> p(d + 1);
  std::vector<std::vector<F>> q(n, std::vector<F>(d));
  QuoElem<F> pw = ring.one();
  for (std::size_t i = 0; i <= d; ++i) {
    p[i] = pw.trace();
    if (i < d)
      for (std::size_t j = 0; j < n; ++j) q[j][i] = (x[j] * pw).trace();
    pw = pw * t;
  }
  auto [pn, qn] = detail::from_traces(p, q, d);
  r.P = std::move(pn);
  r.Q = std::move(qn);
  return r;
}

/// Union of resolutions sharing the same linear form; later duplicates are
/// dropped. Throws NotPrimitive when two distinct points share a value of u.
template <class F>
GeometricResolution<F> merge_resolutions(const std::vector<GeometricResolution<F>>& parts) {
  if (parts.empty()) throw std::invalid_argument("nothing to merge");
  GeometricResolution<F> acc;
  acc.u = parts[0].u;
  acc.P = UPoly<F>::constant(FieldTraits<F>::one());
  acc.Q.assign(parts[0].Q.size(), UPoly<F>());
  for (const auto& part : parts) {
    if (part.u != acc.u) throw std::invalid_argument("resolutions with different primitive elements");
    if (part.empty()) continue;
    UPoly<F> g = gcd(acc.P, part.P);
    for (std::size_t i = 0; i < acc.Q.size(); ++i)
      if (g.degree() > 0 && !((acc.Q[i] - part.Q[i]) % g).is_zero())
        throw NotPrimitive("distinct points share a value of the primitive element");
    UPoly<F> fresh = part.P / g;
    if (fresh.degree() < 1) continue;
    fresh = fresh.monic();
    if (acc.empty()) {
      acc.P = fresh;
      for (std::size_t i = 0; i < acc.Q.size(); ++i) acc.Q[i] = part.Q[i] % fresh;
      continue;
    }
    for (std::size_t i = 0; i < acc.Q.size(); ++i) acc.Q[i] = crt_pair(acc.Q[i], acc.P, part.Q[i] % fresh, fresh);
    acc.P = acc.P * fresh;
  }
  return acc;
}

/// Exact residual check of a resolution: the selected outputs vanish
/// (or, for `nonzero`, are units) at every point.
template <class F>
bool resolution_satisfies(const Circuit& c, const GeometricResolution<F>& g, const std::vector<std::size_t>& zeros,
                          const std::vector<std::size_t>& nonzero = {}) {
  if (g.empty()) return true;
  QuoRing<F> ring(g.P);
  std::vector<QuoElem<F>> x;
  for (const auto& q : g.Q) x.push_back(ring.from_poly(q));
  if (!zeros.empty())
    for (const auto& e : c.select(zeros).evaluate(x, ring.zero()))
      if (!e.is_zero()) return false;
  if (!nonzero.empty())
    for (const auto& e : c.select(nonzero).evaluate(x, ring.zero()))
      if (!e.is_unit()) return false;
  return true;
}

/// Canonical text: one line per field, coefficient lists low to high.
template <class F>
std::string to_text(const LiftingFiber<F>& f) {
  std::string s = "dim " + std::to_string(f.dim()) + "\n";
  s += "system";
  for (auto i : f.system) s += " " + std::to_string(i);
  s += "\nMinv";
  for (const auto& x : f.frame.Minv.data()) s += " " + to_string(x);
  s += "\nz";
  for (const auto& x : f.z) s += " " + FieldTraits<F>::str(x);
  s += "\nlambda";
  for (const auto& x : f.lambda) s += " " + FieldTraits<F>::str(x);
  s += "\nQ " + to_string(f.Q) + "\n";
  for (std::size_t j = 0; j < f.v.size(); ++j)
    s += "v" + std::to_string(f.dim() + j + 1) + " " + to_string(f.v[j]) + "\n";
  return s;
}

template <class F>
std::string to_text(const GeometricResolution<F>& g) {
  if (g.empty()) return "EMPTY\n";
  std::string s = "u";
  for (const auto& x : g.u) s += " " + FieldTraits<F>::str(x);
  s += "\nP " + to_string(g.P) + "\n";
  for (std::size_t i = 0; i < g.Q.size(); ++i) s += "Q" + std::to_string(i + 1) + " " + to_string(g.Q[i]) + "\n";
  return s;
}

}  // namespace degloc
