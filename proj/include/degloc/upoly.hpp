#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "degloc/field.hpp"

namespace degloc {

/// Dense univariate polynomial over a field F, coefficients stored from low
/// to high degree. The zero polynomial has no coefficients.
template <class F>
class UPoly {
 public:
  using T = FieldTraits<F>;
  using scalar_type = F;

  UPoly() = default;
  explicit UPoly(std::vector<F> c) : c_(std::move(c)) { trim(); }
  UPoly(std::initializer_list<F> c) : c_(c) { trim(); }

  static UPoly constant(const F& a) { return UPoly(std::vector<F>{a}); }
  static UPoly monomial(const F& a, std::size_t k) {
    std::vector<F> c(k + 1, T::zero());
    c[k] = a;
    return UPoly(std::move(c));
  }
  /// T - a
  static UPoly linear_root(const F& a) { return UPoly(std::vector<F>{-a, T::one()}); }
  static UPoly from_ints(std::initializer_list<long> c) {
    std::vector<F> v;
    for (long x : c) v.push_back(T::from_int(x));
    return UPoly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const std::vector<F>& coeffs() const { return c_; }
  std::vector<F>& mutable_coeffs() { return c_; }

  F operator[](std::size_t i) const { return i < c_.size() ? c_[i] : T::zero(); }
  F lc() const { return c_.empty() ? T::zero() : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == T::one(); }

  void trim() {
    while (!c_.empty() && T::is_zero(c_.back())) c_.pop_back();
  }

  UPoly zero_like() const { return UPoly(); }
  UPoly one_like() const { return constant(T::one()); }
  UPoly scalar_like(const F& a) const { return constant(a); }
  UPoly scaled(const F& a) const {
    if (T::is_zero(a)) return UPoly();
    std::vector<F> r(c_);
    for (auto& x : r) x = x * a;
    return UPoly(std::move(r));
  }

  UPoly monic() const {
    if (c_.empty()) return *this;
    return scaled(T::inverse(lc()));
  }

  F operator()(const F& x) const {
    F r = T::zero();
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<F> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * T::from_int(static_cast<long>(i));
    return UPoly(std::move(r));
  }

  /// Coefficients of degree < k.
  UPoly truncate(std::size_t k) const {
    if (c_.size() <= k) return *this;
    return UPoly(std::vector<F>(c_.begin(), c_.begin() + static_cast<long>(k)));
  }

  /// x^k * f
  UPoly shift_up(std::size_t k) const {
    if (c_.empty()) return *this;
    std::vector<F> r(k, T::zero());
    r.insert(r.end(), c_.begin(), c_.end());
    return UPoly(std::move(r));
  }

  /// f(T + a)
  UPoly taylor_shift(const F& a) const {
    std::vector<F> r(c_);
    const std::size_t n = r.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) r[j - 1] = r[j - 1] + a * r[j];
    return UPoly(std::move(r));
  }

  /// f(a*T)
  UPoly scale_variable(const F& a) const {
    std::vector<F> r(c_);
    F pw = T::one();
    for (auto& x : r) {
      x = x * pw;
      pw = pw * a;
    }
    return UPoly(std::move(r));
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()), T::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()), T::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a) {
    std::vector<F> r(a.c_);
    for (auto& x : r) x = -x;
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return UPoly();
    std::vector<F> r;
    mul_into(r, a.c_.data(), a.c_.size(), b.c_.data(), b.c_.size());
    return UPoly(std::move(r));
  }
  UPoly& operator+=(const UPoly& b) { return *this = *this + b; }
  UPoly& operator-=(const UPoly& b) { return *this = *this - b; }
  UPoly& operator*=(const UPoly& b) { return *this = *this * b; }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  /// Schoolbook product of raw coefficient arrays; result has na+nb-1 entries.
  static void mul_into(std::vector<F>& r, const F* a, std::size_t na, const F* b, std::size_t nb);

 private:
  std::vector<F> c_;
};

// Lazy-reduction product for word-size prime fields: products are summed in
// 128 bits and reduced once every few terms.
template <>
inline void UPoly<Zp>::mul_into(std::vector<Zp>& r, const Zp* a, std::size_t na, const Zp* b,
                                std::size_t nb) {
  const std::size_t n = na + nb - 1;
  r.assign(n, Zp());
  const std::uint64_t p = Zp::modulus();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t lo = k >= nb - 1 ? k - (nb - 1) : 0;
    std::size_t hi = std::min(k, na - 1);
    unsigned __int128 acc = 0;
    unsigned cnt = 0;
    for (std::size_t i = lo; i <= hi; ++i) {
      acc += static_cast<unsigned __int128>(a[i].value()) * b[k - i].value();
      if (++cnt == 15) {
        acc %= p;
        cnt = 0;
      }
    }
    r[k] = Zp::raw(static_cast<std::uint64_t>(acc % p));
  }
}

template <class F>
void UPoly<F>::mul_into(std::vector<F>& r, const F* a, std::size_t na, const F* b,
                        std::size_t nb) {
  r.assign(na + nb - 1, T::zero());
  for (std::size_t i = 0; i < na; ++i) {
    if (T::is_zero(a[i])) continue;
    for (std::size_t j = 0; j < nb; ++j) r[i + j] += a[i] * b[j];
  }
}

/// Quotient and remainder; throws NotInvertible on division by zero.
template <class F>
std::pair<UPoly<F>, UPoly<F>> divmod(const UPoly<F>& a, const UPoly<F>& b) {
  using T = FieldTraits<F>;
  if (b.is_zero()) throw NotInvertible("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly<F>(), a};
  std::vector<F> r = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  const std::size_t dq = static_cast<std::size_t>(a.degree() - b.degree());
  std::vector<F> q(dq + 1, T::zero());
  const F inv = T::inverse(b.lc());
  const auto& bc = b.coeffs();
  for (std::size_t k = dq + 1; k-- > 0;) {
    F c = r[k + db] * inv;
    q[k] = c;
    if (T::is_zero(c)) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] = r[k + j] - c * bc[j];
  }
  r.resize(db);
  return {UPoly<F>(std::move(q)), UPoly<F>(std::move(r))};
}

template <class F>
UPoly<F> operator%(const UPoly<F>& a, const UPoly<F>& b) {
  return divmod(a, b).second;
}
template <class F>
UPoly<F> operator/(const UPoly<F>& a, const UPoly<F>& b) {
  return divmod(a, b).first;
}

template <class F>
bool divides(const UPoly<F>& b, const UPoly<F>& a) {
  return (a % b).is_zero();
}

/// Monic gcd; gcd(0, 0) = 0.
template <class F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
  while (!b.is_zero()) {
    UPoly<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) monic.
template <class F>
struct XGcd {
  UPoly<F> g, s, t;
};

template <class F>
XGcd<F> xgcd(const UPoly<F>& a, const UPoly<F>& b) {
  using T = FieldTraits<F>;
  UPoly<F> r0 = a, r1 = b;
  UPoly<F> s0 = UPoly<F>::constant(T::one()), s1;
  UPoly<F> t0, t1 = UPoly<F>::constant(T::one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly<F> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    UPoly<F> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  F inv = T::inverse(r0.lc());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

/// Inverse of a modulo m; throws NotInvertible when gcd(a, m) != 1.
template <class F>
UPoly<F> invmod(const UPoly<F>& a, const UPoly<F>& m) {
  auto x = xgcd(a % m, m);
  if (x.g.degree() != 0) throw NotInvertible("polynomial not invertible modulo the modulus");
  return x.s % m;
}

template <class F>
UPoly<F> mulmod(const UPoly<F>& a, const UPoly<F>& b, const UPoly<F>& m) {
  return (a * b) % m;
}

template <class F>
UPoly<F> powmod(UPoly<F> base, unsigned long e, const UPoly<F>& m) {
  UPoly<F> r = UPoly<F>::constant(FieldTraits<F>::one()) % m;
  base = base % m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

/// f / gcd(f, f'), made monic. Requires characteristic zero or larger than deg f.
template <class F>
UPoly<F> squarefree_part(const UPoly<F>& f) {
  if (f.degree() <= 0) return f.monic();
  UPoly<F> g = gcd(f, f.derivative());
  return (f / g).monic();
}

template <class F>
bool is_squarefree(const UPoly<F>& f) {
  if (f.degree() <= 0) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

/// Resultant with the Sylvester convention: the determinant of the
/// Sylvester matrix with the rows of f on top, i.e. lc(f)^deg g times the
/// product of g over the roots of f.
template <class F>
F resultant(UPoly<F> f, UPoly<F> g) {
  using T = FieldTraits<F>;
  if (f.is_zero() || g.is_zero()) return T::zero();
  F acc = T::one();
  for (;;) {
    long n = f.degree(), m = g.degree();
    if (n == 0) {
      F r = T::one();
      for (long i = 0; i < m; ++i) r = r * f.lc();
      return acc * r;
    }
    if (m == 0) {
      F r = T::one();
      for (long i = 0; i < n; ++i) r = r * g.lc();
      return acc * r;
    }
    if (m < n) {
      // Res(f, g) = (-1)^{nm} Res(g, f)
      if ((n * m) % 2 == 1) acc = -acc;
      std::swap(f, g);
      continue;
    }
    UPoly<F> r = g % f;
    if (r.is_zero()) return T::zero();
    // Res(f, g) = lc(f)^(m - deg r) Res(f, r)
    for (long i = 0; i < m - r.degree(); ++i) acc = acc * f.lc();
    g = std::move(r);
  }
}

/// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
template <class F>
UPoly<F> interpolate(const std::vector<F>& xs, const std::vector<F>& ys) {
  using T = FieldTraits<F>;
  const std::size_t n = xs.size();
  // Newton divided differences.
  std::vector<F> dd(ys);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      F den = xs[i] - xs[i - j];
      dd[i] = (dd[i] - dd[i - 1]) * T::inverse(den);
      if (i == j) break;
    }
  UPoly<F> r;
  for (std::size_t k = n; k-- > 0;) r = r * UPoly<F>::linear_root(xs[k]) + UPoly<F>::constant(dd[k]);
  return r;
}

/// Product of (T - r) over the given roots.
template <class F>
UPoly<F> from_roots(const std::vector<F>& roots) {
  UPoly<F> r = UPoly<F>::constant(FieldTraits<F>::one());
  for (const auto& x : roots) r = r * UPoly<F>::linear_root(x);
  return r;
}

/// Chinese remaindering of two residues modulo coprime moduli.
template <class F>
UPoly<F> crt_pair(const UPoly<F>& a, const UPoly<F>& ma, const UPoly<F>& b, const UPoly<F>& mb) {
  // x = a + ma * ((b - a) * ma^{-1} mod mb)
  UPoly<F> inv = invmod(ma, mb);
  UPoly<F> k = mulmod(b - a, inv, mb);
  return a + ma * k;
}

/// Polynomial composition f(g).
template <class F>
UPoly<F> compose(const UPoly<F>& f, const UPoly<F>& g) {
  UPoly<F> r;
  const auto& c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) r = r * g + UPoly<F>::constant(c[i]);
  return r;
}

/// Horner evaluation of f at an element of any ring with a scalar embedding.
template <class F, class R>
R evaluate_at(const UPoly<F>& f, const R& x) {
  R r = zero_like(x);
  const auto& c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + scalar_like(x, c[i]);
  return r;
}

template <class F>
std::ostream& operator<<(std::ostream& os, const UPoly<F>& f) {
  os << '[';
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) os << ", ";
    os << FieldTraits<F>::str(f.coeffs()[i]);
  }
  return os << ']';
}

template <class F>
std::string to_string(const UPoly<F>& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ", ";
    s += FieldTraits<F>::str(f.coeffs()[i]);
  }
  return s + "]";
}

using QPoly = UPoly<Rational>;
using ZpPoly = UPoly<Zp>;

/// Reduction of a rational polynomial modulo the active prime.
/// Throws DivisorNotInvertible on a vanishing denominator.
inline ZpPoly reduce(const QPoly& f) {
  std::vector<Zp> c;
  c.reserve(f.size());
  for (const auto& x : f.coeffs()) c.push_back(FieldTraits<Zp>::from_rational(x));
  return ZpPoly(std::move(c));
}

}  // namespace degloc
