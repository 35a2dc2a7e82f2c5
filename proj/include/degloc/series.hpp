#pragma once

#include <algorithm>
#include <type_traits>
#include <vector>

#include "degloc/quotient.hpp"

namespace degloc {

template <class R>
struct is_quo_elem : std::false_type {};
template <class F>
struct is_quo_elem<QuoElem<F>> : std::true_type {};

/// Truncated power series sum_{k < prec} c_k t^k with coefficients in R.
///
/// Every stored coefficient is present, so a series always knows its
/// precision and (through c_0) the ring its coefficients live in.
template <class R>
class Series {
 public:
  using scalar_type = scalar_t<R>;
  using S = scalar_type;

  Series() = default;
  explicit Series(std::vector<R> c) : c_(std::move(c)) {}

  /// Constant series a + O(t^prec).
  static Series constant(const R& a, std::size_t prec) {
    std::vector<R> c(prec, degloc::zero_like(a));
    if (prec) c[0] = a;
    return Series(std::move(c));
  }
  /// a + b t + O(t^prec).
  static Series linear(const R& a, const R& b, std::size_t prec) {
    Series s = constant(a, prec);
    if (prec > 1) s.c_[1] = b;
    return s;
  }

  std::size_t precision() const { return c_.size(); }
  const std::vector<R>& coeffs() const { return c_; }
  std::vector<R>& mutable_coeffs() { return c_; }
  const R& operator[](std::size_t i) const { return c_[i]; }
  R& operator[](std::size_t i) { return c_[i]; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const R& x) { return degloc::is_zero(x); });
  }

  Series zero_like() const { return constant(degloc::zero_like(c_.at(0)), c_.size()); }
  Series one_like() const { return constant(degloc::one_like(c_.at(0)), c_.size()); }
  Series scalar_like(const S& a) const { return constant(degloc::scalar_like(c_.at(0), a), c_.size()); }
  Series scaled(const S& a) const {
    Series r(*this);
    for (auto& x : r.c_) x = scale(x, a);
    return r;
  }

  Series truncate(std::size_t prec) const {
    if (prec >= c_.size()) return *this;
    return Series(std::vector<R>(c_.begin(), c_.begin() + static_cast<long>(prec)));
  }
  /// Extends with zero coefficients up to the given precision.
  Series extend(std::size_t prec) const {
    Series r(*this);
    if (prec > r.c_.size()) r.c_.resize(prec, degloc::zero_like(c_.at(0)));
    return r;
  }

  friend Series operator+(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.c_.size(), b.c_.size());
    std::vector<R> r(a.c_.begin(), a.c_.begin() + static_cast<long>(n));
    for (std::size_t i = 0; i < n; ++i) r[i] += b.c_[i];
    return Series(std::move(r));
  }
  friend Series operator-(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.c_.size(), b.c_.size());
    std::vector<R> r(a.c_.begin(), a.c_.begin() + static_cast<long>(n));
    for (std::size_t i = 0; i < n; ++i) r[i] -= b.c_[i];
    return Series(std::move(r));
  }
  friend Series operator-(const Series& a) {
    Series r(a);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.c_.size(), b.c_.size());
    std::vector<R> r;
    r.reserve(n);
    if constexpr (is_quo_elem<R>::value) {
      using F = S;
      if (n == 0) return Series();
      const auto* ring = a.c_[0].ring();
      const std::size_t d = ring->degree();
      std::vector<F> acc;
      for (std::size_t k = 0; k < n; ++k) {
        acc.assign(2 * d - 1, FieldTraits<F>::zero());
        for (std::size_t i = 0; i <= k; ++i) {
          if (a.c_[i].is_zero() || b.c_[k - i].is_zero()) continue;
          R::mul_acc(acc, a.c_[i], b.c_[k - i]);
        }
        ring->reduce_in_place(acc);
        r.emplace_back(ring, acc);
      }
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        R s = a.c_[0] * b.c_[k];
        for (std::size_t i = 1; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
        r.push_back(std::move(s));
      }
    }
    return Series(std::move(r));
  }
  Series& operator+=(const Series& b) { return *this = *this + b; }
  Series& operator-=(const Series& b) { return *this = *this - b; }
  Series& operator*=(const Series& b) { return *this = *this * b; }

  friend bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }

  /// Multiplicative inverse; throws NotInvertible when c_0 is not a unit.
  Series inverse() const {
    const std::size_t n = c_.size();
    std::vector<R> r;
    r.reserve(n);
    const R inv0 = ring_inverse(c_.at(0));
    r.push_back(inv0);
    for (std::size_t k = 1; k < n; ++k) {
      R s = c_[1] * r[k - 1];
      for (std::size_t i = 2; i <= k; ++i) s += c_[i] * r[k - i];
      r.push_back(-(s * inv0));
    }
    return Series(std::move(r));
  }

  friend Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }

  /// d/dt; precision drops by one.
  Series derivative() const {
    std::vector<R> r;
    for (std::size_t k = 1; k < c_.size(); ++k)
      r.push_back(scale(c_[k], FieldTraits<S>::from_int(static_cast<long>(k))));
    return Series(std::move(r));
  }

  /// Antiderivative with zero constant term; precision grows by one.
  Series integral() const {
    std::vector<R> r;
    r.push_back(degloc::zero_like(c_.at(0)));
    for (std::size_t k = 0; k < c_.size(); ++k) {
      S kk = FieldTraits<S>::from_int(static_cast<long>(k + 1));
      if (FieldTraits<S>::is_zero(kk)) throw DivisorNotInvertible("characteristic too small to integrate");
      r.push_back(scale(c_[k], FieldTraits<S>::inverse(kk)));
    }
    return Series(std::move(r));
  }

 private:
  static R ring_inverse(const R& a) {
    if constexpr (std::is_same_v<R, S>) {
      return FieldTraits<S>::inverse(a);
    } else {
      return a.inverse();
    }
  }

  std::vector<R> c_;
};

/// Scalar power series exponential, for f with f(0) = 0.
template <class F>
Series<F> series_exp(const Series<F>& f) {
  using T = FieldTraits<F>;
  const std::size_t n = f.precision();
  if (n == 0) return f;
  if (!T::is_zero(f[0])) throw std::invalid_argument("series_exp needs zero constant term");
  // e' = f' e, i.e. k e_k = sum_{i=1}^k i f_i e_{k-i}
  std::vector<F> e(n, T::zero());
  e[0] = T::one();
  for (std::size_t k = 1; k < n; ++k) {
    F s = T::zero();
    for (std::size_t i = 1; i <= k; ++i) s = s + T::from_int(static_cast<long>(i)) * f[i] * e[k - i];
    F kk = T::from_int(static_cast<long>(k));
    if (T::is_zero(kk)) throw DivisorNotInvertible("characteristic too small for series exp");
    e[k] = s * T::inverse(kk);
  }
  return Series<F>(std::move(e));
}

/// Coefficientwise trace from (F[T]/Q)[[t]] to F[[t]].
template <class F>
Series<F> series_trace(const Series<QuoElem<F>>& s) {
  std::vector<F> r;
  r.reserve(s.precision());
  for (const auto& c : s.coeffs()) r.push_back(c.trace());
  return Series<F>(std::move(r));
}

/// Norm of a unit of (F[T]/Q)[[t]] down to F[[t]], computed as
/// Norm(s_0) exp(int Tr(s'/s)).
template <class F>
Series<F> series_norm(const Series<QuoElem<F>>& s) {
  const std::size_t n = s.precision();
  F n0 = s[0].norm();
  if (n == 1) return Series<F>(std::vector<F>{n0});
  Series<QuoElem<F>> ld = s.derivative() * s.truncate(n - 1).inverse();
  Series<F> e = series_exp(series_trace(ld).integral());
  return e.scaled(n0);
}

template <class F>
UPoly<F> to_upoly(const Series<F>& s) {
  return UPoly<F>(s.coeffs());
}

template <class F>
Series<F> to_series(const UPoly<F>& f, std::size_t prec) {
  std::vector<F> c(prec, FieldTraits<F>::zero());
  for (std::size_t i = 0; i < prec && i < f.size(); ++i) c[i] = f.coeffs()[i];
  return Series<F>(std::move(c));
}

}  // namespace degloc
