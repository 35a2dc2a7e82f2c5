#pragma once

#include <memory>
#include <vector>

#include "degloc/upoly.hpp"

namespace degloc {

template <class F>
class QuoElem;

/// The residue ring F[T]/(Q) for a monic modulus Q of positive degree.
///
/// Elements keep a raw pointer to their ring, so a QuoRing must outlive
/// every element created from it. Rings are usually held by shared_ptr.
template <class F>
class QuoRing {
 public:
  using T = FieldTraits<F>;

  explicit QuoRing(UPoly<F> modulus) : q_(std::move(modulus)) {
    if (q_.degree() < 1) throw NonMonicInput("quotient modulus must have positive degree");
    if (!q_.is_monic()) throw NonMonicInput("quotient modulus must be monic");
    d_ = static_cast<std::size_t>(q_.degree());
    power_sums_ = compute_power_sums(q_, d_);
  }

  const UPoly<F>& modulus() const { return q_; }
  std::size_t degree() const { return d_; }

  QuoElem<F> zero() const;
  QuoElem<F> one() const;
  QuoElem<F> scalar(const F& a) const;
  /// The class of T.
  QuoElem<F> gen() const;
  QuoElem<F> from_poly(const UPoly<F>& f) const;

  /// Tr(T^i) for 0 <= i < deg Q.
  const std::vector<F>& power_sums() const { return power_sums_; }

  /// Power sums of the roots of a monic f, entries 0..count-1.
  static std::vector<F> compute_power_sums(const UPoly<F>& f, std::size_t count) {
    const long d = f.degree();
    std::vector<F> p(count, T::zero());
    if (count == 0) return p;
    p[0] = T::from_int(d);
    const auto& c = f.coeffs();
    for (std::size_t k = 1; k < count; ++k) {
      F s = T::zero();
      for (std::size_t i = 1; i < k && static_cast<long>(i) <= d; ++i) s = s + c[d - i] * p[k - i];
      if (static_cast<long>(k) <= d) s = s + T::from_int(static_cast<long>(k)) * c[d - k];
      p[k] = -s;
    }
    return p;
  }

  /// In-place reduction of a coefficient vector of length <= 2 deg Q - 1.
  void reduce_in_place(std::vector<F>& r) const {
    const auto& qc = q_.coeffs();
    for (std::size_t k = r.size(); k-- > d_;) {
      F c = r[k];
      if (T::is_zero(c)) continue;
      const std::size_t base = k - d_;
      for (std::size_t j = 0; j < d_; ++j) r[base + j] = r[base + j] - c * qc[j];
    }
    r.resize(d_, T::zero());
  }

 private:
  UPoly<F> q_;
  std::size_t d_ = 0;
  std::vector<F> power_sums_;
};

/// Element of F[T]/(Q), stored densely with exactly deg Q coefficients.
template <class F>
class QuoElem {
 public:
  using T = FieldTraits<F>;
  using scalar_type = F;

  QuoElem() = default;
  QuoElem(const QuoRing<F>* ring, std::vector<F> c) : ring_(ring), c_(std::move(c)) {}

  const QuoRing<F>* ring() const { return ring_; }
  const std::vector<F>& coeffs() const { return c_; }
  std::vector<F>& mutable_coeffs() { return c_; }
  UPoly<F> to_poly() const { return UPoly<F>(c_); }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!T::is_zero(x)) return false;
    return true;
  }

  QuoElem zero_like() const { return ring_->zero(); }
  QuoElem one_like() const { return ring_->one(); }
  QuoElem scalar_like(const F& a) const { return ring_->scalar(a); }
  QuoElem scaled(const F& a) const {
    QuoElem r(*this);
    for (auto& x : r.c_) x = x * a;
    return r;
  }

  friend QuoElem operator+(const QuoElem& a, const QuoElem& b) {
    QuoElem r(a);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
    return r;
  }
  friend QuoElem operator-(const QuoElem& a, const QuoElem& b) {
    QuoElem r(a);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = r.c_[i] - b.c_[i];
    return r;
  }
  friend QuoElem operator-(const QuoElem& a) {
    QuoElem r(a);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend QuoElem operator*(const QuoElem& a, const QuoElem& b) {
    std::vector<F> r;
    UPoly<F>::mul_into(r, a.c_.data(), a.c_.size(), b.c_.data(), b.c_.size());
    a.ring_->reduce_in_place(r);
    return QuoElem(a.ring_, std::move(r));
  }
  QuoElem& operator+=(const QuoElem& b) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] + b.c_[i];
    return *this;
  }
  QuoElem& operator-=(const QuoElem& b) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] - b.c_[i];
    return *this;
  }
  QuoElem& operator*=(const QuoElem& b) { return *this = *this * b; }

  friend bool operator==(const QuoElem& a, const QuoElem& b) { return a.c_ == b.c_; }
  friend bool operator!=(const QuoElem& a, const QuoElem& b) { return a.c_ != b.c_; }

  /// Throws NotInvertible unless gcd(a, Q) = 1.
  QuoElem inverse() const {
    UPoly<F> inv = invmod(to_poly(), ring_->modulus());
    return ring_->from_poly(inv);
  }
  bool is_unit() const { return gcd(to_poly(), ring_->modulus()).degree() == 0; }

  QuoElem pow(unsigned long e) const {
    QuoElem r = one_like(), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  /// Trace of the multiplication map over F.
  F trace() const {
    const auto& ps = ring_->power_sums();
    F s = T::zero();
    for (std::size_t i = 0; i < c_.size(); ++i) s = s + c_[i] * ps[i];
    return s;
  }

  /// Determinant of the multiplication map: Res(Q, a) for monic Q.
  F norm() const { return resultant(ring_->modulus(), to_poly()); }

  /// Accumulates the unreduced product a*b into acc (length 2 deg Q - 1).
  static void mul_acc(std::vector<F>& acc, const QuoElem& a, const QuoElem& b) {
    thread_local std::vector<F> tmp;
    UPoly<F>::mul_into(tmp, a.c_.data(), a.c_.size(), b.c_.data(), b.c_.size());
    for (std::size_t i = 0; i < tmp.size(); ++i) acc[i] = acc[i] + tmp[i];
  }

 private:
  const QuoRing<F>* ring_ = nullptr;
  std::vector<F> c_;
};

template <class F>
QuoElem<F> QuoRing<F>::zero() const {
  return QuoElem<F>(this, std::vector<F>(d_, T::zero()));
}
template <class F>
QuoElem<F> QuoRing<F>::one() const {
  return scalar(T::one());
}
template <class F>
QuoElem<F> QuoRing<F>::scalar(const F& a) const {
  std::vector<F> c(d_, T::zero());
  c[0] = a;
  return QuoElem<F>(this, std::move(c));
}
template <class F>
QuoElem<F> QuoRing<F>::gen() const {
  return from_poly(UPoly<F>::monomial(T::one(), 1));
}
template <class F>
QuoElem<F> QuoRing<F>::from_poly(const UPoly<F>& f) const {
  std::vector<F> c = (f % q_).coeffs();
  c.resize(d_, T::zero());
  return QuoElem<F>(this, std::move(c));
}

/// Monic polynomial whose roots have the given power sums p_1..p_d
/// (p[0] is ignored). Requires characteristic 0 or larger than d.
template <class F>
UPoly<F> from_power_sums(const std::vector<F>& p, std::size_t d) {
  using T = FieldTraits<F>;
  // Newton identities: k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i.
  std::vector<F> e(d + 1, T::zero());
  e[0] = T::one();
  for (std::size_t k = 1; k <= d; ++k) {
    F s = T::zero();
    for (std::size_t i = 1; i <= k; ++i) {
      F term = e[k - i] * p[i];
      s = (i % 2 == 1) ? F(s + term) : F(s - term);
    }
    const F kk = T::from_int(static_cast<long>(k));
    if (T::is_zero(kk)) throw DivisorNotInvertible("characteristic too small for Newton identities");
    e[k] = s * T::inverse(kk);
  }
  std::vector<F> c(d + 1, T::zero());
  for (std::size_t k = 0; k <= d; ++k) c[d - k] = (k % 2 == 0) ? e[k] : F(-e[k]);
  return UPoly<F>(std::move(c));
}

/// Characteristic polynomial of multiplication by a in F[T]/(Q).
template <class F>
UPoly<F> charpoly(const QuoElem<F>& a) {
  const std::size_t d = a.ring()->degree();
  std::vector<F> p(d + 1, FieldTraits<F>::zero());
  QuoElem<F> pw = a.one_like();
  for (std::size_t k = 1; k <= d; ++k) {
    pw = pw * a;
    p[k] = pw.trace();
  }
  return from_power_sums(p, d);
}

}  // namespace degloc
