#pragma once

#include <cstdint>
#include <string>

#include "degloc/errors.hpp"
#include "degloc/rational.hpp"
#include "degloc/zp.hpp"

namespace degloc {

/// Uniform access to the two coefficient fields used throughout: the
/// rationals (exact) and word-size prime fields (modular).
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Zp> {
  static Zp zero() { return Zp(); }
  static Zp one() { return Zp(1); }
  static Zp from_int(std::int64_t v) { return Zp::from_int(v); }
  /// Throws DivisorNotInvertible when the denominator vanishes mod p.
  static Zp from_rational(const Rational& q) {
    const std::uint64_t p = Zp::modulus();
    std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    if (den == 0) {
      throw DivisorNotInvertible("denominator of " + to_string(q) + " vanishes modulo " +
                                 std::to_string(p));
    }
    std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
    return Zp(num) * Zp(den).inverse();
  }
  static bool is_zero(const Zp& a) { return a.is_zero(); }
  static Zp inverse(const Zp& a) { return a.inverse(); }
  static std::string str(const Zp& a) { return std::to_string(a.value()); }
};

template <>
struct FieldTraits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(std::int64_t v) { return Rational(static_cast<long>(v)); }
  static Rational from_rational(const Rational& q) { return q; }
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static Rational inverse(const Rational& a) {
    if (sgn(a) == 0) throw NotInvertible("inverse of 0 in Q");
    return 1 / a;
  }
  static std::string str(const Rational& a) { return to_string(a); }
};

// Generic element helpers. Ring types with a runtime context (quotient
// rings, truncated series, tangents) provide member functions of the same
// names; plain fields are covered by the overloads below.

inline Zp zero_like(const Zp&) { return Zp(); }
inline Zp one_like(const Zp&) { return Zp(1); }
inline Zp scalar_like(const Zp&, const Zp& s) { return s; }
inline bool is_zero(const Zp& a) { return a.is_zero(); }
inline Zp scale(const Zp& a, const Zp& s) { return a * s; }

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational scalar_like(const Rational&, const Rational& s) { return s; }
inline bool is_zero(const Rational& a) { return sgn(a) == 0; }
inline Rational scale(const Rational& a, const Rational& s) { return a * s; }

template <class R>
R zero_like(const R& x) {
  return x.zero_like();
}
template <class R>
R one_like(const R& x) {
  return x.one_like();
}
template <class R, class S>
R scalar_like(const R& x, const S& s) {
  return x.scalar_like(s);
}
template <class R>
bool is_zero(const R& x) {
  return x.is_zero();
}
template <class R, class S>
R scale(const R& x, const S& s) {
  return x.scaled(s);
}

/// Scalar field of a ring type.
template <class R>
struct ScalarOf {
  using type = typename R::scalar_type;
};
template <>
struct ScalarOf<Zp> {
  using type = Zp;
};
template <>
struct ScalarOf<Rational> {
  using type = Rational;
};
template <class R>
using scalar_t = typename ScalarOf<R>::type;

}  // namespace degloc
