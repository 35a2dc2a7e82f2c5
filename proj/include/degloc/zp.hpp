#pragma once

#include <cstdint>
#include <ostream>
#include <random>

#include "degloc/errors.hpp"

namespace degloc {

/// Element of the prime field Z/pZ for a word-size prime p < 2^63.
///
/// The modulus is a thread-local setting installed by PrimeScope, so that
/// independent primes can be processed concurrently on different threads.
/// Values created under one modulus must not be mixed with another.
class Zp {
 public:
  Zp() = default;
  explicit Zp(std::uint64_t v) : v_(v % p_) {}

  static Zp from_int(std::int64_t v) {
    if (v >= 0) return Zp(static_cast<std::uint64_t>(v));
    std::uint64_t m = static_cast<std::uint64_t>(-(v + 1)) + 1;
    return -Zp(m);
  }
  static Zp raw(std::uint64_t reduced) {
    Zp z;
    z.v_ = reduced;
    return z;
  }

  static std::uint64_t modulus() { return p_; }
  std::uint64_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  friend Zp operator+(Zp a, Zp b) {
    std::uint64_t s = a.v_ + b.v_;
    if (s >= p_) s -= p_;
    return raw(s);
  }
  friend Zp operator-(Zp a, Zp b) {
    return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + p_ - b.v_);
  }
  friend Zp operator-(Zp a) { return raw(a.v_ == 0 ? 0 : p_ - a.v_); }
  friend Zp operator*(Zp a, Zp b) {
    return raw(static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.v_) * b.v_ % p_));
  }
  Zp& operator+=(Zp b) { return *this = *this + b; }
  Zp& operator-=(Zp b) { return *this = *this - b; }
  Zp& operator*=(Zp b) { return *this = *this * b; }

  friend bool operator==(Zp a, Zp b) { return a.v_ == b.v_; }
  friend bool operator!=(Zp a, Zp b) { return a.v_ != b.v_; }

  Zp pow(std::uint64_t e) const {
    Zp base = *this, r = raw(1 % p_);
    while (e) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  /// Throws NotInvertible on zero.
  Zp inverse() const {
    if (v_ == 0) throw NotInvertible("inverse of 0 modulo " + std::to_string(p_));
    std::int64_t t = 0, nt = 1;
    std::uint64_t r = p_, nr = v_;
    while (nr) {
      std::uint64_t q = r / nr;
      std::int64_t tmp = t - static_cast<std::int64_t>(q) * nt;
      t = nt;
      nt = tmp;
      std::uint64_t rr = r - q * nr;
      r = nr;
      nr = rr;
    }
    if (r != 1) throw NotInvertible("modulus is not prime");
    return from_int(t);
  }

  friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }

  friend std::ostream& operator<<(std::ostream& os, Zp a) { return os << a.v_; }

 private:
  friend class PrimeScope;
  std::uint64_t v_ = 0;
  static inline thread_local std::uint64_t p_ = 2305843009213693951ULL;  // 2^61 - 1
};

/// Installs a prime modulus for the current thread; restores the previous
/// one on destruction.
class PrimeScope {
 public:
  explicit PrimeScope(std::uint64_t prime) : saved_(Zp::p_) { Zp::p_ = prime; }
  ~PrimeScope() { Zp::p_ = saved_; }
  PrimeScope(const PrimeScope&) = delete;
  PrimeScope& operator=(const PrimeScope&) = delete;

 private:
  std::uint64_t saved_;
};

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime(std::uint64_t n);

/// Uniform random prime with exactly `bits` bits (2 <= bits <= 63).
std::uint64_t random_prime(std::mt19937_64& rng, unsigned bits = 62);

}  // namespace degloc
