#pragma once

#include <type_traits>
#include <vector>

#include "degloc/field.hpp"

namespace degloc {

/// First-order jet v + sum_i d_i e_i with e_i e_j = 0: forward-mode
/// derivatives in k directions over an arbitrary base ring R.
template <class R>
class Tangent {
 public:
  using scalar_type = scalar_t<R>;
  using S = scalar_type;

  Tangent() = default;
  Tangent(R v, std::vector<R> d) : v_(std::move(v)), d_(std::move(d)) {}
  /// Constant: all directional derivatives zero.
  static Tangent constant(const R& v, std::size_t k) {
    return Tangent(v, std::vector<R>(k, degloc::zero_like(v)));
  }
  /// Seeded variable: derivative 1 in direction i.
  static Tangent variable(const R& v, std::size_t k, std::size_t i) {
    Tangent t = constant(v, k);
    t.d_[i] = degloc::one_like(v);
    return t;
  }

  const R& value() const { return v_; }
  R& value() { return v_; }
  const std::vector<R>& d() const { return d_; }
  std::vector<R>& d() { return d_; }
  const R& d(std::size_t i) const { return d_[i]; }
  std::size_t directions() const { return d_.size(); }

  bool is_zero() const {
    if (!degloc::is_zero(v_)) return false;
    for (const auto& x : d_)
      if (!degloc::is_zero(x)) return false;
    return true;
  }

  Tangent zero_like() const { return constant(degloc::zero_like(v_), d_.size()); }
  Tangent one_like() const { return constant(degloc::one_like(v_), d_.size()); }
  Tangent scalar_like(const S& a) const { return constant(degloc::scalar_like(v_, a), d_.size()); }
  Tangent scaled(const S& a) const {
    Tangent r(*this);
    r.v_ = scale(r.v_, a);
    for (auto& x : r.d_) x = scale(x, a);
    return r;
  }

  friend Tangent operator+(const Tangent& a, const Tangent& b) {
    Tangent r(a);
    r += b;
    return r;
  }
  friend Tangent operator-(const Tangent& a, const Tangent& b) {
    Tangent r(a);
    r -= b;
    return r;
  }
  friend Tangent operator-(const Tangent& a) {
    Tangent r(a);
    r.v_ = -r.v_;
    for (auto& x : r.d_) x = -x;
    return r;
  }
  friend Tangent operator*(const Tangent& a, const Tangent& b) {
    Tangent r;
    r.v_ = a.v_ * b.v_;
    r.d_.reserve(a.d_.size());
    for (std::size_t i = 0; i < a.d_.size(); ++i) {
      const bool za = degloc::is_zero(a.d_[i]), zb = degloc::is_zero(b.d_[i]);
      if (za && zb) {
        r.d_.push_back(a.d_[i]);
      } else if (za) {
        r.d_.push_back(a.v_ * b.d_[i]);
      } else if (zb) {
        r.d_.push_back(a.d_[i] * b.v_);
      } else {
        r.d_.push_back(a.v_ * b.d_[i] + a.d_[i] * b.v_);
      }
    }
    return r;
  }
  Tangent& operator+=(const Tangent& b) {
    v_ += b.v_;
    for (std::size_t i = 0; i < d_.size(); ++i) d_[i] += b.d_[i];
    return *this;
  }
  Tangent& operator-=(const Tangent& b) {
    v_ -= b.v_;
    for (std::size_t i = 0; i < d_.size(); ++i) d_[i] -= b.d_[i];
    return *this;
  }
  Tangent& operator*=(const Tangent& b) { return *this = *this * b; }

  friend bool operator==(const Tangent& a, const Tangent& b) { return a.v_ == b.v_ && a.d_ == b.d_; }

  Tangent inverse() const {
    R iv;
    if constexpr (std::is_same_v<R, S>) {
      iv = FieldTraits<S>::inverse(v_);
    } else {
      iv = v_.inverse();
    }
    Tangent r;
    r.v_ = iv;
    R iv2 = iv * iv;
    for (const auto& x : d_) r.d_.push_back(-(x * iv2));
    return r;
  }

 private:
  R v_;
  std::vector<R> d_;
};

}  // namespace degloc
