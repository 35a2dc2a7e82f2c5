#pragma once

#include <cstddef>
#include <vector>

#include "degloc/field.hpp"

namespace degloc {

/// Small dense row-major matrix over any ring.
template <class R>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const R& fill)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<R> data)
      : rows_(rows), cols_(cols), a_(std::move(data)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  R& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<R>& data() const { return a_; }

  Matrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    std::vector<R> d;
    d.reserve(rs.size() * cs.size());
    for (auto i : rs)
      for (auto j : cs) d.push_back((*this)(i, j));
    return Matrix(rs.size(), cs.size(), std::move(d));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<R> a_;
};

template <class R>
Matrix<R> operator*(const Matrix<R>& a, const Matrix<R>& b) {
  Matrix<R> c(a.rows(), b.cols(), zero_like(a(0, 0)));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      R s = a(i, 0) * b(0, j);
      for (std::size_t k = 1; k < a.cols(); ++k) s = s + a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

/// Coefficients (1, c_1, ..., c_n) of det(x I - A), highest degree first,
/// by Berkowitz's division-free algorithm. `one` supplies the ring context.
template <class R>
std::vector<R> berkowitz_charpoly(const Matrix<R>& a, const R& one) {
  const std::size_t n = a.rows();
  std::vector<R> v{one};
  if (n == 0) return v;
  v.push_back(-a(n - 1, n - 1));
  for (std::size_t k = n - 1; k-- > 0;) {
    const std::size_t m = n - 1 - k;  // size of the trailing block
    std::vector<R> t;
    t.reserve(m + 2);
    t.push_back(one);
    t.push_back(-a(k, k));
    std::vector<R> w;  // A1^j C
    for (std::size_t i = 0; i < m; ++i) w.push_back(a(k + 1 + i, k));
    for (std::size_t j = 0; j < m; ++j) {
      R s = a(k, k + 1) * w[0];
      for (std::size_t i = 1; i < m; ++i) s = s + a(k, k + 1 + i) * w[i];
      t.push_back(-s);
      if (j + 1 < m) {
        std::vector<R> nw;
        nw.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
          R acc = a(k + 1 + i, k + 1) * w[0];
          for (std::size_t l = 1; l < m; ++l) acc = acc + a(k + 1 + i, k + 1 + l) * w[l];
          nw.push_back(acc);
        }
        w = std::move(nw);
      }
    }
    std::vector<R> nv;
    nv.reserve(m + 2);
    for (std::size_t i = 0; i < m + 2; ++i) {
      const std::size_t jmax = i < m + 1 ? i : m;
      R s = t[i] * v[0];
      for (std::size_t j = 1; j <= jmax; ++j) s = s + t[i - j] * v[j];
      nv.push_back(s);
    }
    v = std::move(nv);
  }
  return v;
}

/// Division-free determinant.
template <class R>
R det_berkowitz(const Matrix<R>& a, const R& one) {
  const std::size_t n = a.rows();
  if (n == 0) return one;
  std::vector<R> c = berkowitz_charpoly(a, one);
  return n % 2 == 0 ? c[n] : -c[n];
}

/// Adjugate through Cayley-Hamilton: adj(A) = (-1)^(n-1) (A^(n-1) + c_1 A^(n-2) + ... + c_(n-1) I).
template <class R>
Matrix<R> adjugate(const Matrix<R>& a, const R& one) {
  const std::size_t n = a.rows();
  const R zero = zero_like(one);
  Matrix<R> id(n, n, zero);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = one;
  if (n <= 1) return id;
  std::vector<R> c = berkowitz_charpoly(a, one);
  Matrix<R> b = id;  // Horner: B = A B + c_k I
  for (std::size_t k = 1; k < n; ++k) {
    b = a * b;
    for (std::size_t i = 0; i < n; ++i) b(i, i) = b(i, i) + c[k];
  }
  if ((n - 1) % 2 == 1) {
    std::vector<R> d;
    for (const auto& x : b.data()) d.push_back(-x);
    b = Matrix<R>(n, n, std::move(d));
  }
  return b;
}

/// Cofactor-expansion determinant; exponential, meant as a test oracle.
template <class R>
R det_cofactor(const Matrix<R>& a, const R& one) {
  const std::size_t n = a.rows();
  if (n == 0) return one;
  if (n == 1) return a(0, 0);
  R s = zero_like(one);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> rs, cs;
    for (std::size_t i = 1; i < n; ++i) rs.push_back(i);
    for (std::size_t l = 0; l < n; ++l)
      if (l != j) cs.push_back(l);
    R term = a(0, j) * det_cofactor(a.submatrix(rs, cs), one);
    s = (j % 2 == 0) ? R(s + term) : R(s - term);
  }
  return s;
}

/// Rank by Gaussian elimination over a field.
template <class F>
std::size_t rank(Matrix<F> a) {
  using T = FieldTraits<F>;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && T::is_zero(a(piv, c))) ++piv;
    if (piv == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(piv, j));
    F inv = T::inverse(a(r, c));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      F f = a(i, c) * inv;
      if (T::is_zero(f)) continue;
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = a(i, j) - f * a(r, j);
    }
    ++r;
  }
  return r;
}

/// Inverse over a field; throws NotInvertible for singular input.
template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
  using T = FieldTraits<F>;
  const std::size_t n = m.rows();
  Matrix<F> a = m;
  Matrix<F> b(n, n, T::zero());
  for (std::size_t i = 0; i < n; ++i) b(i, i) = T::one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && T::is_zero(a(piv, c))) ++piv;
    if (piv == n) throw NotInvertible("singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(c, j), a(piv, j));
      std::swap(b(c, j), b(piv, j));
    }
    F inv = T::inverse(a(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) = a(c, j) * inv;
      b(c, j) = b(c, j) * inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || T::is_zero(a(i, c))) continue;
      F f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = a(i, j) - f * a(c, j);
        b(i, j) = b(i, j) - f * b(c, j);
      }
    }
  }
  return b;
}

template <class F>
Matrix<F> identity(std::size_t n) {
  Matrix<F> a(n, n, FieldTraits<F>::zero());
  for (std::size_t i = 0; i < n; ++i) a(i, i) = FieldTraits<F>::one();
  return a;
}

using QMatrix = Matrix<Rational>;

}  // namespace degloc
