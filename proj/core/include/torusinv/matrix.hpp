#pragma once

#include "torusinv/errors.hpp"
#include "torusinv/numcomplex.hpp"
#include "torusinv/quadext.hpp"
#include "torusinv/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace torusinv {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& model) {
    Matrix m(n, n, zero_like(model));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one_like(model);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_, zero_like(a.data_.empty() ? T() : a.data_[0]));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if constexpr (!std::is_same_v<T, NumComplex>) {
          if (is_zero(a(i, k))) continue;
        }
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using QuadMatrix = Matrix<QuadExt>;
using NumMatrix = Matrix<NumComplex>;

template <class U, class T, class F>
Matrix<U> map_matrix(const Matrix<T>& m, F f) {
  Matrix<U> out(m.rows(), m.cols(), U());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = f(m(i, j));
  return out;
}

inline QuadMatrix to_quad(const RatMatrix& m, long d) {
  return map_matrix<QuadExt>(m, [d](const Rational& x) { return QuadExt(d, x, 0); });
}

inline NumMatrix to_num(const RatMatrix& m) {
  return map_matrix<NumComplex>(m, [](const Rational& x) { return NumComplex::from_rational(x); });
}

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> t(m.cols(), m.rows(), T());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

template <class T>
T trace(const Matrix<T>& m) {
  T s = zero_like(m(0, 0));
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
  return s;
}

template <class T>
bool is_zero_matrix(const Matrix<T>& m) {
  for (const auto& x : m.data())
    if (!is_zero(x)) return false;
  return true;
}

// Sum over all permutations; keeps the error bound finite near singularity.
inline NumComplex leibniz_det(const NumMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  NumComplex acc(0.0);
  do {
    std::size_t inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inv;
    NumComplex term(inv % 2 == 0 ? 1.0 : -1.0);
    for (std::size_t i = 0; i < n; ++i) term *= m(i, p[i]);
    acc += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return acc;
}

// Fraction-free (Bareiss) elimination for exact fields, partial pivoting for
// the numeric backend.
template <class T>
T det(Matrix<T> m) {
  const std::size_t n = m.rows();
  if (n == 0) throw std::invalid_argument("det of empty matrix");
  bool negate = false;
  if constexpr (std::is_same_v<T, NumComplex>) {
    if (n <= 6) return leibniz_det(m);
    NumComplex acc(1.0);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (m(i, k).abs() > m(p, k).abs()) p = i;
      if (m(p, k).abs() == 0.0) return NumComplex(0.0, 0.0, acc.eps());
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
        negate = !negate;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        NumComplex f = m(i, k) / m(k, k);
        for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
      }
      acc *= m(k, k);
    }
    return negate ? -acc : acc;
  } else {
    T prev = one_like(m(0, 0));
    for (std::size_t k = 0; k + 1 < n; ++k) {
      std::size_t p = k;
      while (p < n && is_zero(m(p, k))) ++p;
      if (p == n) return zero_like(m(0, 0));
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
        negate = !negate;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          T v = m(k, k) * m(i, j) - m(i, k) * m(k, j);
          v /= prev;
          m(i, j) = std::move(v);
        }
      }
      prev = m(k, k);
    }
    T r = m(n - 1, n - 1);
    return negate ? T(-r) : r;
  }
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  Matrix<T> m = a;
  Matrix<T> inv = Matrix<T>::identity(n, a(0, 0));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    if constexpr (std::is_same_v<T, NumComplex>) {
      for (std::size_t i = k + 1; i < n; ++i)
        if (m(i, k).abs() > m(p, k).abs()) p = i;
      if (is_zero(m(p, k))) throw Error(ErrorCode::SingularMatrix, "matrix not invertible");
    } else {
      while (p < n && is_zero(m(p, k))) ++p;
      if (p == n) throw Error(ErrorCode::SingularMatrix, "matrix not invertible");
    }
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(k, j), m(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    T piv = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || is_zero(m(i, k))) continue;
      T f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

// Sup-norm of the entrywise difference, for numeric comparisons.
inline double max_abs_diff(const NumMatrix& a, const NumMatrix& b) {
  double r = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    r = std::max(r, std::abs(a.data()[k].value() - b.data()[k].value()));
  return r;
}

}  // namespace torusinv
