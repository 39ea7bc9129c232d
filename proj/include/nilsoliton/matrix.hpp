#pragma once

// Dense matrices over an arbitrary scalar backend, with the exact-pivoting
// reductions everything else is built on. Pivot selection is deterministic
// (lowest index on the exact backend) so decompositions, nullspace bases and
// certificates are reproducible run to run.

#include <nilsoliton/error.hpp>
#include <nilsoliton/scalar.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

namespace nilsoliton {

template <class T>
using Vec = std::vector<T>;

template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, ScalarTraits<T>::zero()) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged initializer");
      for (const auto& x : r) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarTraits<T>::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k] + o.data_[k];
    return m;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k] - o.data_[k];
    return m;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix m(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (ScalarTraits<T>::is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) m(i, j) += a * o(k, j);
      }
    return m;
  }
  Matrix scaled(const T& s) const {
    Matrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k] * s;
    return m;
  }

  Vec<T> apply(const Vec<T>& v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
    Vec<T> out(rows_, ScalarTraits<T>::zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Vec<T> row(std::size_t i) const {
    Vec<T> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }
  Vec<T> col(std::size_t j) const {
    Vec<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  void set_col(std::size_t j, const Vec<T>& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  static Matrix from_columns(const std::vector<Vec<T>>& cols) {
    if (cols.empty()) return Matrix();
    Matrix m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m.rows_) throw DimensionError("ragged column set");
      m.set_col(j, cols[j]);
    }
    return m;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!ScalarTraits<T>::equal((*this)(i, j), (*this)(j, i))) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!ScalarTraits<T>::is_zero(x)) return false;
    return true;
  }

  T trace() const {
    if (rows_ != cols_) throw DimensionError("trace of non-square matrix");
    T t = ScalarTraits<T>::zero();
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  // Entrywise comparison through the backend tolerance.
  bool approx_equal(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!ScalarTraits<T>::equal(data_[k], o.data_[k])) return false;
    return true;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionError("matrix shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<T> data_;
};

namespace vecops {

template <class T>
Vec<T> zero(std::size_t n) {
  return Vec<T>(n, ScalarTraits<T>::zero());
}

template <class T>
Vec<T> basis(std::size_t n, std::size_t i) {
  Vec<T> v(n, ScalarTraits<T>::zero());
  v[i] = ScalarTraits<T>::one();
  return v;
}

template <class T>
Vec<T> add(const Vec<T>& a, const Vec<T>& b) {
  Vec<T> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

template <class T>
Vec<T> sub(const Vec<T>& a, const Vec<T>& b) {
  Vec<T> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

template <class T>
Vec<T> scale(const T& s, const Vec<T>& a) {
  Vec<T> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
  return c;
}

template <class T>
void add_scaled(Vec<T>& a, const T& s, const Vec<T>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
}

template <class T>
bool is_zero(const Vec<T>& a) {
  for (const auto& x : a)
    if (!ScalarTraits<T>::is_zero(x)) return false;
  return true;
}

}  // namespace vecops

// Row-reduce in place to reduced row-echelon form. Pivot selection: first row
// with a usable entry in the scan column (exact backend), largest-magnitude
// row (float backend, for stability; still deterministic).
// Returns the pivot column of each pivot row, in order.
template <class T>
std::vector<std::size_t> rref_in_place(Matrix<T>& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t sel = a.rows();
    if constexpr (ScalarTraits<T>::is_exact) {
      for (std::size_t i = r; i < a.rows(); ++i)
        if (!ScalarTraits<T>::is_zero(a(i, c))) { sel = i; break; }
    } else {
      T best = ScalarTraits<T>::zero();
      for (std::size_t i = r; i < a.rows(); ++i) {
        T mag = ScalarTraits<T>::abs(a(i, c));
        if (!ScalarTraits<T>::is_zero(a(i, c)) && mag > best) { best = mag; sel = i; }
      }
    }
    if (sel == a.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(r, j));
    const T inv_p = ScalarTraits<T>::one() / a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = a(r, j) * inv_p;
    a(r, c) = ScalarTraits<T>::one();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || ScalarTraits<T>::is_zero(a(i, c))) continue;
      const T f = a(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = a(i, j) - f * a(r, j);
      a(i, c) = ScalarTraits<T>::zero();
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> a) {
  return rref_in_place(a).size();
}

// Canonical nullspace basis: one vector per free column, unit in that column.
template <class T>
std::vector<Vec<T>> nullspace(Matrix<T> a) {
  const std::size_t n = a.cols();
  const auto pivots = rref_in_place(a);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec<T>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec<T> v = vecops::zero<T>(n);
    v[f] = ScalarTraits<T>::one();
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -a(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Particular solution of A x = b (free variables set to zero), or nullopt if
// the system is inconsistent.
template <class T>
std::optional<Vec<T>> solve(const Matrix<T>& a, const Vec<T>& b) {
  if (b.size() != a.rows()) throw DimensionError("solve shape mismatch");
  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Vec<T> x = vecops::zero<T>(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  if (a.rows() != a.cols()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = ScalarTraits<T>::one();
  }
  const auto pivots = rref_in_place(aug);
  if (pivots.size() != n || pivots.back() != n - 1)
    throw PreconditionError("matrix is singular");
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class T>
T determinant(Matrix<T> a) {
  if (a.rows() != a.cols()) throw DimensionError("determinant of non-square matrix");
  const std::size_t n = a.rows();
  T det = ScalarTraits<T>::one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = n;
    if constexpr (ScalarTraits<T>::is_exact) {
      for (std::size_t i = c; i < n; ++i)
        if (!ScalarTraits<T>::is_zero(a(i, c))) { sel = i; break; }
    } else {
      T best = ScalarTraits<T>::zero();
      for (std::size_t i = c; i < n; ++i) {
        T mag = ScalarTraits<T>::abs(a(i, c));
        if (!ScalarTraits<T>::is_zero(a(i, c)) && mag > best) { best = mag; sel = i; }
      }
    }
    if (sel == n) return ScalarTraits<T>::zero();
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(sel, j), a(c, j));
      det = -det;
    }
    det = det * a(c, c);
    const T inv_p = ScalarTraits<T>::one() / a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (ScalarTraits<T>::is_zero(a(i, c))) continue;
      const T f = a(i, c) * inv_p;
      for (std::size_t j = c; j < n; ++j) a(i, j) = a(i, j) - f * a(c, j);
    }
  }
  return det;
}

// Symmetric Gaussian congruence: returns (B, d) with B^T G B = diag(d).
// Zero entries of d mark degenerate directions (the caller decides whether
// that is an error). Handles totally isotropic leading blocks by the
// column-addition trick, so no square roots are ever needed.
template <class T>
struct Congruence {
  Matrix<T> basis;  // columns form the diagonalizing basis
  Vec<T> diag;
};

template <class T>
Congruence<T> congruence_diagonalize(const Matrix<T>& g) {
  if (!g.is_symmetric()) throw PreconditionError("congruence needs a symmetric matrix");
  const std::size_t n = g.rows();
  Matrix<T> m = g;
  Matrix<T> b = Matrix<T>::identity(n);

  auto swap_cols = [&](std::size_t k, std::size_t l) {
    for (std::size_t i = 0; i < n; ++i) std::swap(b(i, k), b(i, l));
    for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(l, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(m(i, k), m(i, l));
  };
  auto add_col = [&](std::size_t k, const T& f, std::size_t l) {
    // column_k += f * column_l  (and the matching symmetric update of m)
    for (std::size_t i = 0; i < n; ++i) b(i, k) += f * b(i, l);
    for (std::size_t j = 0; j < n; ++j) m(k, j) += f * m(l, j);
    for (std::size_t i = 0; i < n; ++i) m(i, k) += f * m(i, l);
  };

  for (std::size_t k = 0; k < n; ++k) {
    if (ScalarTraits<T>::is_zero(m(k, k))) {
      std::size_t dsel = n;
      for (std::size_t l = k + 1; l < n; ++l)
        if (!ScalarTraits<T>::is_zero(m(l, l))) { dsel = l; break; }
      if (dsel != n) {
        swap_cols(k, dsel);
      } else {
        std::size_t osel = n;
        for (std::size_t l = k + 1; l < n; ++l)
          if (!ScalarTraits<T>::is_zero(m(k, l))) { osel = l; break; }
        if (osel == n) continue;  // degenerate direction, diag entry stays 0
        add_col(k, ScalarTraits<T>::one(), osel);  // now m(k,k) = 2 m(k,osel) != 0
      }
    }
    const T inv_p = ScalarTraits<T>::one() / m(k, k);
    for (std::size_t l = k + 1; l < n; ++l) {
      if (ScalarTraits<T>::is_zero(m(k, l))) continue;
      add_col(l, -(m(k, l) * inv_p), k);
    }
  }

  Congruence<T> out;
  out.basis = std::move(b);
  out.diag.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diag[i] = m(i, i);
  return out;
}

}  // namespace nilsoliton
