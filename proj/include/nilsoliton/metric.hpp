#pragma once

// Nondegenerate symmetric bilinear forms (pseudo-Riemannian inner products)
// on the underlying vector space of a Lie algebra.

#include <nilsoliton/error.hpp>
#include <nilsoliton/matrix.hpp>
#include <nilsoliton/scalar.hpp>

#include <cstddef>
#include <optional>
#include <utility>

namespace nilsoliton {

// (p, q) = (positive, negative) inertia indices; p + q = dim for a
// nondegenerate form.
struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;

  bool operator==(const Signature&) const = default;
  bool is_definite(std::size_t dim) const { return positive == dim || negative == dim; }
  bool is_riemannian(std::size_t dim) const { return positive == dim; }
  bool is_lorentzian(std::size_t dim) const { return dim >= 2 && negative == 1 && positive + 1 == dim; }
};

template <class T>
class Metric {
 public:
  explicit Metric(Matrix<T> gram) : g_(std::move(gram)) {
    if (g_.rows() != g_.cols()) throw DimensionError("metric matrix must be square");
    if (!g_.is_symmetric()) throw PreconditionError("metric matrix must be symmetric");
    if (ScalarTraits<T>::is_zero(determinant(g_)))
      throw PreconditionError("metric matrix is degenerate");
  }

  std::size_t dim() const { return g_.rows(); }
  const Matrix<T>& gram() const { return g_; }

  const Matrix<T>& gram_inverse() const {
    if (!ginv_) ginv_ = inverse(g_);
    return *ginv_;
  }

  T inner(const Vec<T>& x, const Vec<T>& y) const {
    if (x.size() != dim() || y.size() != dim())
      throw DimensionError("inner product arguments must have the metric dimension");
    T acc = ScalarTraits<T>::zero();
    for (std::size_t i = 0; i < dim(); ++i) {
      if (ScalarTraits<T>::is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim(); ++j) acc += x[i] * g_(i, j) * y[j];
    }
    return acc;
  }

  Signature signature() const {
    Matrix<T> g = g_;
    const Congruence<T> cd = congruence_diagonalize(g);
    Signature s;
    for (const T& d : cd.diag) {
      const int sg = ScalarTraits<T>::sign(d);
      if (sg > 0) ++s.positive;
      else if (sg < 0) ++s.negative;
      else throw PreconditionError("metric matrix is degenerate");
    }
    return s;
  }

  // Gram matrix of the restriction to the span of the given row basis.
  Matrix<T> restrict_gram(const Matrix<T>& rows) const {
    Matrix<T> out(rows.rows(), rows.rows());
    for (std::size_t a = 0; a < rows.rows(); ++a)
      for (std::size_t b = 0; b < rows.rows(); ++b) out(a, b) = inner(rows.row(a), rows.row(b));
    return out;
  }

 private:
  Matrix<T> g_;
  mutable std::optional<Matrix<T>> ginv_;
};

}  // namespace nilsoliton
