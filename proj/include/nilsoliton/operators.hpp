#pragma once

// The skew-symmetric-in-the-metric bracket operators: for y in the algebra,
// J_y is defined by <J_y x, w> = <y, [x, w]>, and its twisted companion
// j(y) = iota ∘ J_{iota y} uses the involution of an adapted decomposition.

#include <nilsoliton/decomposition.hpp>
#include <nilsoliton/lie_algebra.hpp>
#include <nilsoliton/matrix.hpp>
#include <nilsoliton/metric.hpp>

#include <cstddef>

namespace nilsoliton {

// Matrix of J_y in the original coordinates: column c equals
// G^{-1} ad_c^T G y, where ad_c is the adjoint of the c-th basis vector.
template <class T>
Matrix<T> J_operator(const LieAlgebra<T>& L, const Metric<T>& g, const Vec<T>& y) {
  if (y.size() != L.dim()) throw DimensionError("J operator argument dimension mismatch");
  const std::size_t dim = L.dim();
  const Vec<T> gy = g.gram().apply(y);
  Matrix<T> J(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const Vec<T> col = g.gram_inverse().apply(L.ad(c).transpose().apply(gy));
    J.set_col(c, col);
  }
  return J;
}

// j(y) = iota ∘ J_{iota y}, in the original coordinates.
template <class T>
Matrix<T> j_operator(const LieAlgebra<T>& L, const Metric<T>& g, const Decomposition<T>& dec,
                     const Vec<T>& y) {
  return dec.iota_orig * J_operator(L, g, dec.iota_orig.apply(y));
}

// Conjugate an operator matrix into adapted coordinates: B^{-1} M B.
template <class T>
Matrix<T> to_adapted(const Decomposition<T>& dec, const Matrix<T>& M) {
  return dec.B_inv * M * dec.B;
}

// Sub-block rows [r0, r0+nr) x cols [c0, c0+nc) of a matrix.
template <class T>
Matrix<T> sub_block(const Matrix<T>& M, std::size_t r0, std::size_t nr, std::size_t c0,
                    std::size_t nc) {
  Matrix<T> out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = M(r0 + i, c0 + j);
  return out;
}

// Restriction of an operator (original coordinates) to the V+E block of the
// adapted splitting; well-defined only when the operator preserves that
// block, which the caller is asserting by using it.
template <class T>
Matrix<T> restrict_to_ve(const Decomposition<T>& dec, const Matrix<T>& M) {
  const Matrix<T> A = to_adapted(dec, M);
  const std::size_t start = dec.v_begin();
  const std::size_t len = dec.p + dec.n;
  return sub_block(A, start, len, start, len);
}

}  // namespace nilsoliton
