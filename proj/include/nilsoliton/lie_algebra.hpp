#pragma once

// Finite-dimensional Lie algebras given by sparse structure constants:
// bracket evaluation, center, derived subalgebra, Jacobi and 2-step checks.
// Subspaces are kept as reduced row-echelon bases so subspace equality is
// plain matrix equality.

#include <nilsoliton/error.hpp>
#include <nilsoliton/matrix.hpp>
#include <nilsoliton/scalar.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace nilsoliton {

// One structure constant: [x_i, x_j] += coeff * x_k with i < j (0-based).
template <class T>
struct BracketTerm {
  std::size_t i, j, k;
  T coeff;
};

// Subspace as an RREF row basis (canonical representative).
template <class T>
struct Subspace {
  Matrix<T> basis;  // rank x dim, rows are basis vectors, in RREF

  std::size_t dim() const { return basis.rows(); }
  std::size_t ambient_dim() const { return basis.cols(); }

  static Subspace from_vectors(const std::vector<Vec<T>>& vecs, std::size_t ambient) {
    Matrix<T> rows(vecs.size(), ambient);
    for (std::size_t i = 0; i < vecs.size(); ++i)
      for (std::size_t j = 0; j < ambient; ++j) rows(i, j) = vecs[i][j];
    const auto pivots = rref_in_place(rows);
    Subspace s;
    s.basis = Matrix<T>(pivots.size(), ambient);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      for (std::size_t j = 0; j < ambient; ++j) s.basis(i, j) = rows(i, j);
    return s;
  }

  bool contains(const Vec<T>& v) const {
    // v is in the span iff appending it does not raise the rank
    std::vector<Vec<T>> vecs;
    for (std::size_t i = 0; i < basis.rows(); ++i) vecs.push_back(basis.row(i));
    vecs.push_back(v);
    return from_vectors(vecs, ambient_dim()).dim() == dim();
  }
};

struct TwoStepCheck {
  bool ok = false;
  std::string reason;
  // witness only meaningful on failure of [[n,n],n] = 0: indices (a, b, c)
  // with [x_a, [x_b, x_c]] != 0
  std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> witness;
};

template <class T>
class LieAlgebra {
 public:
  LieAlgebra(std::size_t dim, std::vector<BracketTerm<T>> terms)
      : dim_(dim), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
      if (t.i >= t.j || t.j >= dim_ || t.k >= dim_)
        throw PreconditionError("structure constant indices out of range (need i < j < dim)");
    }
    // dense adjoints ad_i with columns [x_i, x_j]
    ad_.assign(dim_, Matrix<T>(dim_, dim_));
    for (const auto& t : terms_) {
      ad_[t.i](t.k, t.j) += t.coeff;
      ad_[t.j](t.k, t.i) -= t.coeff;
    }
  }

  std::size_t dim() const { return dim_; }
  const std::vector<BracketTerm<T>>& terms() const { return terms_; }
  const Matrix<T>& ad(std::size_t i) const { return ad_[i]; }

  Vec<T> bracket(const Vec<T>& x, const Vec<T>& y) const {
    if (x.size() != dim_ || y.size() != dim_)
      throw DimensionError("bracket arguments must have the algebra dimension");
    Vec<T> out = vecops::zero<T>(dim_);
    for (const auto& t : terms_) {
      const T c = t.coeff * (x[t.i] * y[t.j] - x[t.j] * y[t.i]);
      out[t.k] += c;
    }
    return out;
  }

  Vec<T> bracket_basis(std::size_t i, std::size_t j) const {
    Vec<T> out = vecops::zero<T>(dim_);
    for (const auto& t : terms_) {
      if (t.i == i && t.j == j) out[t.k] += t.coeff;
      else if (t.i == j && t.j == i) out[t.k] -= t.coeff;
    }
    return out;
  }

  // Kernel of the stacked adjoint maps: {x : [x, y] = 0 for all y}.
  Subspace<T> center() const {
    Matrix<T> stacked(dim_ * dim_, dim_);
    for (std::size_t w = 0; w < dim_; ++w) {
      // row block w: x maps to [x, x_w] = -ad_w x
      for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) stacked(w * dim_ + r, c) = ad_[w](r, c);
    }
    const auto ker = nullspace(stacked);
    return Subspace<T>::from_vectors(ker, dim_);
  }

  Subspace<T> derived_subalgebra() const {
    std::vector<Vec<T>> spans;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j) {
        Vec<T> b = bracket_basis(i, j);
        if (!vecops::is_zero(b)) spans.push_back(std::move(b));
      }
    return Subspace<T>::from_vectors(spans, dim_);
  }

  // Full triple loop over basis vectors.
  bool jacobi_holds() const {
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = a + 1; b < dim_; ++b)
        for (std::size_t c = b + 1; c < dim_; ++c) {
          Vec<T> s = bracket(vecops::basis<T>(dim_, a), bracket_basis(b, c));
          vecops::add_scaled(s, ScalarTraits<T>::one(),
                             bracket(vecops::basis<T>(dim_, b), bracket_basis(c, a)));
          vecops::add_scaled(s, ScalarTraits<T>::one(),
                             bracket(vecops::basis<T>(dim_, c), bracket_basis(a, b)));
          if (!vecops::is_zero(s)) return false;
        }
    return true;
  }

  // 2-step: derived algebra nonzero and central. On a [[n,n],n] != 0 failure
  // the witness (a, b, c) means [x_a, [x_b, x_c]] != 0, scanning a outermost
  // and (b < c) innermost.
  TwoStepCheck verify_two_step() const {
    TwoStepCheck res;
    if (derived_subalgebra().dim() == 0) {
      res.reason = "derived subalgebra is zero (abelian)";
      return res;
    }
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = 0; b < dim_; ++b)
        for (std::size_t c = b + 1; c < dim_; ++c) {
          const Vec<T> inner = bracket_basis(b, c);
          if (vecops::is_zero(inner)) continue;
          if (!vecops::is_zero(bracket(vecops::basis<T>(dim_, a), inner))) {
            res.reason = "[[n,n],n] != 0";
            res.witness = {a, b, c};
            return res;
          }
        }
    res.ok = true;
    return res;
  }

 private:
  std::size_t dim_;
  std::vector<BracketTerm<T>> terms_;
  std::vector<Matrix<T>> ad_;
};

}  // namespace nilsoliton
