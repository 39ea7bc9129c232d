#pragma once

// Adapted decomposition n = U + Z + V + E for a metric Lie algebra:
//   U = center ∩ center-perp        (null directions of the center),
//   Z = complement of U in the center, g-orthogonal frame,
//   V = dual partner of U:  <u_i, v_j> = delta_ij, isotropic, ⊥ Z,
//   E = orthocomplement of U + Z + V, g-orthogonal frame.
// Frame vectors are rescaled to squared norm ±1 whenever the norm magnitude
// is an exact square in the scalar type; otherwise the rational squared
// norms are carried along (nu for Z, mu for E).

#include <nilsoliton/error.hpp>
#include <nilsoliton/lie_algebra.hpp>
#include <nilsoliton/matrix.hpp>
#include <nilsoliton/metric.hpp>
#include <nilsoliton/scalar.hpp>

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace nilsoliton {

template <class T>
struct Decomposition {
  std::size_t p = 0;  // dim U = dim V
  std::size_t m = 0;  // dim Z
  std::size_t n = 0;  // dim E

  // Columns of B are the adapted basis vectors in original coordinates,
  // ordered u_1..u_p, z_1..z_m, v_1..v_p, e_1..e_n.
  Matrix<T> B;
  Matrix<T> B_inv;

  Vec<T> nu;  // squared norms of the Z frame (all nonzero)
  Vec<T> mu;  // squared norms of the E frame (all nonzero)

  Matrix<T> gram_adapted;  // B^T G B
  Matrix<T> iota_adapted;  // swaps u/v blocks, diag(sign nu), diag(sign mu)
  Matrix<T> iota_orig;     // B * iota_adapted * B^{-1}

  std::size_t dim() const { return 2 * p + m + n; }

  // Index ranges in adapted coordinates.
  std::size_t u_begin() const { return 0; }
  std::size_t z_begin() const { return p; }
  std::size_t v_begin() const { return p + m; }
  std::size_t e_begin() const { return 2 * p + m; }

  Vec<T> u_vector(std::size_t i) const { return B.col(u_begin() + i); }
  Vec<T> z_vector(std::size_t a) const { return B.col(z_begin() + a); }
  Vec<T> v_vector(std::size_t i) const { return B.col(v_begin() + i); }
  Vec<T> e_vector(std::size_t a) const { return B.col(e_begin() + a); }
};

namespace detail {

// Orthocomplement of the row span of W with respect to G: kernel of W G.
template <class T>
std::vector<Vec<T>> orthocomplement(const Matrix<T>& W, const Matrix<T>& G) {
  return nullspace(W * G);
}

// Gaussian-elimination pivot magnitudes, for the float ambiguity guard.
inline std::vector<double> pivot_magnitudes(Matrix<double> a) {
  std::vector<double> mags;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t best = r;
    for (std::size_t i = r; i < a.rows(); ++i)
      if (std::abs(a(i, c)) > std::abs(a(best, c))) best = i;
    if (a(best, c) == 0.0) continue;
    if (best != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(best, j), a(r, j));
    mags.push_back(std::abs(a(r, c)));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      const double f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return mags;
}

// A rank decision is ambiguous when some pivot sits within three orders of
// magnitude of the zero tolerance: the float backend cannot distinguish a
// genuinely null direction from an ill-conditioned one.
template <class T>
void guard_float_rank_ambiguity(const Matrix<T>& mat, const char* what) {
  if constexpr (!ScalarTraits<T>::is_exact) {
    const double tol = ScalarTraits<double>::tolerance;
    Matrix<double> a(mat.rows(), mat.cols());
    for (std::size_t i = 0; i < mat.rows(); ++i)
      for (std::size_t j = 0; j < mat.cols(); ++j) a(i, j) = ScalarTraits<T>::to_double(mat(i, j));
    for (double piv : pivot_magnitudes(a)) {
      if (piv > tol * 1e-3 && piv <= tol * 1e3)
        throw BackendError(std::string("float backend cannot decide degeneracy of ") + what +
                           " (pivot near tolerance); rerun with the exact backend");
    }
  }
}

// Rescale each frame row to squared norm ±1 when |norm| is an exact square;
// updates the row matrix in place and returns the resulting squared norms.
template <class T>
Vec<T> normalize_frame(Matrix<T>& rows, const Metric<T>& g) {
  Vec<T> norms;
  norms.reserve(rows.rows());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    Vec<T> v = rows.row(r);
    T q = g.inner(v, v);
    if (ScalarTraits<T>::is_zero(q))
      throw PreconditionError("frame vector with zero squared norm in a nondegenerate block");
    const T absq = ScalarTraits<T>::abs(q);
    if (auto s = ScalarTraits<T>::sqrt_exact(absq); s && !ScalarTraits<T>::is_zero(*s)) {
      const T inv = ScalarTraits<T>::one() / *s;
      for (std::size_t j = 0; j < rows.cols(); ++j) rows(r, j) *= inv;
      q = T(ScalarTraits<T>::from_int(ScalarTraits<T>::sign(q)));
    }
    norms.push_back(q);
  }
  return norms;
}

}  // namespace detail

// Build the adapted decomposition for (algebra center, metric). The algebra
// enters only through its center.
template <class T>
Decomposition<T> decompose(const LieAlgebra<T>& L, const Metric<T>& g) {
  if (L.dim() != g.dim()) throw DimensionError("algebra and metric dimensions differ");
  const std::size_t dim = L.dim();
  const Matrix<T>& G = g.gram();

  const Subspace<T> center = L.center();
  const Matrix<T>& C = center.basis;  // rows
  const std::size_t cdim = center.dim();

  // Radical of the restriction g|_center: kernel of the center Gram.
  const Matrix<T> M = g.restrict_gram(C);
  detail::guard_float_rank_ambiguity(M, "the center inner product");
  const std::vector<Vec<T>> rad_coeff = nullspace(M);  // coefficient vectors
  const std::size_t p = rad_coeff.size();

  // U rows: radical vectors in ambient coordinates.
  Matrix<T> U(p, dim);
  for (std::size_t i = 0; i < p; ++i) {
    Vec<T> u = vecops::zero<T>(dim);
    for (std::size_t c = 0; c < cdim; ++c) vecops::add_scaled(u, rad_coeff[i][c], C.row(c));
    for (std::size_t j = 0; j < dim; ++j) U(i, j) = u[j];
  }

  // Z rows: complement of the radical inside the center. The coefficient
  // vectors e_f for f outside the radical pivot set complete the radical to
  // a basis of the coefficient space.
  Matrix<T> radm(p, cdim);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t c = 0; c < cdim; ++c) radm(i, c) = rad_coeff[i][c];
  const std::vector<std::size_t> rad_pivots = rref_in_place(radm);
  std::vector<std::size_t> free_cols;
  {
    std::vector<bool> is_pivot(cdim, false);
    for (std::size_t pc : rad_pivots) is_pivot[pc] = true;
    for (std::size_t c = 0; c < cdim; ++c)
      if (!is_pivot[c]) free_cols.push_back(c);
  }
  const std::size_t m = free_cols.size();
  Matrix<T> Z0(m, dim);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t j = 0; j < dim; ++j) Z0(a, j) = C(free_cols[a], j);

  // g-orthogonal frame on Z.
  Matrix<T> Z(m, dim);
  Vec<T> nu;
  if (m > 0) {
    Matrix<T> MZ = g.restrict_gram(Z0);
    const Congruence<T> cz = congruence_diagonalize(MZ);
    for (std::size_t a = 0; a < m; ++a)
      if (ScalarTraits<T>::is_zero(cz.diag[a]))
        throw PreconditionError("internal error: degenerate direction in the Z block");
    Z = cz.basis.transpose() * Z0;
    nu = detail::normalize_frame(Z, g);
  }

  // V rows: v_i with <u_j, v_i> = delta_ij, <z_a, v_i> = 0, then corrected
  // by u-shifts to make the V block isotropic.
  Matrix<T> V(p, dim);
  if (p > 0) {
    Matrix<T> A((p + m), dim);
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t jj = 0; jj < dim; ++jj) {
        T acc = ScalarTraits<T>::zero();
        for (std::size_t k = 0; k < dim; ++k) acc += U(r, k) * G(k, jj);
        A(r, jj) = acc;
      }
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t jj = 0; jj < dim; ++jj) {
        T acc = ScalarTraits<T>::zero();
        for (std::size_t k = 0; k < dim; ++k) acc += Z(r, k) * G(k, jj);
        A(p + r, jj) = acc;
      }
    std::vector<Vec<T>> v0(p);
    for (std::size_t i = 0; i < p; ++i) {
      Vec<T> rhs = vecops::zero<T>(p + m);
      rhs[i] = ScalarTraits<T>::one();
      auto sol = solve(A, rhs);
      if (!sol)
        throw PreconditionError("internal error: dual vector system has no solution");
      v0[i] = *sol;
    }
    // lambda = Gram(v0)/2; v_i = v0_i - sum_j lambda_ij u_j
    for (std::size_t i = 0; i < p; ++i) {
      Vec<T> vi = v0[i];
      for (std::size_t j = 0; j < p; ++j) {
        const T lam = g.inner(v0[i], v0[j]) / ScalarTraits<T>::from_int(2);
        vecops::add_scaled(vi, -lam, U.row(j));
      }
      for (std::size_t jj = 0; jj < dim; ++jj) V(i, jj) = vi[jj];
    }
  }

  // E rows: orthocomplement of U + Z + V, with a g-orthogonal frame.
  const std::size_t n = dim - (2 * p + m);
  Matrix<T> E(n, dim);
  Vec<T> mu;
  {
    Matrix<T> W(2 * p + m, dim);
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t j = 0; j < dim; ++j) W(r, j) = U(r, j);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t j = 0; j < dim; ++j) W(p + r, j) = Z(r, j);
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t j = 0; j < dim; ++j) W(p + m + r, j) = V(r, j);
    if (n > 0) {
      const std::vector<Vec<T>> eker = detail::orthocomplement(W, G);
      if (eker.size() != n)
        throw PreconditionError("internal error: orthocomplement has unexpected dimension");
      Matrix<T> E0(n, dim);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t j = 0; j < dim; ++j) E0(a, j) = eker[a][j];
      Matrix<T> ME = g.restrict_gram(E0);
      detail::guard_float_rank_ambiguity(ME, "the E-block inner product");
      const Congruence<T> ce = congruence_diagonalize(ME);
      for (std::size_t a = 0; a < n; ++a)
        if (ScalarTraits<T>::is_zero(ce.diag[a]))
          throw PreconditionError("internal error: degenerate direction in the E block");
      E = ce.basis.transpose() * E0;
      mu = detail::normalize_frame(E, g);
    }
  }

  Decomposition<T> dec;
  dec.p = p;
  dec.m = m;
  dec.n = n;
  dec.nu = nu;
  dec.mu = mu;

  dec.B = Matrix<T>(dim, dim);
  for (std::size_t i = 0; i < p; ++i) dec.B.set_col(i, U.row(i));
  for (std::size_t a = 0; a < m; ++a) dec.B.set_col(p + a, Z.row(a));
  for (std::size_t i = 0; i < p; ++i) dec.B.set_col(p + m + i, V.row(i));
  for (std::size_t a = 0; a < n; ++a) dec.B.set_col(2 * p + m + a, E.row(a));
  dec.B_inv = inverse(dec.B);

  dec.gram_adapted = dec.B.transpose() * G * dec.B;

  dec.iota_adapted = Matrix<T>(dim, dim);
  for (std::size_t i = 0; i < p; ++i) {
    dec.iota_adapted(p + m + i, i) = ScalarTraits<T>::one();  // u_i -> v_i
    dec.iota_adapted(i, p + m + i) = ScalarTraits<T>::one();  // v_i -> u_i
  }
  for (std::size_t a = 0; a < m; ++a)
    dec.iota_adapted(p + a, p + a) = ScalarTraits<T>::from_int(ScalarTraits<T>::sign(nu[a]));
  for (std::size_t a = 0; a < n; ++a)
    dec.iota_adapted(2 * p + m + a, 2 * p + m + a) =
        ScalarTraits<T>::from_int(ScalarTraits<T>::sign(mu[a]));

  dec.iota_orig = dec.B * dec.iota_adapted * dec.B_inv;
  return dec;
}

// Sanity check: the adapted Gram must be the block form
// [[0,0,I,0],[0,diag nu,0,0],[I,0,0,0],[0,0,0,diag mu]].
template <class T>
bool decomposition_is_valid(const Decomposition<T>& dec) {
  const std::size_t dim = dec.dim();
  Matrix<T> expect(dim, dim);
  for (std::size_t i = 0; i < dec.p; ++i) {
    expect(i, dec.v_begin() + i) = ScalarTraits<T>::one();
    expect(dec.v_begin() + i, i) = ScalarTraits<T>::one();
  }
  for (std::size_t a = 0; a < dec.m; ++a) expect(dec.z_begin() + a, dec.z_begin() + a) = dec.nu[a];
  for (std::size_t a = 0; a < dec.n; ++a) expect(dec.e_begin() + a, dec.e_begin() + a) = dec.mu[a];
  if constexpr (ScalarTraits<T>::is_exact) return dec.gram_adapted == expect;
  else return dec.gram_adapted.approx_equal(expect);
}

}  // namespace nilsoliton
