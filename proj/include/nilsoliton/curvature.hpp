#pragma once

// Ricci curvature of a left-invariant pseudo-Riemannian metric, two ways:
//
//  * ricci_fast: closed-form block formulas for 2-step nilpotent algebras
//    over the adapted decomposition (u-row zero, z-z, v-z, e-z zero, v-v,
//    x-e), generalized to frames with rational squared norms by weighting
//    each frame sum with the inverse squared norm.
//
//  * ricci_oracle: an independent Levi-Civita route — Koszul formula for the
//    connection in a left-invariant frame, curvature tensor, trace — valid
//    for any Lie algebra with a nondegenerate metric.
//
// The sign convention is pinned by one regression value: Riemannian H3 has
// ric_op = diag(1/2, -1/2, -1/2) in the basis (z, e1, e2).

#include <nilsoliton/decomposition.hpp>
#include <nilsoliton/error.hpp>
#include <nilsoliton/lie_algebra.hpp>
#include <nilsoliton/matrix.hpp>
#include <nilsoliton/metric.hpp>
#include <nilsoliton/operators.hpp>
#include <nilsoliton/scalar.hpp>

#include <cstddef>
#include <vector>

namespace nilsoliton {

template <class T>
struct RicciData {
  Matrix<T> rho;     // Ricci tensor, symmetric bilinear form
  Matrix<T> ric_op;  // Ricci operator, g^{-1} rho
};

template <class T>
Matrix<T> ricci_operator(const Matrix<T>& rho, const Metric<T>& g) {
  return g.gram_inverse() * rho;
}

template <class T>
T scalar_curvature(const Matrix<T>& ric_op) {
  return ric_op.trace();
}

// ---------------------------------------------------------------------------
// Fast path: 2-step block formulas over the adapted frame
// ---------------------------------------------------------------------------

template <class T>
RicciData<T> ricci_fast(const LieAlgebra<T>& L, const Metric<T>& g, const Decomposition<T>& dec) {
  const TwoStepCheck ts = L.verify_two_step();
  if (!ts.ok)
    throw PreconditionError("closed-form Ricci needs a 2-step nilpotent algebra: " + ts.reason);

  const std::size_t dim = L.dim();
  const std::size_t p = dec.p, m = dec.m, n = dec.n;

  // J operators of the frame vectors that enter the sums.
  std::vector<Matrix<T>> Jz(m), Jv(p);
  for (std::size_t a = 0; a < m; ++a) Jz[a] = J_operator(L, g, dec.z_vector(a));
  for (std::size_t i = 0; i < p; ++i) Jv[i] = J_operator(L, g, dec.v_vector(i));

  // Images J_y e_a and J_z (v/e) used repeatedly below.
  std::vector<std::vector<Vec<T>>> Jz_e(m, std::vector<Vec<T>>(n));
  std::vector<std::vector<Vec<T>>> Jv_e(p, std::vector<Vec<T>>(n));
  std::vector<std::vector<Vec<T>>> Jz_v(m, std::vector<Vec<T>>(p));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < n; ++b) Jz_e[a][b] = Jz[a].apply(dec.e_vector(b));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t b = 0; b < n; ++b) Jv_e[i][b] = Jv[i].apply(dec.e_vector(b));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t i = 0; i < p; ++i) Jz_v[a][i] = Jz[a].apply(dec.v_vector(i));

  const T quarter = ScalarTraits<T>::from_ratio(1, 4);
  const T half = ScalarTraits<T>::from_ratio(1, 2);

  // Frame weights: inverse squared norms.
  Vec<T> wE(n), wZ(m);
  for (std::size_t a = 0; a < n; ++a) wE[a] = ScalarTraits<T>::one() / dec.mu[a];
  for (std::size_t a = 0; a < m; ++a) wZ[a] = ScalarTraits<T>::one() / dec.nu[a];

  Matrix<T> rho_ad(dim, dim);
  const std::size_t zb = dec.z_begin(), vb = dec.v_begin(), eb = dec.e_begin();

  // z-z block: (1/4) sum_a (1/mu_a) <J_z e_a, J_z' e_a>
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      T s = ScalarTraits<T>::zero();
      for (std::size_t c = 0; c < n; ++c) s += wE[c] * g.inner(Jz_e[a][c], Jz_e[b][c]);
      s *= quarter;
      rho_ad(zb + a, zb + b) = s;
      rho_ad(zb + b, zb + a) = s;
    }

  // v-z block: (1/4) sum_a (1/mu_a) <J_v e_a, J_z e_a>
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t a = 0; a < m; ++a) {
      T s = ScalarTraits<T>::zero();
      for (std::size_t c = 0; c < n; ++c) s += wE[c] * g.inner(Jv_e[i][c], Jz_e[a][c]);
      s *= quarter;
      rho_ad(vb + i, zb + a) = s;
      rho_ad(zb + a, vb + i) = s;
    }

  // v-v block: -(1/2) sum_alpha (1/nu) <J_z v, J_z v'>
  //            + (1/4) sum_a (1/mu) <J_v e_a, J_v' e_a>
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      T s = ScalarTraits<T>::zero();
      for (std::size_t a = 0; a < m; ++a) s -= half * wZ[a] * g.inner(Jz_v[a][i], Jz_v[a][j]);
      for (std::size_t c = 0; c < n; ++c) s += quarter * wE[c] * g.inner(Jv_e[i][c], Jv_e[j][c]);
      rho_ad(vb + i, vb + j) = s;
      rho_ad(vb + j, vb + i) = s;
    }

  // x-e block, x in V: -(1/2) sum_alpha (1/nu) <J_z v, J_z e>
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t b = 0; b < n; ++b) {
      T s = ScalarTraits<T>::zero();
      for (std::size_t a = 0; a < m; ++a) s -= half * wZ[a] * g.inner(Jz_v[a][i], Jz_e[a][b]);
      rho_ad(vb + i, eb + b) = s;
      rho_ad(eb + b, vb + i) = s;
    }

  // x-e block, x in E: -(1/2) sum_alpha (1/nu) <J_z e, J_z e'>
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = b; c < n; ++c) {
      T s = ScalarTraits<T>::zero();
      for (std::size_t a = 0; a < m; ++a) s -= half * wZ[a] * g.inner(Jz_e[a][b], Jz_e[a][c]);
      rho_ad(eb + b, eb + c) = s;
      rho_ad(eb + c, eb + b) = s;
    }

  // u rows/columns and e-z block stay zero.

  RicciData<T> out;
  const Matrix<T> binv_t = dec.B_inv.transpose();
  out.rho = binv_t * rho_ad * dec.B_inv;
  out.ric_op = ricci_operator(out.rho, g);
  return out;
}

template <class T>
RicciData<T> ricci_fast(const LieAlgebra<T>& L, const Metric<T>& g) {
  return ricci_fast(L, g, decompose(L, g));
}

// ---------------------------------------------------------------------------
// Oracle path: Koszul formula, curvature tensor, trace
// ---------------------------------------------------------------------------

// Levi-Civita connection in the left-invariant frame: nabla[i] is the matrix
// of nabla_{x_i}, i.e. nabla[i](k, j) = Gamma^k_{ij}.
template <class T>
struct ConnectionCoefficients {
  std::vector<Matrix<T>> nabla;

  const T& gamma(std::size_t i, std::size_t j, std::size_t k) const { return nabla[i](k, j); }
};

template <class T>
ConnectionCoefficients<T> koszul_connection(const LieAlgebra<T>& L, const Metric<T>& g) {
  const std::size_t dim = L.dim();
  const T half = ScalarTraits<T>::from_ratio(1, 2);

  // gb[i][j] = G [x_i, x_j]
  std::vector<std::vector<Vec<T>>> gb(dim, std::vector<Vec<T>>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) gb[i][j] = g.gram().apply(L.bracket_basis(i, j));

  ConnectionCoefficients<T> conn;
  conn.nabla.assign(dim, Matrix<T>(dim, dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      // 2 <nabla_{x_i} x_j, x_l> = <[x_i,x_j],x_l> - <[x_j,x_l],x_i> + <[x_l,x_i],x_j>
      Vec<T> w(dim);
      for (std::size_t l = 0; l < dim; ++l)
        w[l] = half * (gb[i][j][l] - gb[j][l][i] + gb[l][i][j]);
      conn.nabla[i].set_col(j, g.gram_inverse().apply(w));
    }
  return conn;
}

template <class T>
RicciData<T> ricci_oracle(const LieAlgebra<T>& L, const Metric<T>& g) {
  if (L.dim() != g.dim()) throw DimensionError("algebra and metric dimensions differ");
  const std::size_t dim = L.dim();
  const ConnectionCoefficients<T> conn = koszul_connection(L, g);

  // rho(j, k) = sum_w e_w-component of R(x_w, x_j) x_k, with
  // R(x, y) = nabla_x nabla_y - nabla_y nabla_x - nabla_{[x,y]}.
  Matrix<T> rho(dim, dim);
  for (std::size_t w = 0; w < dim; ++w) {
    for (std::size_t j = 0; j < dim; ++j) {
      Matrix<T> R = conn.nabla[w] * conn.nabla[j] - conn.nabla[j] * conn.nabla[w];
      const Vec<T> br = L.bracket_basis(w, j);
      for (std::size_t c = 0; c < dim; ++c) {
        if (ScalarTraits<T>::is_zero(br[c])) continue;
        R = R - conn.nabla[c].scaled(br[c]);
      }
      for (std::size_t k = 0; k < dim; ++k) rho(j, k) += R(w, k);
    }
  }

  RicciData<T> out;
  out.rho = std::move(rho);
  out.ric_op = ricci_operator(out.rho, g);
  return out;
}

}  // namespace nilsoliton
