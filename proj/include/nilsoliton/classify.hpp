#pragma once

// Metric type classes for 2-step nilpotent metric Lie algebras, decided by
// complete certificates: the defining square identity on a center basis plus
// the polarized cross identities on all basis pairs.
//
//   H       : positive-definite metric and J_z^2 = -<z,z> Id on v
//   pseudoH : nondegenerate center and J_z^2 = +<z,z> Id on v
//   pH      : j(z)^2 = -<z, iota z> Id on v, with j(z) = iota J_{iota z}
//
// Also builds the normalized pH frame (z_1..z_m, e_1..e_n) with a timelike
// e_1 and j(z_a) e_1 = e_{a+1}, together with the pairing counts m(i), and
// reproduces the dimension-bound rejection m + 1 <= n.

#include <nilsoliton/decomposition.hpp>
#include <nilsoliton/error.hpp>
#include <nilsoliton/lie_algebra.hpp>
#include <nilsoliton/matrix.hpp>
#include <nilsoliton/metric.hpp>
#include <nilsoliton/operators.hpp>
#include <nilsoliton/scalar.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilsoliton {

enum class MetricClass { h_type, pseudo_h_type, ph_type };

inline const char* metric_class_name(MetricClass c) {
  switch (c) {
    case MetricClass::h_type: return "H";
    case MetricClass::pseudo_h_type: return "pseudoH";
    case MetricClass::ph_type: return "pH";
  }
  return "?";
}

// A failed identity, pinned down at one basis vector: evaluating the
// identity's defect operator at x must reproduce `defect` as the first
// nonzero component.
template <class T>
struct IdentityWitness {
  std::string z_label;  // center vector or pair, e.g. "z1" or "(z1, z2)"
  std::string x_label;  // v-frame vector where the identity fails
  Vec<T> z, z2, x;      // the actual vectors (z2 = z for square identities)
  T defect;             // first nonzero component of the defect vector
  std::string description;
};

template <class T>
struct ClassCheck {
  bool satisfied = false;
  bool refused = false;     // class undefined for this input
  std::string refusal;      // reason when refused
  std::optional<IdentityWitness<T>> witness;  // set when violated
};

template <class T>
struct TypeReport {
  Signature signature;
  std::size_t p = 0, m = 0, n = 0;
  bool center_nondegenerate = false;
  ClassCheck<T> h;
  ClassCheck<T> pseudo_h;
  ClassCheck<T> ph;
};

namespace detail {

template <class T>
struct LabeledVec {
  std::string label;
  Vec<T> vec;
};

// Center frame in adapted order (u's then z's).
template <class T>
std::vector<LabeledVec<T>> center_frame(const Decomposition<T>& dec) {
  std::vector<LabeledVec<T>> out;
  for (std::size_t i = 0; i < dec.p; ++i)
    out.push_back({"u" + std::to_string(i + 1), dec.u_vector(i)});
  for (std::size_t a = 0; a < dec.m; ++a)
    out.push_back({"z" + std::to_string(a + 1), dec.z_vector(a)});
  return out;
}

// Complement frame v (v's then e's).
template <class T>
std::vector<LabeledVec<T>> complement_frame(const Decomposition<T>& dec) {
  std::vector<LabeledVec<T>> out;
  for (std::size_t i = 0; i < dec.p; ++i)
    out.push_back({"v" + std::to_string(i + 1), dec.v_vector(i)});
  for (std::size_t a = 0; a < dec.n; ++a)
    out.push_back({"e" + std::to_string(a + 1), dec.e_vector(a)});
  return out;
}

// The class-defining anticommutator identity at a center pair (z, z'):
//   Op(z)Op(z') + Op(z')Op(z) - 2 * rhs(z, z') * Id = 0 on the complement
// where Op and rhs depend on the class:
//   H       : Op = J,     rhs = -<z, z'>
//   pseudoH : Op = J,     rhs = +<z, z'>
//   pH      : Op = j,     rhs = -<z, iota z'>
// Returns the first violating frame vector and defect component, if any.
template <class T>
std::optional<IdentityWitness<T>> check_pair_identity(const LieAlgebra<T>& L, const Metric<T>& g,
                                                      const Decomposition<T>& dec, MetricClass cls,
                                                      const LabeledVec<T>& z,
                                                      const LabeledVec<T>& z2) {
  const bool use_j = (cls == MetricClass::ph_type);
  const Matrix<T> A = use_j ? j_operator(L, g, dec, z.vec) : J_operator(L, g, z.vec);
  const Matrix<T> Bm = use_j ? j_operator(L, g, dec, z2.vec) : J_operator(L, g, z2.vec);
  T rhs;
  switch (cls) {
    case MetricClass::h_type: rhs = -g.inner(z.vec, z2.vec); break;
    case MetricClass::pseudo_h_type: rhs = g.inner(z.vec, z2.vec); break;
    case MetricClass::ph_type: rhs = -g.inner(z.vec, dec.iota_orig.apply(z2.vec)); break;
  }
  const T two_rhs = rhs + rhs;
  for (const auto& x : complement_frame(dec)) {
    Vec<T> y = A.apply(Bm.apply(x.vec));
    vecops::add_scaled(y, ScalarTraits<T>::one(), Bm.apply(A.apply(x.vec)));
    vecops::add_scaled(y, -two_rhs, x.vec);
    if (!vecops::is_zero(y)) {
      IdentityWitness<T> w;
      w.z_label = (z.label == z2.label) ? z.label : "(" + z.label + ", " + z2.label + ")";
      w.x_label = x.label;
      w.z = z.vec;
      w.z2 = z2.vec;
      w.x = x.vec;
      for (const auto& comp : y)
        if (!ScalarTraits<T>::is_zero(comp)) { w.defect = comp; break; }
      w.description = std::string(metric_class_name(cls)) + " identity fails at center " +
                      w.z_label + " on " + w.x_label;
      return w;
    }
  }
  return std::nullopt;
}

// Run the complete certificate for one class: all center-frame pairs
// (including squares) through the polarized anticommutator identity.
template <class T>
std::optional<IdentityWitness<T>> first_identity_violation(const LieAlgebra<T>& L,
                                                           const Metric<T>& g,
                                                           const Decomposition<T>& dec,
                                                           MetricClass cls) {
  const auto zs = center_frame(dec);
  for (std::size_t a = 0; a < zs.size(); ++a)
    for (std::size_t b = a; b < zs.size(); ++b)
      if (auto w = check_pair_identity(L, g, dec, cls, zs[a], zs[b])) return w;
  return std::nullopt;
}

}  // namespace detail

// Decide all three type classes. Requires a 2-step nilpotent algebra.
template <class T>
TypeReport<T> classify(const LieAlgebra<T>& L, const Metric<T>& g, const Decomposition<T>& dec) {
  const TwoStepCheck ts = L.verify_two_step();
  if (!ts.ok)
    throw PreconditionError("type classes need a 2-step nilpotent algebra: " + ts.reason);

  TypeReport<T> rep;
  rep.signature = g.signature();
  rep.p = dec.p;
  rep.m = dec.m;
  rep.n = dec.n;
  rep.center_nondegenerate = (dec.p == 0);

  // H-type: positive-definite metric first, then the J identities.
  if (!rep.signature.is_riemannian(g.dim())) {
    rep.h.satisfied = false;
    IdentityWitness<T> w;
    w.description = "metric is not positive definite";
    rep.h.witness = w;
  } else if (auto w = detail::first_identity_violation(L, g, dec, MetricClass::h_type)) {
    rep.h.witness = std::move(*w);
  } else {
    rep.h.satisfied = true;
  }

  // pseudoH-type: refuse degenerate centers (no accepted definition exists),
  // decide by the J identities otherwise.
  if (!rep.center_nondegenerate) {
    rep.pseudo_h.refused = true;
    rep.pseudo_h.refusal =
        "pseudoH is not defined for a degenerate center; no accepted definition exists";
  } else if (auto w = detail::first_identity_violation(L, g, dec, MetricClass::pseudo_h_type)) {
    rep.pseudo_h.witness = std::move(*w);
  } else {
    rep.pseudo_h.satisfied = true;
  }

  // pH-type: the twisted identities, degenerate centers allowed.
  if (auto w = detail::first_identity_violation(L, g, dec, MetricClass::ph_type)) {
    rep.ph.witness = std::move(*w);
  } else {
    rep.ph.satisfied = true;
  }

  return rep;
}

template <class T>
TypeReport<T> classify(const LieAlgebra<T>& L, const Metric<T>& g) {
  return classify(L, g, decompose(L, g));
}

// ---------------------------------------------------------------------------
// Polarized identity suite
// ---------------------------------------------------------------------------

template <class T>
struct PolarizedReport {
  bool ok = true;
  std::string counterexample;  // description of the first failure
};

namespace detail {

template <class T>
bool scalars_equal(const T& a, const T& b) {
  return ScalarTraits<T>::equal(a, b);
}

}  // namespace detail

// Verify the full identity list of the class's characterization on all
// basis pairs. Intended to be called when classify has already set the
// matching flag; returns the first counterexample otherwise.
template <class T>
PolarizedReport<T> verify_polarized_identities(const LieAlgebra<T>& L, const Metric<T>& g,
                                               const Decomposition<T>& dec, MetricClass cls) {
  PolarizedReport<T> rep;
  const auto zs = detail::center_frame(dec);
  const auto es = detail::complement_frame(dec);

  auto fail = [&](std::string what) {
    rep.ok = false;
    rep.counterexample = std::move(what);
  };

  const bool use_j = (cls == MetricClass::ph_type);
  std::vector<Matrix<T>> ops;
  ops.reserve(zs.size());
  for (const auto& z : zs)
    ops.push_back(use_j ? j_operator(L, g, dec, z.vec) : J_operator(L, g, z.vec));

  // Scalar product identities.
  for (std::size_t a = 0; a < zs.size() && rep.ok; ++a) {
    for (const auto& e : es) {
      if (!rep.ok) break;
      const Vec<T> oe = ops[a].apply(e.vec);
      if (cls == MetricClass::ph_type) {
        // <j(z)e, iota j(z)e'> = <z, iota z><e, iota e'> over all e'
        const T zz = g.inner(zs[a].vec, dec.iota_orig.apply(zs[a].vec));
        for (const auto& e2 : es) {
          const T lhs = g.inner(oe, dec.iota_orig.apply(ops[a].apply(e2.vec)));
          const T rhsv = zz * g.inner(e.vec, dec.iota_orig.apply(e2.vec));
          if (!detail::scalars_equal(lhs, rhsv)) {
            fail("<j(" + zs[a].label + ")" + e.label + ", iota j(" + zs[a].label + ")" + e2.label +
                 "> != <z, iota z><e, iota e'>");
            break;
          }
        }
        // <j(z)e, iota j(z')e> = <z, iota z'><e, iota e> over all z'
        if (!rep.ok) break;
        const T ee = g.inner(e.vec, dec.iota_orig.apply(e.vec));
        for (std::size_t b = 0; b < zs.size(); ++b) {
          const T lhs = g.inner(oe, dec.iota_orig.apply(ops[b].apply(e.vec)));
          const T rhsv = g.inner(zs[a].vec, dec.iota_orig.apply(zs[b].vec)) * ee;
          if (!detail::scalars_equal(lhs, rhsv)) {
            fail("<j(" + zs[a].label + ")" + e.label + ", iota j(" + zs[b].label + ")" + e.label +
                 "> != <z, iota z'><e, iota e>");
            break;
          }
        }
      } else {
        // sign: -1 for pseudoH, +1 for H
        const T sgn = (cls == MetricClass::pseudo_h_type)
                          ? -ScalarTraits<T>::one()
                          : ScalarTraits<T>::one();
        const T zz = g.inner(zs[a].vec, zs[a].vec);
        // <J_z e, J_z e'> = sgn <z,z><e,e'> (e' = e covers the square case)
        for (const auto& e2 : es) {
          const T lhs = g.inner(oe, ops[a].apply(e2.vec));
          const T rhsv = sgn * zz * g.inner(e.vec, e2.vec);
          if (!detail::scalars_equal(lhs, rhsv)) {
            fail("<J_" + zs[a].label + " " + e.label + ", J_" + zs[a].label + " " + e2.label +
                 "> != " + (sgn > ScalarTraits<T>::zero() ? "" : "-") + "<z, z><e, e'>");
            break;
          }
        }
        if (!rep.ok) break;
        // <J_z e, J_z' e> = sgn <z,z'><e,e> over all z'
        const T ee = g.inner(e.vec, e.vec);
        for (std::size_t b = 0; b < zs.size(); ++b) {
          const T lhs = g.inner(oe, ops[b].apply(e.vec));
          const T rhsv = sgn * g.inner(zs[a].vec, zs[b].vec) * ee;
          if (!detail::scalars_equal(lhs, rhsv)) {
            fail("<J_" + zs[a].label + " " + e.label + ", J_" + zs[b].label + " " + e.label +
                 "> != " + (sgn > ScalarTraits<T>::zero() ? "" : "-") + "<z, z'><e, e>");
            break;
          }
        }
      }
    }
  }

  // Anticommutator identity on all pairs.
  if (rep.ok) {
    for (std::size_t a = 0; a < zs.size() && rep.ok; ++a)
      for (std::size_t b = a; b < zs.size(); ++b)
        if (auto w = detail::check_pair_identity(L, g, dec, cls, zs[a], zs[b])) {
          fail(w->description);
          break;
        }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Normalized pH frame with a timelike E direction
// ---------------------------------------------------------------------------

template <class T>
struct PhAdaptedBasis {
  // Columns: z_1..z_m then e_1..e_n, in original coordinates; the frame is
  // orthonormal with <e_1, e_1> = -1 and j(z_a) e_1 = e_{a+1}.
  Matrix<T> frame;
  std::size_t m = 0, n = 0;
  std::vector<std::size_t> m_counts;  // size n; m_counts[0] == 0 always
};

template <class T>
struct PhBasisOutcome {
  std::optional<PhAdaptedBasis<T>> basis;
  // Nonempty iff the construction is impossible because m + 1 > n; states
  // the contradiction the failed construction runs into.
  std::string rejection;

  bool rejected() const { return !rejection.empty(); }
};

// Build the normalized frame. Preconditions: Lorentzian metric,
// positive-definite center (p = 0, all nu > 0), the timelike direction in E
// with squared norm exactly -1, spacelike norms exactly +1, and the input of
// pH type. The m + 1 > n dimension bound is checked before the pH identities
// so that impossible shapes are rejected with the structural contradiction
// rather than a plain identity failure.
template <class T>
PhBasisOutcome<T> adapt_ph_basis(const LieAlgebra<T>& L, const Metric<T>& g,
                                 const Decomposition<T>& dec) {
  const std::size_t dim = L.dim();
  if (!g.signature().is_lorentzian(dim))
    throw PreconditionError("normalized pH frame needs a Lorentzian metric");
  if (dec.p != 0)
    throw PreconditionError("normalized pH frame needs a nondegenerate (positive-definite) center");
  for (const T& nua : dec.nu)
    if (ScalarTraits<T>::sign(nua) <= 0 || !ScalarTraits<T>::equal(nua, ScalarTraits<T>::one()))
      throw PreconditionError(
          "normalized pH frame needs a positive-definite center with exact unit frame norms");

  const std::size_t m = dec.m, n = dec.n;

  // Locate the unique timelike E direction; it becomes e_1.
  std::size_t tl = n;
  for (std::size_t a = 0; a < n; ++a) {
    if (ScalarTraits<T>::sign(dec.mu[a]) < 0) {
      if (tl != n) throw PreconditionError("metric is not Lorentzian on the E block");
      tl = a;
    } else if (!ScalarTraits<T>::equal(dec.mu[a], ScalarTraits<T>::one())) {
      throw PreconditionError("normalized pH frame needs exact unit spacelike norms");
    }
  }
  if (tl == n) throw PreconditionError("no timelike direction in the E block");
  if (!ScalarTraits<T>::equal(dec.mu[tl], -ScalarTraits<T>::one()))
    throw PreconditionError("normalized pH frame needs <e_1, e_1> = -1 exactly");

  // Dimension bound: with m + 1 > n the construction would force the last
  // center direction to act trivially on e_1, contradicting its square
  // identity. Reported as a rejection, not an exception.
  if (m + 1 > n) {
    PhBasisOutcome<T> out;
    out.rejection =
        "no such frame exists: m + 1 <= n is necessary (m = " + std::to_string(m) +
        ", n = " + std::to_string(n) +
        "); orthogonality of the vectors j(z_a) e_1 would force j(z_" + std::to_string(m) +
        ") e_1 = 0, contradicting j(z_" + std::to_string(m) + ")^2 = -Id";
    return out;
  }

  // The construction needs the pH identities.
  if (auto w = detail::first_identity_violation(L, g, dec, MetricClass::ph_type))
    throw PreconditionError("input is not of pH type: " + w->description);

  const Vec<T> e1 = dec.e_vector(tl);

  // F_{a+1} = j(z_a) e_1; pH forces these to be unit spacelike, mutually
  // orthogonal and orthogonal to e_1.
  std::vector<Vec<T>> frame_e;
  frame_e.push_back(e1);
  for (std::size_t a = 0; a < m; ++a) {
    const Matrix<T> jz = j_operator(L, g, dec, dec.z_vector(a));
    Vec<T> F = jz.apply(e1);
    if (!ScalarTraits<T>::equal(g.inner(F, F), ScalarTraits<T>::one()))
      throw PreconditionError("internal error: j(z_a) e_1 is not a unit spacelike vector");
    for (const auto& prev : frame_e)
      if (!ScalarTraits<T>::is_zero(g.inner(F, prev)))
        throw PreconditionError("internal error: j(z_a) e_1 frame is not orthogonal");
    // j(z_a) must send F back to -e_1
    Vec<T> back = jz.apply(F);
    vecops::add_scaled(back, ScalarTraits<T>::one(), e1);
    if (!vecops::is_zero(back))
      throw PreconditionError("internal error: j(z_a) e_{a+1} != -e_1");
    frame_e.push_back(std::move(F));
  }

  // Complete with the remaining spacelike directions: exact Gram-Schmidt of
  // the original spacelike frame against what is already chosen.
  for (std::size_t a = 0; a < n && frame_e.size() < n; ++a) {
    if (a == tl) continue;
    Vec<T> cand = dec.e_vector(a);
    for (const auto& prev : frame_e) {
      const T ip = g.inner(cand, prev);
      if (ScalarTraits<T>::is_zero(ip)) continue;
      const T nn = g.inner(prev, prev);
      vecops::add_scaled(cand, -(ip / nn), prev);
    }
    if (vecops::is_zero(cand)) continue;  // already in the span
    const T q = g.inner(cand, cand);
    if (ScalarTraits<T>::sign(q) <= 0)
      throw PreconditionError("internal error: spacelike completion has a non-spacelike vector");
    if (auto s = ScalarTraits<T>::sqrt_exact(q); s && !ScalarTraits<T>::is_zero(*s)) {
      const T inv = ScalarTraits<T>::one() / *s;
      for (auto& comp : cand) comp *= inv;
    } else {
      throw PreconditionError(
          "cannot complete the frame exactly: a completion vector has non-square norm " +
          ScalarTraits<T>::to_string(q));
    }
    frame_e.push_back(std::move(cand));
  }
  if (frame_e.size() != n)
    throw PreconditionError("internal error: frame completion has wrong size");

  PhAdaptedBasis<T> basis;
  basis.m = m;
  basis.n = n;
  basis.frame = Matrix<T>(dim, m + n);
  for (std::size_t a = 0; a < m; ++a) basis.frame.set_col(a, dec.z_vector(a));
  for (std::size_t i = 0; i < n; ++i) basis.frame.set_col(m + i, frame_e[i]);

  // Pairing counts m(i): how many center directions pair e_1 with e_i.
  basis.m_counts.assign(n, 0);
  for (std::size_t a = 0; a < m; ++a) {
    const Matrix<T> jz = j_operator(L, g, dec, dec.z_vector(a));
    const Vec<T> F = jz.apply(frame_e[0]);
    for (std::size_t i = 0; i < n; ++i) {
      Vec<T> diff = F;
      vecops::add_scaled(diff, -ScalarTraits<T>::one(), frame_e[i]);
      if (!vecops::is_zero(diff)) continue;
      Vec<T> back = jz.apply(frame_e[i]);
      vecops::add_scaled(back, ScalarTraits<T>::one(), frame_e[0]);
      if (vecops::is_zero(back)) ++basis.m_counts[i];
    }
  }

  PhBasisOutcome<T> out;
  out.basis = std::move(basis);
  return out;
}

}  // namespace nilsoliton
