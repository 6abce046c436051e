#pragma once

// Block decomposition of an operator relative to a pair (S, T), the
// complementability predicates, and the bilateral shorted operator A/(S,T).
//
// Coordinates: S ⊆ C^cols (domain side), T ⊆ C^rows (codomain side). Blocks
// are expressed in the orthonormal bases of S, S^⊥, T, T^⊥:
//
//        S     S^⊥
//   T  [ A11   A12 ]
//   T^⊥[ A21   A22 ]

#include <optional>

#include "bishort/douglas.hpp"
#include "bishort/geometry.hpp"

namespace bishort {

struct BlockDecomposition {
  Operator a11, a12, a21, a22;
  Operator s_basis, s_perp_basis;
  Operator t_basis, t_perp_basis;

  /// [T T^⊥] [[A11 A12] [A21 A22]] [S S^⊥]^*
  Operator reassemble() const;
  /// Embed a T<-S block back into C^rows x C^cols, zero elsewhere.
  Operator embed_corner(const Operator& x11) const;
};

BlockDecomposition block_decompose(const Operator& a, const Subspace& s, const Subspace& t,
                                   const Tolerance& tol = {});

/// Witnesses of (S,T)-complementability built from the reduced solutions of
/// A21 = A22 X and A12^* = A22^* X.
struct ComplementabilityWitnesses {
  Operator e;        ///< S -> S^⊥ block coordinates
  Operator f;        ///< T -> T^⊥ block coordinates
  Operator p_hat;    ///< [[I,0],[-E,0]], R(P^*) = S, R(A P) ⊆ T
  Operator q_hat;    ///< [[I,-F^*],[0,0]], R(Q) = T, R((Q A)^*) ⊆ S
  Operator m_r;      ///< I - P
  Operator m_l;      ///< I - Q^*
};

struct ComplementabilityReport {
  bool weakly = false;
  bool strongly = false;
  /// range residuals: A21 in R(A22), A12^* in R(A22^*), and the same against
  /// |A22^*|^{1/2}, |A22|^{1/2}
  double residual_21 = 0.0;
  double residual_12 = 0.0;
  double weak_residual_21 = 0.0;
  double weak_residual_12 = 0.0;
  std::optional<ComplementabilityWitnesses> witnesses;
  /// Dixmier cosines of (S, A^*(T^⊥)) and (T, A(S^⊥)); both < 1 iff complementable.
  double dixmier_s = 0.0;
  double dixmier_t = 0.0;
};

ComplementabilityReport complementability(const Operator& a, const Subspace& s, const Subspace& t,
                                          const Tolerance& tol = {});

class NotComplementable : public Error {
 public:
  explicit NotComplementable(ComplementabilityReport report)
      : Error("operator is not complementable with respect to (S, T)"), report(std::move(report)) {}
  ComplementabilityReport report;
};

struct ShortedDiagnostics {
  double qa_minus_ap = 0.0;         ///< ||Q A - A P||
  double ap_minus_shorted = 0.0;    ///< ||A P - A/(S,T)||
  double route_disagreement = 0.0;  ///< closed-range formula vs reduced-solution route
  double e_residual = 0.0;
  double f_residual = 0.0;
};

struct ShortedResult {
  Operator shorted;
  /// Reduced solutions of A21 = |A22^*|^{1/2} U X and A12^* = |A22|^{1/2} X,
  /// with U the polar partial isometry of A22. shorted = A11 - F^* E.
  Operator e;
  Operator f;
  Operator p;  ///< R(P^*) = S, A P = shorted
  Operator q;  ///< R(Q) = T, Q A = shorted
  ComplementabilityReport report;
  ShortedDiagnostics diagnostics;
};

ShortedResult shorted(const Operator& a, const Subspace& s, const Subspace& t, const Tolerance& tol = {});

/// A - A/(S,T), the Schur compression; equals A M_r.
Operator schur_compression(const Operator& a, const Subspace& s, const Subspace& t, const Tolerance& tol = {});

/// For x in S, the y in S^⊥ with A (x + y) = A/(S,T) x.
CVector solve_shorting_direction(const Operator& a, const Subspace& s, const Subspace& t, const CVector& x,
                                 const Tolerance& tol = {});

}  // namespace bishort
