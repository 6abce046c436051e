#pragma once

// The minus partial order C <=- B and the set M^-(A, S, T) whose maximum is
// the shorted operator.

#include <optional>

#include "bishort/geometry.hpp"

namespace bishort {

struct MinusWitnesses {
  Operator q;  ///< projection with R(Q) = R(C), C = Q B
  Operator p;  ///< projection with R(P^*) = R(C^*), C = B P
};

struct MinusVerdict {
  bool holds = false;
  /// rank(C) + rank(B - C) == rank(B)
  bool rank_route = false;
  /// Dixmier cosines below 1 on both sides and the factorizations C = QB = BP
  bool projection_route = false;
  double dixmier_range = 0.0;    ///< cos(R(C), R(B - C))
  double dixmier_corange = 0.0;  ///< cos(R(C^*), R(B^* - C^*))
  double factorization_residual = 0.0;
  std::optional<MinusWitnesses> witnesses;
};

MinusVerdict minus_leq(const Operator& c, const Operator& b, const Tolerance& tol = {});

/// C ∈ M^-(A, S, T): C <=- A, R(C) ⊆ T and R(C^*) ⊆ S.
bool in_minus_set(const Operator& c, const Operator& a, const Subspace& s, const Subspace& t,
                  const Tolerance& tol = {});

}  // namespace bishort
