#include "bishort/minus_order.hpp"

#include <algorithm>

#include "bishort/douglas.hpp"

namespace bishort {

namespace {

// Projection onto `range` along `away` ⊕ (range + away)^⊥.
Operator splitting_projection(const Subspace& range, const Subspace& away, const Tolerance& tol) {
  const Subspace rest = subspace_join(range, away, tol).complement();
  return oblique_projection(range, subspace_join(away, rest, tol), tol);
}

}  // namespace

MinusVerdict minus_leq(const Operator& c, const Operator& b, const Tolerance& tol) {
  if (c.rows() != b.rows() || c.cols() != b.cols()) throw DimensionMismatch("minus order needs equal shapes");
  require_finite(c);
  require_finite(b);
  MinusVerdict v;
  const Operator d = b - c;
  // C and B - C are judged against the size of B, so an exact cancellation
  // does not leave a spurious rank
  const double sc = std::max(opnorm(b), opnorm(c));
  const auto fc = fundamental_subspaces(c, tol, sc);
  const auto fd = fundamental_subspaces(d, tol, sc);
  v.rank_route = fc.rank + fd.rank == rank(b, tol, sc);

  const Subspace rc = Subspace::span(fc.range_basis, tol);
  const Subspace rd = Subspace::span(fd.range_basis, tol);
  const Subspace cc = Subspace::span(fc.corange_basis, tol);
  const Subspace cd = Subspace::span(fd.corange_basis, tol);
  v.dixmier_range = dixmier_cos(rc, rd);
  v.dixmier_corange = dixmier_cos(cc, cd);

  const double limit = 1.0 - tol.eq_rel;
  if (v.dixmier_range < limit && v.dixmier_corange < limit) {
    try {
      MinusWitnesses w;
      w.q = splitting_projection(rc, rd, tol);
      w.p = splitting_projection(cc, cd, tol).adjoint();
      const double scale = std::max(opnorm(b), 1.0);
      v.factorization_residual = std::max(opnorm(w.q * b - c), opnorm(b * w.p - c)) / scale;
      v.projection_route = v.factorization_residual <= tol.eq_rel;
      v.witnesses = std::move(w);
    } catch (const NotComplementary&) {
      v.projection_route = false;
    }
  }
  v.holds = v.rank_route && v.projection_route;
  return v;
}

bool in_minus_set(const Operator& c, const Operator& a, const Subspace& s, const Subspace& t,
                  const Tolerance& tol) {
  if (s.ambient_dim() != a.cols() || t.ambient_dim() != a.rows())
    throw DimensionMismatch("S, T must match the domain and codomain of A");
  if (!minus_leq(c, a, tol).holds) return false;
  return range_leq(c, t.basis(), tol) && range_leq(Operator(c.adjoint()), s.basis(), tol);
}

}  // namespace bishort
