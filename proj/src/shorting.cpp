#include "bishort/shorting.hpp"

#include <algorithm>
#include <cmath>

namespace bishort {

namespace {

void check_shapes(const Operator& a, const Subspace& s, const Subspace& t) {
  require_finite(a);
  if (s.ambient_dim() != a.cols())
    throw DimensionMismatch("S must live in the domain of A (" + std::to_string(a.cols()) + ")");
  if (t.ambient_dim() != a.rows())
    throw DimensionMismatch("T must live in the codomain of A (" + std::to_string(a.rows()) + ")");
}

Operator block_frame(const Operator& left, const Operator& right) {
  Operator out(left.rows(), left.cols() + right.cols());
  out << left, right;
  return out;
}

// [[x11, x12], [x21, x22]] in the given frames, back to canonical coordinates.
Operator assemble(const Operator& row_frame, const Operator& col_frame, const Operator& x11, const Operator& x12,
                  const Operator& x21, const Operator& x22) {
  Operator blocks(x11.rows() + x21.rows(), x11.cols() + x12.cols());
  blocks << x11, x12, x21, x22;
  return row_frame * blocks * col_frame.adjoint();
}

}  // namespace

Operator BlockDecomposition::reassemble() const {
  return assemble(block_frame(t_basis, t_perp_basis), block_frame(s_basis, s_perp_basis), a11, a12, a21, a22);
}

Operator BlockDecomposition::embed_corner(const Operator& x11) const { return t_basis * x11 * s_basis.adjoint(); }

BlockDecomposition block_decompose(const Operator& a, const Subspace& s, const Subspace& t, const Tolerance&) {
  check_shapes(a, s, t);
  BlockDecomposition b;
  b.s_basis = s.basis();
  b.s_perp_basis = s.complement_basis();
  b.t_basis = t.basis();
  b.t_perp_basis = t.complement_basis();
  const Operator right = a * b.s_basis;
  const Operator right_perp = a * b.s_perp_basis;
  b.a11 = b.t_basis.adjoint() * right;
  b.a21 = b.t_perp_basis.adjoint() * right;
  b.a12 = b.t_basis.adjoint() * right_perp;
  b.a22 = b.t_perp_basis.adjoint() * right_perp;
  return b;
}

namespace {

struct SquareRootFactors {
  Operator left;   // |A22^*|^{1/2} U
  Operator right;  // |A22|^{1/2}
};

// `scale` is the norm of the operator the corner was cut from.
SquareRootFactors square_root_factors(const Operator& a22, const Tolerance& tol, double scale) {
  const auto pd = polar(a22, tol, scale);
  const Operator abs_adj = pd.u * pd.abs_a * pd.u.adjoint();
  return {sqrt_psd(abs_adj, tol, scale) * pd.u, sqrt_psd(pd.abs_a, tol, scale)};
}

ComplementabilityReport complementability_of_blocks(const Operator& a, const BlockDecomposition& b,
                                                    const Tolerance& tol) {
  ComplementabilityReport r;
  const double na = opnorm(a);
  const double root_na = std::sqrt(na);
  const Operator a12_adj = b.a12.adjoint();
  const Operator a22_adj = b.a22.adjoint();
  r.residual_21 = range_residual(b.a21, b.a22, tol, na);
  r.residual_12 = range_residual(a12_adj, a22_adj, tol, na);
  r.strongly = r.residual_21 <= tol.eq_rel && r.residual_12 <= tol.eq_rel;

  // |A22^*|^{1/2} and |A22|^{1/2}; R(|A22^*|^{1/2} U) = R(|A22^*|^{1/2}).
  const auto roots = square_root_factors(b.a22, tol, na);
  r.weak_residual_21 = range_residual(b.a21, roots.left, tol, root_na);
  r.weak_residual_12 = range_residual(a12_adj, roots.right, tol, root_na);
  r.weakly = r.weak_residual_21 <= tol.eq_rel && r.weak_residual_12 <= tol.eq_rel;

  const Subspace s = Subspace::span(b.s_basis, tol);
  const Subspace t = Subspace::span(b.t_basis, tol);
  r.dixmier_s = dixmier_cos(s, Subspace::span(Operator(a.adjoint() * b.t_perp_basis), tol, na));
  r.dixmier_t = dixmier_cos(t, Subspace::span(Operator(a * b.s_perp_basis), tol, na));

  if (r.strongly) {
    ComplementabilityWitnesses w;
    w.e = reduced_solution(b.a22, b.a21, tol, na).d;
    w.f = reduced_solution(a22_adj, a12_adj, tol, na).d;
    const Eigen::Index ns = b.s_basis.cols(), nsp = b.s_perp_basis.cols();
    const Eigen::Index nt = b.t_basis.cols(), ntp = b.t_perp_basis.cols();
    const Operator s_frame = block_frame(b.s_basis, b.s_perp_basis);
    const Operator t_frame = block_frame(b.t_basis, b.t_perp_basis);
    w.p_hat = assemble(s_frame, s_frame, Operator::Identity(ns, ns), Operator::Zero(ns, nsp), -w.e,
                       Operator::Zero(nsp, nsp));
    w.q_hat = assemble(t_frame, t_frame, Operator::Identity(nt, nt), -w.f.adjoint(), Operator::Zero(ntp, nt),
                       Operator::Zero(ntp, ntp));
    w.m_r = Operator::Identity(a.cols(), a.cols()) - w.p_hat;
    w.m_l = Operator::Identity(a.rows(), a.rows()) - w.q_hat.adjoint();
    r.witnesses = std::move(w);
  }
  return r;
}

}  // namespace

ComplementabilityReport complementability(const Operator& a, const Subspace& s, const Subspace& t,
                                          const Tolerance& tol) {
  return complementability_of_blocks(a, block_decompose(a, s, t, tol), tol);
}

ShortedResult shorted(const Operator& a, const Subspace& s, const Subspace& t, const Tolerance& tol) {
  const BlockDecomposition b = block_decompose(a, s, t, tol);
  ShortedResult out;
  out.report = complementability_of_blocks(a, b, tol);
  if (!out.report.weakly) throw NotComplementable(out.report);
  // closed ranges: the weak and strong notions must coincide
  if (!out.report.strongly) throw InternalError("weakly but not strongly complementable");

  // closed-range formula
  const double na = opnorm(a);
  const Operator corner = b.a11 - b.a12 * pinv(b.a22, tol, na) * b.a21;
  out.shorted = b.embed_corner(corner);

  // reduced-solution route
  const auto roots = square_root_factors(b.a22, tol, na);
  const auto e = reduced_solution(roots.left, b.a21, tol, std::sqrt(na));
  const auto f = reduced_solution(roots.right, Operator(b.a12.adjoint()), tol, std::sqrt(na));
  out.e = e.d;
  out.f = f.d;
  out.diagnostics.e_residual = e.residual;
  out.diagnostics.f_residual = f.residual;
  const Operator fe = f.d.adjoint() * e.d;
  const Operator corner_reduced = b.a11 - fe;
  out.diagnostics.route_disagreement = opnorm(corner - corner_reduced);
  const double scale = std::max({na, opnorm(fe), 1.0});
  if (out.diagnostics.route_disagreement > 10.0 * tol.eq_rel * scale)
    throw InternalError("shorted operator routes disagree by " + std::to_string(out.diagnostics.route_disagreement));

  const auto& w = *out.report.witnesses;
  out.p = w.p_hat;
  out.q = w.q_hat;
  const Operator ap = a * out.p;
  out.diagnostics.qa_minus_ap = opnorm(out.q * a - ap);
  out.diagnostics.ap_minus_shorted = opnorm(ap - out.shorted);
  return out;
}

Operator schur_compression(const Operator& a, const Subspace& s, const Subspace& t, const Tolerance& tol) {
  return a - shorted(a, s, t, tol).shorted;
}

CVector solve_shorting_direction(const Operator& a, const Subspace& s, const Subspace& t, const CVector& x,
                                 const Tolerance& tol) {
  check_shapes(a, s, t);
  if (!s.contains(x, tol)) throw NotInSubspace("x must lie in S");
  const BlockDecomposition b = block_decompose(a, s, t, tol);
  const auto report = complementability_of_blocks(a, b, tol);
  if (!report.strongly) throw NotComplementable(report);
  const Operator& e = report.witnesses->e;
  return -(b.s_perp_basis * (e * (b.s_basis.adjoint() * x)));
}

}  // namespace bishort
