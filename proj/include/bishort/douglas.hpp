#pragma once

// Range inclusion R(B) ⊆ R(A) and the reduced solution of AX = B, i.e. the
// unique solution whose range lies in N(A)^⊥.

#include <algorithm>

#include "bishort/numcore.hpp"

namespace bishort {

template <typename Scalar>
struct ReducedSolution {
  Mat<Scalar> d;
  double residual = 0.0;        ///< ||A D - B|| / max(||B||, 1)
  double norm_sq = 0.0;         ///< ||D||^2
  double corange_defect = 0.0;  ///< ||(I - A^+ A) D||
};

/// ||(I - A A^+) B|| / max(||B||, 1). `scale` is passed to the pseudoinverse
/// as the reference norm of A.
template <typename DA, typename DB>
double range_residual(const Eigen::MatrixBase<DB>& b, const Eigen::MatrixBase<DA>& a, const Tolerance& tol = {},
                      double scale = 0.0) {
  if (a.rows() != b.rows()) throw DimensionMismatch("range test needs equal row counts");
  if (b.size() == 0) return 0.0;
  const auto ea = a.eval();
  const auto eb = b.eval();
  const auto outside = (eb - ea * (pinv(ea, tol, scale) * eb)).eval();
  return opnorm(outside) / std::max(opnorm(eb), 1.0);
}

/// R(B) ⊆ R(A).
template <typename DA, typename DB>
bool range_leq(const Eigen::MatrixBase<DB>& b, const Eigen::MatrixBase<DA>& a, const Tolerance& tol = {},
               double scale = 0.0) {
  return range_residual(b, a, tol, scale) <= tol.eq_rel;
}

template <typename DA, typename DB>
ReducedSolution<typename DA::Scalar> reduced_solution(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                                                      const Tolerance& tol = {}, double scale = 0.0) {
  using Scalar = typename DA::Scalar;
  if (a.rows() != b.rows()) throw DimensionMismatch("reduced_solution needs equal row counts");
  const Mat<Scalar> ea = a;
  const Mat<Scalar> eb = b;
  const Mat<Scalar> ap = pinv(ea, tol, scale);
  ReducedSolution<Scalar> out;
  out.d = ap * eb;
  const double bscale = std::max(opnorm(eb), 1.0);
  out.residual = opnorm(ea * out.d - eb) / bscale;
  if (out.residual > tol.eq_rel) throw RangeNotIncluded(out.residual, out.residual <= 10.0 * tol.eq_rel);
  const double dn = opnorm(out.d);
  out.norm_sq = dn * dn;
  const Mat<Scalar> off = out.d - ap * (ea * out.d);
  out.corange_defect = opnorm(off);
  return out;
}

}  // namespace bishort
