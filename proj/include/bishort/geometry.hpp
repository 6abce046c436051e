#pragma once

// Closed subspaces of C^n stored as orthonormal bases, projections onto them,
// and the Friedrichs / Dixmier angle cosines.

#include <algorithm>
#include <cmath>
#include <vector>

#include "bishort/numcore.hpp"

namespace bishort {

template <typename Scalar>
class BasicSubspace {
 public:
  BasicSubspace() = default;

  /// The trivial subspace {0} of C^ambient.
  static BasicSubspace trivial(Eigen::Index ambient) { return BasicSubspace(Mat<Scalar>(ambient, 0)); }

  static BasicSubspace full(Eigen::Index ambient) {
    return BasicSubspace(Mat<Scalar>::Identity(ambient, ambient));
  }

  /// Column span of `m`. Columns that are already orthonormal are kept as
  /// given so that user-chosen coordinates survive; otherwise an SVD basis of
  /// the range is used. `scale` is the reference norm for the rank cut.
  template <typename Derived>
  static BasicSubspace span(const Eigen::MatrixBase<Derived>& m, const Tolerance& tol = {}, double scale = 0.0) {
    require_finite(m);
    if (m.cols() == 0) return trivial(m.rows());
    const Mat<Scalar> g = m.adjoint() * m;
    if (m.cols() <= m.rows() &&
        (g - Mat<Scalar>::Identity(m.cols(), m.cols())).norm() <= tol.eq_rel)
      return BasicSubspace(m.eval());
    return BasicSubspace(fundamental_subspaces(m, tol, scale).range_basis);
  }

  /// Range of an orthogonal projection; validates P = P* = P^2.
  template <typename Derived>
  static BasicSubspace from_projection(const Eigen::MatrixBase<Derived>& p, const Tolerance& tol = {}) {
    if (p.rows() != p.cols()) throw DimensionMismatch("projection must be square");
    const double scale = std::max(opnorm(p), 1.0);
    if (opnorm(p - p.adjoint()) > tol.eq_rel * scale || opnorm(p * p - p) > tol.eq_rel * scale)
      throw InvalidOperator("not an orthogonal projection");
    return BasicSubspace(fundamental_subspaces(p, tol, 1.0).range_basis);
  }

  Eigen::Index ambient_dim() const { return basis_.rows(); }
  Eigen::Index dim() const { return basis_.cols(); }
  bool is_trivial() const { return basis_.cols() == 0; }
  const Mat<Scalar>& basis() const { return basis_; }
  /// Orthogonal projection onto the subspace, computed once at construction.
  const Mat<Scalar>& projection() const { return projection_; }

  /// Orthonormal basis of the orthogonal complement. Built by pivoted
  /// Gram-Schmidt over the columns of I - P so that coordinate subspaces get
  /// coordinate complements (span{e1} -> span{e2}, not -e2).
  Mat<Scalar> complement_basis() const {
    const Eigen::Index n = ambient_dim();
    const Eigen::Index k = n - dim();
    Mat<Scalar> cand = Mat<Scalar>::Identity(n, n) - projection_;
    Mat<Scalar> q(n, k);
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (Eigen::Index found = 0; found < k; ++found) {
      Eigen::Index best = -1;
      double best_norm = -1.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        const double nj = cand.col(j).norm();
        // strict > keeps the lowest index among ties
        if (nj > best_norm * (1.0 + 1e-12)) {
          best = j;
          best_norm = nj;
        }
      }
      used[static_cast<size_t>(best)] = true;
      Vec<Scalar> v = cand.col(best);
      for (int pass = 0; pass < 2; ++pass) {
        v -= basis_ * (basis_.adjoint() * v);
        v -= q.leftCols(found) * (q.leftCols(found).adjoint() * v);
      }
      v.normalize();
      q.col(found) = v;
      // deflate the remaining candidates
      cand -= v * (v.adjoint() * cand);
    }
    return q;
  }

  BasicSubspace complement() const { return BasicSubspace(complement_basis()); }

  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& x, const Tolerance& tol = {}) const {
    if (x.rows() != ambient_dim()) throw DimensionMismatch("vector dimension differs from ambient");
    const double nx = x.norm();
    return (x - projection_ * x).norm() <= tol.eq_rel * std::max(nx, 1.0);
  }

 private:
  explicit BasicSubspace(Mat<Scalar> basis)
      : basis_(std::move(basis)), projection_(basis_ * basis_.adjoint()) {}

  Mat<Scalar> basis_ = Mat<Scalar>(0, 0);
  Mat<Scalar> projection_ = Mat<Scalar>(0, 0);
};

using Subspace = BasicSubspace<Complex>;

/// Cosines of the Dixmier and Friedrichs angles.
struct AnglePair {
  double dixmier_cos = 0.0;
  double friedrichs_cos = 0.0;
};

template <typename Scalar>
Mat<Scalar> ortho_projection(const BasicSubspace<Scalar>& s) {
  return s.projection();
}

template <typename Scalar>
void require_same_ambient(const BasicSubspace<Scalar>& m, const BasicSubspace<Scalar>& n) {
  if (m.ambient_dim() != n.ambient_dim()) throw DimensionMismatch("subspaces live in different spaces");
}

/// Projection Q with R(Q) = range and N(Q) = nullsp.
template <typename Scalar>
Mat<Scalar> oblique_projection(const BasicSubspace<Scalar>& range, const BasicSubspace<Scalar>& nullsp,
                               const Tolerance& tol = {});

template <typename Scalar>
BasicSubspace<Scalar> subspace_meet(const BasicSubspace<Scalar>& m, const BasicSubspace<Scalar>& n,
                                    const Tolerance& tol = {}) {
  require_same_ambient(m, n);
  const Eigen::Index d = m.ambient_dim();
  if (m.is_trivial() || n.is_trivial()) return BasicSubspace<Scalar>::trivial(d);
  const Mat<Scalar> id = Mat<Scalar>::Identity(d, d);
  Mat<Scalar> stacked(2 * d, d);
  stacked << id - m.projection(), id - n.projection();
  return BasicSubspace<Scalar>::span(fundamental_subspaces(stacked, tol, 1.0).null_basis, tol);
}

template <typename Scalar>
BasicSubspace<Scalar> subspace_join(const BasicSubspace<Scalar>& m, const BasicSubspace<Scalar>& n,
                                    const Tolerance& tol = {}) {
  require_same_ambient(m, n);
  Mat<Scalar> both(m.ambient_dim(), m.dim() + n.dim());
  both << m.basis(), n.basis();
  return BasicSubspace<Scalar>::span(both, tol, 1.0);
}

namespace detail {

template <typename Scalar>
double largest_cosine(const Mat<Scalar>& bm, const Mat<Scalar>& bn) {
  if (bm.cols() == 0 || bn.cols() == 0) return 0.0;
  return std::clamp(opnorm(bm.adjoint() * bn), 0.0, 1.0);
}

}  // namespace detail

/// Dixmier cosine: sup |<x,y>| over unit x in M, y in N. Friedrichs cosine:
/// the same after removing M ∩ N from both sides, 0 when that leaves nothing.
template <typename Scalar>
AnglePair angles(const BasicSubspace<Scalar>& m, const BasicSubspace<Scalar>& n, const Tolerance& tol = {}) {
  require_same_ambient(m, n);
  AnglePair out;
  out.dixmier_cos = detail::largest_cosine(m.basis(), n.basis());
  const auto w = subspace_meet(m, n, tol);
  if (w.is_trivial()) {
    out.friedrichs_cos = out.dixmier_cos;
    return out;
  }
  const Mat<Scalar> deflate = Mat<Scalar>::Identity(m.ambient_dim(), m.ambient_dim()) - w.projection();
  const Mat<Scalar> rm = deflate * m.basis();
  const Mat<Scalar> rn = deflate * n.basis();
  // the bases were orthonormal, so leftovers are measured against 1
  const auto mr = BasicSubspace<Scalar>::span(rm, tol, 1.0);
  const auto nr = BasicSubspace<Scalar>::span(rn, tol, 1.0);
  out.friedrichs_cos = detail::largest_cosine(mr.basis(), nr.basis());
  return out;
}

template <typename Scalar>
double dixmier_cos(const BasicSubspace<Scalar>& m, const BasicSubspace<Scalar>& n) {
  require_same_ambient(m, n);
  return detail::largest_cosine(m.basis(), n.basis());
}

template <typename Scalar>
Mat<Scalar> oblique_projection(const BasicSubspace<Scalar>& range, const BasicSubspace<Scalar>& nullsp,
                               const Tolerance& tol) {
  require_same_ambient(range, nullsp);
  const Eigen::Index d = range.ambient_dim();
  if (range.dim() + nullsp.dim() != d)
    throw NotComplementary("subspace dimensions do not add up to the ambient dimension");
  if (dixmier_cos(range, nullsp) >= 1.0 - tol.eq_rel)
    throw NotComplementary("range and nullspace intersect");
  if (range.is_trivial()) return Mat<Scalar>::Zero(d, d);
  Mat<Scalar> frame(d, d);
  frame << range.basis(), nullsp.basis();
  // Q = [R N] diag(I, 0) [R N]^{-1}
  const Mat<Scalar> inv = frame.partialPivLu().inverse();
  return range.basis() * inv.topRows(range.dim());
}

}  // namespace bishort
