#pragma once

// Dense matrix primitives shared by every other module: rank decisions,
// Moore-Penrose inverse, polar decomposition, PSD square roots and the four
// fundamental subspaces. Everything is templated on the scalar type; the rest
// of the library instantiates it with std::complex<double>.

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "bishort/errors.hpp"

namespace bishort {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
/// A linear map C^cols -> C^rows.
using Operator = Mat<Complex>;
using CVector = Vec<Complex>;

/// Relative thresholds for rank decisions, equality checks and PSD slack.
struct Tolerance {
  double rank_rel = 1e-10;
  double eq_rel = 1e-9;
  double psd_slack = 1e-10;

  void validate() const {
    auto ok = [](double v) { return v > 0.0 && v < 1.0; };
    if (!ok(rank_rel) || !ok(eq_rel) || !ok(psd_slack))
      throw InvalidTolerance("tolerances must lie in (0, 1)");
  }
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const auto v = a(i, j);
      if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v))) return false;
    }
  return true;
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a) {
  if (!all_finite(a)) throw InvalidOperator("operator has non-finite entries");
}

/// Spectral norm. Zero for empty matrices.
template <typename Derived>
double opnorm(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0.0;
  using Scalar = typename Derived::Scalar;
  Eigen::JacobiSVD<Mat<Scalar>> svd(a.eval());
  return static_cast<double>(svd.singularValues()(0));
}

namespace detail {

/// Number of singular values above rank_rel * max(rows, cols) * max(sigma_max, scale).
/// `scale` lets a computed block be judged against the operator it came from.
template <typename RealVec>
Eigen::Index count_above_threshold(const RealVec& sv, Eigen::Index rows, Eigen::Index cols,
                                   const Tolerance& tol, double scale = 0.0) {
  if (sv.size() == 0) return 0;
  const double smax = std::max(static_cast<double>(sv(0)), scale);
  if (smax == 0.0) return 0;
  const double cut = tol.rank_rel * static_cast<double>(std::max(rows, cols)) * smax;
  Eigen::Index r = 0;
  while (r < sv.size() && static_cast<double>(sv(r)) > cut) ++r;
  return r;
}

}  // namespace detail

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& a, const Tolerance& tol = {}, double scale = 0.0) {
  if (a.size() == 0) return 0;
  using Scalar = typename Derived::Scalar;
  Eigen::JacobiSVD<Mat<Scalar>> svd(a.eval());
  return detail::count_above_threshold(svd.singularValues(), a.rows(), a.cols(), tol, scale);
}

/// sigma_max / smallest singular value above the rank threshold; 1 for zero.
template <typename Derived>
double condition_number(const Eigen::MatrixBase<Derived>& a, const Tolerance& tol = {}, double scale = 0.0) {
  if (a.size() == 0) return 1.0;
  using Scalar = typename Derived::Scalar;
  Eigen::JacobiSVD<Mat<Scalar>> svd(a.eval());
  const auto& sv = svd.singularValues();
  const Eigen::Index r = detail::count_above_threshold(sv, a.rows(), a.cols(), tol, scale);
  if (r == 0) return 1.0;
  return static_cast<double>(sv(0) / sv(r - 1));
}

/// Moore-Penrose inverse by singular-value truncation at the rank threshold.
template <typename Derived>
Mat<typename Derived::Scalar> pinv(const Eigen::MatrixBase<Derived>& a, const Tolerance& tol = {},
                                   double scale = 0.0) {
  using Scalar = typename Derived::Scalar;
  Mat<Scalar> out = Mat<Scalar>::Zero(a.cols(), a.rows());
  if (a.size() == 0) return out;
  Eigen::JacobiSVD<Mat<Scalar>> svd(a.eval(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const Eigen::Index r = detail::count_above_threshold(sv, a.rows(), a.cols(), tol, scale);
  if (r == 0) return out;
  const auto& u = svd.matrixU();
  const auto& v = svd.matrixV();
  Vec<Scalar> inv(r);
  for (Eigen::Index i = 0; i < r; ++i) inv(i) = Scalar(1) / Scalar(sv(i));
  out.noalias() = v.leftCols(r) * inv.asDiagonal() * u.leftCols(r).adjoint();
  return out;
}

template <typename Scalar>
struct PolarDecomposition {
  Mat<Scalar> u;      ///< partial isometry, initial space R(A*)
  Mat<Scalar> abs_a;  ///< (A*A)^{1/2}
};

/// A = U |A| with U*U = P_{R(A*)}. Singular values under the rank threshold
/// are dropped from both factors.
template <typename Derived>
PolarDecomposition<typename Derived::Scalar> polar(const Eigen::MatrixBase<Derived>& a,
                                                   const Tolerance& tol = {}, double scale = 0.0) {
  using Scalar = typename Derived::Scalar;
  PolarDecomposition<Scalar> out{Mat<Scalar>::Zero(a.rows(), a.cols()),
                                 Mat<Scalar>::Zero(a.cols(), a.cols())};
  if (a.size() == 0) return out;
  Eigen::JacobiSVD<Mat<Scalar>> svd(a.eval(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const Eigen::Index r = detail::count_above_threshold(sv, a.rows(), a.cols(), tol, scale);
  if (r == 0) return out;
  const auto w = svd.matrixU().leftCols(r);
  const auto v = svd.matrixV().leftCols(r);
  out.u.noalias() = w * v.adjoint();
  Vec<Scalar> s = sv.head(r).template cast<Scalar>();
  out.abs_a.noalias() = v * s.asDiagonal() * v.adjoint();
  return out;
}

/// Hermitian PSD square root. Eigenvalues with |lambda| <= psd_slack * ||A||
/// (or psd_slack * ref when larger) are treated as exact zeros; anything more
/// negative raises NotPSD.
template <typename Derived>
Mat<typename Derived::Scalar> sqrt_psd(const Eigen::MatrixBase<Derived>& a, const Tolerance& tol = {},
                                       double ref = 0.0) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw DimensionMismatch("sqrt_psd needs a square matrix");
  const Eigen::Index n = a.rows();
  if (n == 0) return Mat<Scalar>(0, 0);
  const Mat<Scalar> h = (a + a.adjoint()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(h);
  const auto& lam = es.eigenvalues();
  const double scale = std::max({std::abs(lam(0)), std::abs(lam(n - 1)), ref});
  if ((a - a.adjoint()).norm() > tol.eq_rel * std::max(scale, 1.0) * std::sqrt(double(n)))
    throw InvalidOperator("sqrt_psd needs a Hermitian matrix");
  const double slack = tol.psd_slack * scale;
  if (lam(0) < -slack) throw NotPSD(lam(0), slack);
  Vec<Scalar> root(n);
  for (Eigen::Index i = 0; i < n; ++i)
    root(i) = lam(i) <= slack ? Scalar(0) : Scalar(std::sqrt(lam(i)));
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

template <typename Scalar>
struct FundamentalSubspaces {
  Mat<Scalar> range_basis;    ///< R(A), rows x r
  Mat<Scalar> null_basis;     ///< N(A), cols x (cols - r)
  Mat<Scalar> corange_basis;  ///< R(A*), cols x r
  Mat<Scalar> conull_basis;   ///< N(A*), rows x (rows - r)
  Eigen::Index rank = 0;
};

template <typename Derived>
FundamentalSubspaces<typename Derived::Scalar> fundamental_subspaces(const Eigen::MatrixBase<Derived>& a,
                                                                     const Tolerance& tol = {},
                                                                     double scale = 0.0) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index m = a.rows(), n = a.cols();
  FundamentalSubspaces<Scalar> out;
  if (a.size() == 0) {
    out.range_basis = Mat<Scalar>(m, 0);
    out.corange_basis = Mat<Scalar>(n, 0);
    out.null_basis = Mat<Scalar>::Identity(n, n);
    out.conull_basis = Mat<Scalar>::Identity(m, m);
    return out;
  }
  Eigen::JacobiSVD<Mat<Scalar>> svd(a.eval(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Index r = detail::count_above_threshold(svd.singularValues(), m, n, tol, scale);
  out.rank = r;
  out.range_basis = svd.matrixU().leftCols(r);
  out.conull_basis = svd.matrixU().rightCols(m - r);
  out.corange_basis = svd.matrixV().leftCols(r);
  out.null_basis = svd.matrixV().rightCols(n - r);
  return out;
}

/// ||A - B|| <= eq_rel * max(scale, 1) in spectral norm.
template <typename D1, typename D2>
bool approx_equal(const Eigen::MatrixBase<D1>& a, const Eigen::MatrixBase<D2>& b, double scale,
                  const Tolerance& tol = {}) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return opnorm(a - b) <= tol.eq_rel * std::max(scale, 1.0);
}

}  // namespace bishort
