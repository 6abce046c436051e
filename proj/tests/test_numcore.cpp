#include "doctest.h"
#include "util.hpp"

using namespace bishort;
using testutil::dist;
using testutil::mat;

TEST_CASE("rank of small matrices") {
  CHECK(rank(Operator(Operator::Zero(3, 3))) == 0);
  CHECK(rank(Operator(Operator::Identity(4, 4))) == 4);
  CHECK(rank(mat({{1, 1}, {1, 1}})) == 1);
  CHECK(rank(Operator(0, 3)) == 0);
}

TEST_CASE("rank cut against a reference scale") {
  // 1e-13 is rank on its own but noise next to a norm-1 operator
  const Operator tiny = mat({{1e-13, 0}, {0, 0}});
  CHECK(rank(tiny) == 1);
  CHECK(rank(tiny, Tolerance{}, 1.0) == 0);
}

TEST_CASE("pinv examples") {
  CHECK(dist(pinv(mat({{2}})), mat({{0.5}})) < 1e-15);
  CHECK(dist(pinv(mat({{1, 0}, {0, 0}})), mat({{1, 0}, {0, 0}})) < 1e-15);

  const Operator a = mat({{1, 1}, {0, 0}});
  const Operator x = pinv(a);
  // frozen: X = [[.5,0],[.5,0]] satisfies AXA=A, XAX=X, (AX)*=AX, (XA)*=XA
  const Operator expect = mat({{0.5, 0}, {0.5, 0}});
  CHECK(dist(a * expect * a, a) == 0.0);
  CHECK(dist(expect * a * expect, expect) == 0.0);
  CHECK(dist((a * expect).adjoint(), a * expect) == 0.0);
  CHECK(dist((expect * a).adjoint(), expect * a) == 0.0);
  CHECK(dist(x, expect) < 1e-14);
}

TEST_CASE("pinv of a complex rank-deficient matrix obeys the Penrose identities") {
  Operator a(3, 2);
  a << Complex(1, 2), Complex(0, -1), Complex(2, 4), Complex(0, -2), Complex(0, 1), Complex(3, 0);
  const Operator x = pinv(a);
  CHECK(dist(a * x * a, a) < 1e-12);
  CHECK(dist(x * a * x, x) < 1e-12);
  CHECK(dist((a * x).adjoint(), a * x) < 1e-12);
  CHECK(dist((x * a).adjoint(), x * a) < 1e-12);
}

TEST_CASE("polar examples") {
  auto p = bishort::polar(mat({{-3}}));
  CHECK(dist(p.u, mat({{-1}})) < 1e-15);
  CHECK(dist(p.abs_a, mat({{3}})) < 1e-15);

  p = bishort::polar(Operator(Operator::Zero(2, 3)));
  CHECK(p.u.isZero());
  CHECK(p.abs_a.isZero());

  const Operator a = mat({{0, 1}, {0, 0}});
  p = bishort::polar(a);
  CHECK(dist(p.u * p.abs_a, a) < 1e-15);
  CHECK(dist(p.u.adjoint() * p.u, mat({{0, 0}, {0, 1}})) < 1e-15);
  CHECK(dist(p.abs_a, mat({{0, 0}, {0, 1}})) < 1e-15);
  CHECK(dist(p.u, a) < 1e-15);
}

TEST_CASE("sqrt_psd examples") {
  CHECK(dist(sqrt_psd(mat({{4, 0}, {0, 9}})), mat({{2, 0}, {0, 3}})) < 1e-14);
  CHECK(dist(sqrt_psd(Operator(Operator::Identity(3, 3))), Operator(Operator::Identity(3, 3))) < 1e-14);

  const Operator a = mat({{2, 1}, {1, 2}});
  const Operator r = sqrt_psd(a);
  CHECK(dist(r * r, a) < 1e-14);
  // eigenvalues 1, sqrt(3) on (1,-1)/sqrt2, (1,1)/sqrt2
  const Operator frozen = mat({{1.3660254037844386, 0.36602540378443865}, {0.36602540378443865, 1.3660254037844386}});
  CHECK(dist(r, frozen) < 1e-14);
}

TEST_CASE("sqrt_psd rejects negative or non-Hermitian input") {
  CHECK_THROWS_AS(sqrt_psd(mat({{1, 0}, {0, -1}})), NotPSD);
  CHECK_THROWS_AS(sqrt_psd(mat({{1, 1}, {0, 1}})), InvalidOperator);
  CHECK_THROWS_AS(sqrt_psd(mat({{1, 1}})), DimensionMismatch);
}

TEST_CASE("fundamental subspaces") {
  auto f = fundamental_subspaces(mat({{1, 0}, {0, 0}}));
  CHECK(f.rank == 1);
  CHECK(std::abs(std::abs(f.range_basis(0, 0)) - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(f.null_basis(1, 0)) - 1.0) < 1e-15);

  f = fundamental_subspaces(mat({{2, 1, 0}, {0, 1, 0}, {0, 0, 3}}));
  CHECK(f.null_basis.cols() == 0);
  CHECK(f.conull_basis.cols() == 0);

  f = fundamental_subspaces(mat({{1, 1}, {1, 1}}));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(f.range_basis.col(0).dot(mat({{h}, {h}}).col(0))) == doctest::Approx(1.0));
  CHECK(std::abs(f.null_basis.col(0).dot(mat({{h}, {-h}}).col(0))) == doctest::Approx(1.0));
}

TEST_CASE("non-finite input is rejected") {
  Operator a = mat({{1, 0}, {0, 1}});
  a(1, 1) = std::nan("");
  CHECK_FALSE(all_finite(a));
  CHECK_THROWS_AS(require_finite(a), InvalidOperator);
}

TEST_CASE("tolerance validation") {
  CHECK_NOTHROW(Tolerance{}.validate());
  CHECK_THROWS_AS((Tolerance{0.0, 1e-9, 1e-10}.validate()), InvalidTolerance);
  CHECK_THROWS_AS((Tolerance{1e-10, 1.5, 1e-10}.validate()), InvalidTolerance);
}

TEST_CASE("real scalar instantiation") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 1, 0, 0;
  const Eigen::MatrixXd x = pinv(a);
  CHECK((x - Eigen::MatrixXd{{0.5, 0}, {0.5, 0}}).norm() < 1e-14);
  CHECK(rank(a) == 1);
}
