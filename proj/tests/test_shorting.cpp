#include "doctest.h"
#include "util.hpp"

#include "bishort/genlab.hpp"
#include "bishort/shorting.hpp"

using namespace bishort;
using testutil::dist;
using testutil::e;
using testutil::mat;

namespace {
const Subspace e1 = Subspace::span(e(2, 0));
const Operator worked = mat({{2, 1}, {1, 1}});
}  // namespace

TEST_CASE("block decomposition examples") {
  auto b = block_decompose(mat({{1, 2}, {3, 4}}), e1, e1);
  CHECK(dist(b.a11, mat({{1}})) < 1e-15);
  CHECK(dist(b.a12, mat({{2}})) < 1e-15);
  CHECK(dist(b.a21, mat({{3}})) < 1e-15);
  CHECK(dist(b.a22, mat({{4}})) < 1e-15);

  const Operator a = mat({{1, 2, 3}, {4, 5, 6}});
  b = block_decompose(a, Subspace::full(3), Subspace::full(2));
  CHECK(dist(b.a11, a) < 1e-15);
  CHECK(b.a12.size() == 0);
  CHECK(b.a21.size() == 0);
  CHECK(b.a22.size() == 0);
  CHECK(dist(b.reassemble(), a) < 1e-14);

  b = block_decompose(Operator(Operator::Identity(2, 2)), e1, e1);
  CHECK(dist(b.a11, mat({{1}})) < 1e-15);
  CHECK(b.a12.isZero());
  CHECK(b.a21.isZero());
  CHECK(dist(b.a22, mat({{1}})) < 1e-15);

  CHECK_THROWS_AS(block_decompose(a, Subspace::full(2), Subspace::full(2)), DimensionMismatch);
}

TEST_CASE("complementability examples") {
  auto r = complementability(mat({{1, 1}, {1, 0}}), e1, e1);
  CHECK_FALSE(r.strongly);
  CHECK_FALSE(r.weakly);
  CHECK_FALSE(r.witnesses.has_value());

  r = complementability(worked, e1, e1);
  CHECK(r.strongly);
  CHECK(r.weakly);
  REQUIRE(r.witnesses.has_value());

  // A22 = [1 1], A12 = [2 0]; (2,0) is not a multiple of (1,1)
  const Operator a = mat({{1, 2, 0}, {0, 1, 1}});
  Operator a22_adj(2, 1), widened(2, 2);
  a22_adj << 1.0, 1.0;
  widened << 1.0, 2.0, 1.0, 0.0;
  CHECK(rank(a22_adj) == 1);
  CHECK(rank(widened) == 2);
  r = complementability(a, Subspace::span(e(3, 0)), Subspace::span(e(2, 0)));
  CHECK_FALSE(r.strongly);
  CHECK_FALSE(r.weakly);
  CHECK(r.dixmier_t == doctest::Approx(1.0));
}

TEST_CASE("shorted examples") {
  auto r = shorted(worked, e1, e1);
  CHECK(dist(r.shorted, mat({{1, 0}, {0, 0}})) < 1e-14);

  const Operator g = mat({{1, 2, 0}, {3, -1, 4}});
  CHECK(dist(shorted(g, Subspace::full(3), Subspace::full(2)).shorted, g) < 1e-14);

  const Operator id = Operator::Identity(2, 2);
  CHECK(dist(shorted(id, e1, e1).shorted, mat({{1, 0}, {0, 0}})) < 1e-15);

  // E = A22^+ A21 = 1, so P = [[1,0],[-1,0]] and A P = [[1,0],[0,0]]
  const Operator p = mat({{1, 0}, {-1, 0}});
  CHECK(dist(worked * p, mat({{1, 0}, {0, 0}})) == 0.0);
  CHECK(dist(r.p, p) < 1e-14);
  CHECK(dist(r.report.witnesses->p_hat, p) < 1e-14);
  CHECK(dist(r.q * worked, r.shorted) < 1e-14);

  CHECK_THROWS_AS(shorted(mat({{1, 1}, {1, 0}}), e1, e1), NotComplementable);
}

TEST_CASE("schur compression examples") {
  CHECK(dist(schur_compression(worked, e1, e1), mat({{1, 1}, {1, 1}})) < 1e-14);
  CHECK(schur_compression(worked, Subspace::full(2), Subspace::full(2)).norm() < 1e-14);
  CHECK(dist(schur_compression(Operator(Operator::Identity(2, 2)), e1, e1), mat({{0, 0}, {0, 1}})) < 1e-15);
}

TEST_CASE("solve shorting direction examples") {
  const CVector y = solve_shorting_direction(worked, e1, e1, e(2, 0));
  CHECK(dist(y, -e(2, 1)) < 1e-14);
  CHECK(dist(worked * (e(2, 0) + y), mat({{1}, {0}})) < 1e-14);

  const Operator d = mat({{3, 0, 0}, {0, 5, 0}, {0, 0, 7}});
  const Subspace s = Subspace::span(mat({{1, 0}, {0, 1}, {0, 0}}));
  const CVector x = mat({{1}, {-2}, {0}});
  CHECK(solve_shorting_direction(d, s, s, x).norm() < 1e-15);
  CHECK(solve_shorting_direction(worked, e1, e1, CVector(CVector::Zero(2))).norm() == 0.0);

  CHECK_THROWS_AS(solve_shorting_direction(worked, e1, e1, e(2, 1)), NotInSubspace);
}

TEST_CASE("generated triples short consistently") {
  Rng rng(42);
  for (int i = 0; i < 20; ++i) {
    const auto tri = gen_complementable(5, 4, 2, 3, 1 + i % 2, rng);
    const auto r = shorted(tri.a, tri.s, tri.t);
    const double sc = opnorm(tri.a);
    CHECK(r.diagnostics.qa_minus_ap <= 1e-8 * sc);
    CHECK(r.diagnostics.route_disagreement <= 1e-8 * sc);
    CHECK(dist(tri.a * r.p, r.shorted) <= 1e-8 * sc);
    CHECK(dist(schur_compression(tri.a, tri.s, tri.t), tri.a - r.shorted) <= 1e-8 * sc);
  }
}
