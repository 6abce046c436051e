#include "doctest.h"
#include "util.hpp"

#include "bishort/geometry.hpp"

using namespace bishort;
using testutil::dist;
using testutil::e;
using testutil::mat;

namespace {
const double h = 1.0 / std::sqrt(2.0);

bool same(const Subspace& a, const Subspace& b) { return dist(a.projection(), b.projection()) < 1e-12; }
}  // namespace

TEST_CASE("orthogonal projections") {
  const Subspace d = Subspace::span(mat({{h}, {h}}));
  CHECK(dist(ortho_projection(d), mat({{0.5, 0.5}, {0.5, 0.5}})) < 1e-15);
  CHECK(dist(ortho_projection(Subspace::full(3)), Operator(Operator::Identity(3, 3))) == 0.0);
  CHECK(ortho_projection(Subspace::trivial(3)).isZero());
}

TEST_CASE("span keeps orthonormal columns and reduces dependent ones") {
  const Subspace s = Subspace::span(mat({{1, 2}, {0, 0}, {0, 0}}));
  CHECK(s.dim() == 1);
  CHECK(Subspace::span(Operator(3, 0)).is_trivial());
  const Subspace full = Subspace::span(mat({{1, 1}, {0, 1}}));
  CHECK(full.dim() == 2);
}

TEST_CASE("from_projection validates") {
  CHECK(Subspace::from_projection(mat({{1, 0}, {0, 0}})).dim() == 1);
  CHECK_THROWS_AS(Subspace::from_projection(mat({{1, 1}, {0, 0}})), InvalidOperator);
  CHECK_THROWS_AS(Subspace::from_projection(mat({{1, 0}})), DimensionMismatch);
}

TEST_CASE("complement of coordinate subspaces") {
  const Subspace s = Subspace::span(e(2, 0));
  CHECK(dist(s.complement_basis(), e(2, 1)) < 1e-15);
  CHECK(s.contains(mat({{3}, {0}})));
  CHECK_FALSE(s.contains(mat({{0}, {1}})));
}

TEST_CASE("oblique projection examples") {
  const Subspace r = Subspace::span(e(2, 0));
  const Subspace n = Subspace::span(mat({{h}, {h}}));
  CHECK(dist(oblique_projection(r, n), mat({{1, -1}, {0, 0}})) < 1e-14);

  const Subspace r2 = Subspace::span(mat({{h}, {h}}));
  const Subspace n2 = Subspace::span(mat({{h}, {-h}}));
  CHECK(dist(oblique_projection(r2, n2), ortho_projection(r2)) < 1e-14);

  CHECK_THROWS_AS(oblique_projection(r, r), NotComplementary);
  CHECK_THROWS_AS(oblique_projection(r, Subspace::full(2)), NotComplementary);
}

TEST_CASE("meet and join") {
  const Subspace m = Subspace::span(mat({{1, 0}, {0, 1}, {0, 0}}));
  const Subspace n = Subspace::span(mat({{0, 0}, {1, 0}, {0, 1}}));
  CHECK(same(subspace_meet(m, n), Subspace::span(e(3, 1))));
  CHECK(subspace_join(m, n).dim() == 3);

  CHECK(same(subspace_meet(m, m), m));
  CHECK(same(subspace_join(m, m), m));

  CHECK(subspace_meet(Subspace::span(e(3, 0)), Subspace::span(e(3, 2))).is_trivial());
  CHECK(subspace_meet(Subspace::full(3), Subspace::full(3)).dim() == 3);
  CHECK_THROWS_AS(subspace_meet(m, Subspace::full(2)), DimensionMismatch);
}

TEST_CASE("angle examples") {
  auto a = angles(Subspace::span(e(2, 0)), Subspace::span(mat({{h}, {h}})));
  CHECK(a.dixmier_cos == doctest::Approx(h).epsilon(1e-14));
  CHECK(a.friedrichs_cos == doctest::Approx(h).epsilon(1e-14));

  a = angles(Subspace::span(e(2, 0)), Subspace::span(e(2, 0)));
  CHECK(a.dixmier_cos == doctest::Approx(1.0));
  CHECK(a.friedrichs_cos == 0.0);

  // meet is span{e1}; what is left is e2 against (e2+e3)/sqrt2
  const Subspace m = Subspace::span(mat({{1, 0}, {0, 1}, {0, 0}}));
  const Subspace n = Subspace::span(mat({{1, 0}, {0, h}, {0, h}}));
  a = angles(m, n);
  CHECK(a.dixmier_cos == doctest::Approx(1.0));
  CHECK(a.friedrichs_cos == doctest::Approx(h).epsilon(1e-12));
}

TEST_CASE("angles when one subspace contains the other") {
  const Subspace m = Subspace::span(mat({{1, 0}, {0, 1}, {0, 0}}));
  const Subspace n = Subspace::span(e(3, 1));
  const auto a = angles(m, n);
  CHECK(a.dixmier_cos == doctest::Approx(1.0));
  CHECK(a.friedrichs_cos == 0.0);
}
