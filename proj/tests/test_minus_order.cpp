#include "doctest.h"
#include "util.hpp"

#include "bishort/genlab.hpp"
#include "bishort/minus_order.hpp"
#include "bishort/shorting.hpp"

using namespace bishort;
using testutil::dist;
using testutil::e;
using testutil::mat;

TEST_CASE("minus order examples") {
  const Operator c = mat({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  const Operator b = mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  auto v = minus_leq(c, b);
  CHECK(v.holds);
  CHECK(v.rank_route);
  CHECK(v.projection_route);
  REQUIRE(v.witnesses.has_value());
  CHECK(dist(v.witnesses->q * b, c) < 1e-12);
  CHECK(dist(b * v.witnesses->p, c) < 1e-12);

  v = minus_leq(mat({{1}}), mat({{2}}));
  CHECK_FALSE(v.holds);
  CHECK_FALSE(v.rank_route);
  CHECK_FALSE(v.projection_route);
}

TEST_CASE("minus order is reflexive with the range projection as witness") {
  const Operator b = mat({{1, 2, 0}, {2, 4, 0}, {0, 1, 1}});
  const auto v = minus_leq(b, b);
  CHECK(v.holds);
  const Operator q = Subspace::span(b).projection();
  CHECK(dist(q * b, b) < 1e-12);
  REQUIRE(v.witnesses.has_value());
  CHECK(dist(v.witnesses->q * b, b) < 1e-12);
}

TEST_CASE("zero is below everything") {
  const Operator b = mat({{0, 1}, {1, 1}});
  CHECK(minus_leq(Operator(Operator::Zero(2, 2)), b).holds);
  CHECK_THROWS_AS(minus_leq(mat({{1}}), b), DimensionMismatch);
}

TEST_CASE("in_minus_set examples") {
  const Operator a = mat({{2, 1}, {1, 1}});
  const Subspace e1 = Subspace::span(e(2, 0));
  CHECK(in_minus_set(shorted(a, e1, e1).shorted, a, e1, e1));
  CHECK_FALSE(in_minus_set(a, a, e1, e1));
  CHECK(in_minus_set(Operator(Operator::Zero(2, 2)), a, e1, e1));
}

TEST_CASE("shorted is in the minus set of generated triples") {
  Rng rng(5);
  for (int i = 0; i < 25; ++i) {
    const auto tri = gen_complementable(4, 5, 3, 2, i % 3, rng);
    const Operator sh = shorted(tri.a, tri.s, tri.t).shorted;
    CHECK(in_minus_set(sh, tri.a, tri.s, tri.t));
  }
}
