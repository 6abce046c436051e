#include "doctest.h"
#include "util.hpp"

#include "bishort/douglas.hpp"

using namespace bishort;
using testutil::dist;
using testutil::mat;

TEST_CASE("range inclusion") {
  const Operator a = mat({{1, 0}, {0, 0}});
  CHECK(range_leq(mat({{1}, {0}}), a));
  CHECK_FALSE(range_leq(mat({{0}, {1}}), a));
  const Operator g = mat({{3, 1, 0}, {1, 1, 2}});
  CHECK(range_leq(g, g));
  CHECK_THROWS_AS(range_leq(mat({{1}}), a), DimensionMismatch);
}

TEST_CASE("reduced solution examples") {
  auto r = reduced_solution(mat({{1, 0}, {0, 0}}), mat({{1}, {0}}));
  CHECK(dist(r.d, mat({{1}, {0}})) < 1e-15);

  r = reduced_solution(mat({{2}}), mat({{1}}));
  CHECK(dist(r.d, mat({{0.5}})) < 1e-15);
  CHECK(r.norm_sq == doctest::Approx(0.25));

  const Operator a = mat({{1, 1}, {0, 0}});
  const Operator b = mat({{2}, {0}});
  r = reduced_solution(a, b);
  // oracle: A D = B and D orthogonal to N(A) = span{(1,-1)}
  const Operator frozen = mat({{1}, {1}});
  CHECK(dist(a * frozen, b) == 0.0);
  CHECK(std::abs((frozen.adjoint() * mat({{1}, {-1}}))(0, 0)) == 0.0);
  CHECK(dist(r.d, frozen) < 1e-14);
  CHECK(r.corange_defect < 1e-14);
}

TEST_CASE("reduced solution outside the range throws") {
  CHECK_THROWS_AS(reduced_solution(mat({{1, 0}, {0, 0}}), mat({{0}, {1}})), RangeNotIncluded);
}

TEST_CASE("norm of the reduced solution is the least majorizing lambda") {
  const Operator a = mat({{2, 0}, {0, 1}});
  const Operator b = mat({{1, 0}, {0, 3}});
  const auto r = reduced_solution(a, b);
  CHECK(r.norm_sq == doctest::Approx(9.0));
  // B B* <= 9 A A* with equality in the second coordinate
  const Operator gap = 9.0 * a * a.adjoint() - b * b.adjoint();
  CHECK(gap(1, 1).real() == doctest::Approx(0.0));
  CHECK(gap(0, 0).real() > 0.0);
}
