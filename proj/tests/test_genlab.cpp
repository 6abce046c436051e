#include "doctest.h"
#include "util.hpp"

#include "bishort/genlab.hpp"
#include "bishort/parallel.hpp"

#include <set>

using namespace bishort;
using testutil::dist;
using testutil::e;
using testutil::mat;

TEST_CASE("rng is reproducible and in range") {
  Rng a(3), b(3);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
    const int k = a.integer(2, 5);
    CHECK(k == b.integer(2, 5));
    CHECK(k >= 2);
    CHECK(k <= 5);
  }
  CHECK(splitmix64(0) != splitmix64(1));
}

TEST_CASE("gen_subspace examples") {
  Rng rng(1);
  CHECK(gen_subspace(3, 0, rng).is_trivial());
  const Subspace full = gen_subspace(3, 3, rng);
  CHECK(full.dim() == 3);
  CHECK(dist(full.basis().adjoint() * full.basis(), Operator(Operator::Identity(3, 3))) < 1e-12);
  CHECK(dist(full.basis() * full.basis().adjoint(), Operator(Operator::Identity(3, 3))) < 1e-12);
  const Subspace s = gen_subspace(4, 2, rng);
  CHECK(dist(s.basis().adjoint() * s.basis(), Operator(Operator::Identity(2, 2))) <= 1e-9);
  CHECK_THROWS_AS(gen_subspace(3, 4, rng), BadDims);
}

TEST_CASE("random_rank hits the requested rank") {
  Rng rng(2);
  for (int r = 0; r <= 4; ++r) CHECK(rank(random_rank(4, 6, r, rng)) == r);
}

TEST_CASE("gen_complementable examples") {
  Rng rng(8);
  auto tri = gen_complementable(3, 3, 1, 1, 2, rng);
  auto b = block_decompose(tri.a, tri.s, tri.t);
  CHECK(rank(b.a22) == 2);
  CHECK(complementability(tri.a, tri.s, tri.t).strongly);

  tri = gen_complementable(4, 3, 2, 1, 0, rng);
  b = block_decompose(tri.a, tri.s, tri.t);
  const double sc = opnorm(tri.a);
  CHECK(opnorm(b.a21) <= 1e-12 * sc);
  CHECK(opnorm(b.a12) <= 1e-12 * sc);
  CHECK(complementability(tri.a, tri.s, tri.t).strongly);

  for (int i = 0; i < 30; ++i) {
    const int m = rng.integer(2, 6), n = rng.integer(2, 6);
    const int s = rng.integer(0, n), t = rng.integer(0, m);
    const int r = rng.integer(0, std::min(m - t, n - s));
    tri = gen_complementable(m, n, s, t, r, rng);
    CHECK(complementability(tri.a, tri.s, tri.t).strongly);
  }
}

TEST_CASE("gen_with_ranges examples") {
  const Subspace s = Subspace::span(e(3, 0));
  CHECK(dist(gen_with_ranges(s, s, mat({{1}})), mat({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}})) < 1e-15);

  Rng rng(4);
  CHECK(rank(gen_with_ranges(Subspace::full(3), Subspace::full(3), rng)) == 3);

  const Subspace t = gen_subspace(5, 2, rng), s2 = gen_subspace(4, 2, rng);
  const Operator b = gen_with_ranges(t, s2, rng);
  CHECK(rank(b) == 2);
  CHECK(range_leq(b, t.basis()));
  CHECK(range_leq(Operator(b.adjoint()), s2.basis()));
  CHECK_NOTHROW(require_matching_ranges(b, s2, t));
}

TEST_CASE("gen_DA_member examples") {
  const Operator a = mat({{1, 2}, {0, 1}, {1, 1}});
  Eigen::JacobiSVD<Operator> svd(a);
  CHECK(dist(gen_DA_member(a, Eigen::VectorXd(svd.singularValues())), 2.0 * a) < 1e-13);

  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    const Operator x = random_rank(4, 3, 1 + i % 3, rng);
    CHECK(in_DA(gen_DA_member(x, rng), x));
  }

  Eigen::VectorXd three(1);
  three << 3.0;
  CHECK(dist(gen_DA_member(mat({{2}}), three), mat({{5}})) < 1e-15);
  CHECK_THROWS_AS(gen_DA_member(Operator(Operator::Zero(2, 2)), rng), ZeroOperator);
}

TEST_CASE("config validation") {
  GenConfig c;
  CHECK_NOTHROW(c.validate());
  c.dim_min = 5;
  c.dim_max = 3;
  CHECK_THROWS(c.validate());
  c = GenConfig{};
  c.trials = 0;
  CHECK_THROWS(c.validate());
}

TEST_CASE("trial seeds differ across invariants and trials") {
  GenConfig c;
  std::set<std::uint64_t> seen;
  for (const auto& name : invariant_names())
    for (std::uint64_t t = 0; t < 5; ++t) seen.insert(trial_seed(c, name, t));
  CHECK(seen.size() == invariant_names().size() * 5);
}

TEST_CASE("single trial suite is deterministic") {
  GenConfig c;
  c.seed = 17;
  c.trials = 1;
  const auto a = run_suite(c, 1);
  const auto b = run_suite(c, 3);
  REQUIRE(a.invariants.size() == b.invariants.size());
  for (std::size_t i = 0; i < a.invariants.size(); ++i) {
    CHECK(a.invariants[i].pass == b.invariants[i].pass);
    CHECK(a.invariants[i].skip == b.invariants[i].skip);
    CHECK(a.invariants[i].counters == b.invariants[i].counters);
  }
}

TEST_CASE("small default suite has no failures") {
  GenConfig c;
  c.seed = 2;
  c.trials = 12;
  const auto r = run_suite(c);
  for (const auto& inv : r.invariants) {
    INFO(inv.name);
    CHECK(inv.fail == 0);
    for (const auto& f : inv.failures) MESSAGE(f.detail);
  }
  CHECK(r.collapse_discrepancies == 0);
}

TEST_CASE("condition cap of one rejects nearly everything") {
  GenConfig c;
  c.seed = 9;
  c.trials = 10;
  c.condition_cap = 1.0;
  const auto r = run_suite(c);
  CHECK(r.total_failures() == 0);
  long skip = 0, run = 0;
  for (const auto& inv : r.invariants) {
    skip += inv.skip;
    run += inv.pass + inv.fail + inv.skip;
  }
  MESSAGE("skipped " << skip << " of " << run);
  CHECK(skip * 10 >= run * 7);
}

TEST_CASE("unknown invariant is rejected") {
  CHECK_THROWS(run_trial("no.such", GenConfig{}, 0));
}
