// Property-suite trials. Every trial draws its own instance from a sub-seeded
// Rng, checks one invariant and reports Pass, Fail or Skip. Draws that are too
// ill-conditioned for a numerical verdict are skipped, not failed.

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "bishort/genlab.hpp"
#include "bishort/minus_order.hpp"

namespace bishort {

namespace {

struct SkipTrial {};

class Trial {
 public:
  Trial(const GenConfig& cfg, std::uint64_t seed) : cfg(cfg), tol(cfg.tol), rng(seed) { res.seed = seed; }

  const GenConfig& cfg;
  Tolerance tol;
  Rng rng;
  TrialResult res;

  int dim() { return rng.integer(cfg.dim_min, cfg.dim_max); }
  int pick(Eigen::Index lo, Eigen::Index hi) { return rng.integer(int(lo), int(hi)); }

  void skip_unless(bool ok) {
    if (!ok) throw SkipTrial{};
  }
  void conditioned(const Operator& a) { skip_unless(a.size() == 0 || condition_number(a, tol) <= cfg.condition_cap); }

  void check(bool ok, const std::string& what) {
    if (!ok && res.outcome != Outcome::Fail) {
      res.outcome = Outcome::Fail;
      res.detail = what;
    }
  }
  // ||x - y|| <= rel * scale (scale taken as 1 when zero)
  void close(const Operator& x, const Operator& y, double scale, double rel, const std::string& what) {
    const double err = opnorm(x - y);
    const double bound = rel * (scale > 0.0 ? scale : 1.0);
    if (!(err <= bound)) {
      std::ostringstream os;
      os << what << ": " << err << " > " << bound;
      check(false, os.str());
    }
  }
  void small(double v, double bound, const std::string& what) {
    if (!(v <= bound)) {
      std::ostringstream os;
      os << what << ": " << v << " > " << bound;
      check(false, os.str());
    }
  }

  void collapse(bool weak, bool strong, const char* what) {
    ++res.collapse_checks;
    if (weak != strong) {
      ++res.collapse_discrepancies;
      check(false, std::string(what) + ": weak and strong verdicts differ");
    }
  }
  void note(const ComplementabilityReport& r) { collapse(r.weakly, r.strongly, "complementability"); }
  void note(const SummabilityReport& r) { collapse(r.weakly, r.strongly, "summability"); }

  void count(const std::string& key, long v = 1) { res.counters[key] += v; }
};

using TrialFn = std::function<void(Trial&)>;

Operator identity(Eigen::Index n) { return Operator::Identity(n, n); }

double min_eig(const Operator& h) {
  if (h.size() == 0) return 0.0;
  const Operator sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Operator> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool same_range(const Operator& x, const Operator& y, const Tolerance& tol, double scale = 0.0) {
  return range_leq(x, y, tol, scale) && range_leq(y, x, tol, scale);
}

bool same_subspace(const Subspace& a, const Subspace& b, const Tolerance& tol) {
  return a.dim() == b.dim() && same_range(a.basis(), b.basis(), tol);
}

Subspace range_of(const Operator& a, const Tolerance& tol, double scale = 0.0) {
  return Subspace::span(a, tol, scale);
}
Subspace null_of(const Operator& a, const Tolerance& tol, double scale = 0.0) {
  return Subspace::span(fundamental_subspaces(a, tol, scale).null_basis, tol);
}

// Random complementable triple, rejecting ill-conditioned corners.
ComplementableTriple draw_triple(Trial& tr, bool square = false, bool same_dims = false) {
  const int m = tr.dim();
  const int n = square ? m : tr.dim();
  const int s = tr.pick(0, same_dims ? std::min(m, n) : n);
  const int t = same_dims ? s : tr.pick(0, m);
  const int r22 = tr.pick(0, std::min(n - s, m - t));
  auto triple = gen_complementable(m, n, s, t, r22, tr.rng);
  tr.conditioned(triple.a);
  const auto blocks = block_decompose(triple.a, triple.s, triple.t, tr.tol);
  tr.conditioned(blocks.a22);
  return triple;
}

// Triple that is complementable or, when the corner is rank deficient, made
// non-complementable by pushing A21 outside R(A22).
ComplementableTriple draw_mixed_triple(Trial& tr, bool& spoiled) {
  auto triple = draw_triple(tr);
  spoiled = false;
  const auto b = block_decompose(triple.a, triple.s, triple.t, tr.tol);
  const Eigen::Index r22 = rank(b.a22, tr.tol);
  if (tr.rng.coin() && b.a21.size() > 0 && r22 < b.a22.rows()) {
    const Subspace outside = Subspace::span(fundamental_subspaces(b.a22, tr.tol).conull_basis, tr.tol);
    const Operator bump = b.t_perp_basis * outside.basis() * random_matrix(outside.dim(), b.s_basis.cols(), tr.rng) *
                          b.s_basis.adjoint();
    triple.a += bump;
    spoiled = true;
  }
  return triple;
}

struct Pair {
  Operator a, b;
};

// A = X G_A Y^*, B = X G_B Y^* with G_A + G_B invertible, or a PSD pair.
Pair draw_summable_pair(Trial& tr) {
  const int m = tr.dim();
  if (tr.rng.integer(0, 2) == 0) {
    const Operator g1 = random_matrix(m, tr.pick(0, m), tr.rng);
    const Operator g2 = random_matrix(m, tr.pick(1, m), tr.rng);
    return {g1 * g1.adjoint(), g2 * g2.adjoint()};
  }
  const int n = tr.dim();
  const int k = tr.pick(1, std::min(m, n));
  const Operator x = random_matrix(m, k, tr.rng);
  const Operator y = random_matrix(n, k, tr.rng);
  const int ra = tr.pick(0, k);
  const int rb = tr.pick(k - ra, k);
  const Operator ga = random_rank(k, k, ra, tr.rng);
  const Operator gb = random_rank(k, k, rb, tr.rng);
  tr.conditioned(ga + gb);
  return {x * ga * y.adjoint(), x * gb * y.adjoint()};
}

Subspace planted_pair_member(Eigen::Index n, const Operator& shared, Eigen::Index extra, Rng& rng) {
  Operator cols(n, shared.cols() + extra);
  cols << shared, random_matrix(n, extra, rng);
  return Subspace::span(cols);
}

// Two subspaces of C^n, sometimes sharing a planted common part.
std::pair<Subspace, Subspace> draw_subspace_pair(Trial& tr, int n) {
  const int w = tr.rng.coin() ? tr.pick(1, std::min(2, n - 1)) : 0;
  const Operator shared = random_matrix(n, w, tr.rng);
  const int p = tr.pick(w, n);
  const int q = tr.pick(w, n);
  auto m = planted_pair_member(n, shared, p - w, tr.rng);
  auto nn = planted_pair_member(n, shared, q - w, tr.rng);
  // principal angles must be either zero or resolvable
  if (m.dim() > 0 && nn.dim() > 0) {
    Eigen::JacobiSVD<Operator> svd(m.basis().adjoint() * nn.basis());
    for (double c : svd.singularValues()) {
      const double gap = 1.0 - c;
      tr.skip_unless(gap < 1e-12 || gap > 1.0 / tr.cfg.condition_cap);
    }
  }
  return {std::move(m), std::move(nn)};
}

// ---------------------------------------------------------------- numcore

void numcore_penrose(Trial& tr) {
  const int m = tr.dim(), n = tr.dim();
  const Operator a = random_rank(m, n, tr.pick(0, std::min(m, n)), tr.rng);
  tr.conditioned(a);
  const Operator p = pinv(a, tr.tol);
  const double eq = tr.tol.eq_rel;
  tr.close(a * p * a, a, opnorm(a), eq, "A A+ A = A");
  tr.close(p * a * p, p, opnorm(p), eq, "A+ A A+ = A+");
  const Operator ap = a * p, pa = p * a;
  tr.close(ap.adjoint(), ap, 1.0, eq, "A A+ Hermitian");
  tr.close(pa.adjoint(), pa, 1.0, eq, "A+ A Hermitian");
}

void numcore_polar(Trial& tr) {
  const int m = tr.dim(), n = tr.dim();
  const Operator a = random_rank(m, n, tr.pick(0, std::min(m, n)), tr.rng);
  tr.conditioned(a);
  const auto pd = polar(a, tr.tol);
  const double na = opnorm(a);
  tr.close(pd.u * pd.abs_a, a, na, tr.tol.eq_rel, "U|A| = A");
  tr.close(pd.abs_a.adjoint(), pd.abs_a, na, tr.tol.eq_rel, "|A| Hermitian");
  tr.check(min_eig(pd.abs_a) >= -tr.tol.psd_slack * std::max(na, 1.0), "|A| positive");
  tr.close(pd.u.adjoint() * pd.u, pinv(a, tr.tol) * a, 1.0, tr.tol.eq_rel, "U*U = P_R(A*)");
}

void numcore_sqrt_psd(Trial& tr) {
  const int n = tr.dim();
  const Operator g = random_matrix(tr.pick(0, n), n, tr.rng);
  const Operator m = g.adjoint() * g;
  tr.conditioned(m);
  const Operator r = sqrt_psd(m, tr.tol);
  const double nm = opnorm(m);
  tr.close(r * r, m, nm, tr.tol.eq_rel, "R^2 = M");
  tr.close(r.adjoint(), r, std::sqrt(nm), tr.tol.eq_rel, "R Hermitian");
  tr.check(min_eig(r) >= -tr.tol.psd_slack * std::max(std::sqrt(nm), 1.0), "R positive");
}

void numcore_fundamental(Trial& tr) {
  const int m = tr.dim(), n = tr.dim();
  const int r = tr.pick(0, std::min(m, n));
  const Operator a = random_rank(m, n, r, tr.rng);
  tr.conditioned(a);
  const auto fs = fundamental_subspaces(a, tr.tol);
  const double eq = tr.tol.eq_rel;
  tr.check(fs.rank == r, "rank");
  tr.check(fs.range_basis.cols() + fs.conull_basis.cols() == m, "range and conull dims");
  tr.check(fs.corange_basis.cols() + fs.null_basis.cols() == n, "corange and null dims");
  const Operator p = pinv(a, tr.tol);
  tr.close(fs.range_basis * fs.range_basis.adjoint(), a * p, 1.0, eq, "range projection");
  tr.close(fs.null_basis * fs.null_basis.adjoint(), identity(n) - p * a, 1.0, eq, "null projection");
  tr.small(opnorm(a * fs.null_basis), eq * std::max(opnorm(a), 1.0), "A N(A) = 0");
  tr.small(opnorm(fs.range_basis.adjoint() * fs.conull_basis), eq, "R(A) orthogonal to N(A*)");
}

// ---------------------------------------------------------------- geometry

void geometry_friedrichs_complement(Trial& tr) {
  const int n = tr.rng.integer(3, 10);
  const auto [m, nn] = draw_subspace_pair(tr, n);
  const double lhs = angles(m, nn, tr.tol).friedrichs_cos;
  const double rhs = angles(m.complement(), nn.complement(), tr.tol).friedrichs_cos;
  tr.small(std::abs(lhs - rhs), 1e-8, "Friedrichs cosine of complements");
}

void geometry_dixmier_meet(Trial& tr) {
  const int n = tr.dim() + 1;
  const auto [m, nn] = draw_subspace_pair(tr, n);
  const bool by_angle = dixmier_cos(m, nn) < 1.0 - tr.tol.eq_rel;
  const bool by_meet = subspace_meet(m, nn, tr.tol).is_trivial();
  tr.check(by_angle == by_meet, "Dixmier cosine < 1 iff the meet is trivial");
  const bool by_join = subspace_join(m.complement(), nn.complement(), tr.tol).dim() == n;
  tr.check(by_meet == by_join, "meet trivial iff the complements span");
}

void geometry_projections(Trial& tr) {
  const int n = tr.dim();
  const int k = tr.pick(0, n);
  const Subspace r = gen_subspace(n, k, tr.rng);
  const Subspace nl = gen_subspace(n, n - k, tr.rng);
  const double eq = tr.tol.eq_rel;
  const Operator p = ortho_projection(r);
  tr.close(p.adjoint(), p, 1.0, eq, "orthogonal projection Hermitian");
  tr.close(p * p, p, 1.0, eq, "orthogonal projection idempotent");
  tr.close(p * r.basis(), r.basis(), 1.0, eq, "orthogonal projection fixes its range");
  tr.close(oblique_projection(r, r.complement(), tr.tol), p, 1.0, eq, "oblique along the complement");

  tr.skip_unless(dixmier_cos(r, nl) < 1.0 - 1.0 / tr.cfg.condition_cap);
  const Operator q = oblique_projection(r, nl, tr.tol);
  const double nq = opnorm(q);
  tr.close(q * q, q, nq * nq, eq, "oblique projection idempotent");
  tr.close(q * r.basis(), r.basis(), nq, eq, "oblique projection fixes its range");
  tr.small(opnorm(q * nl.basis()), eq * nq, "oblique projection kills its nullspace");
}

void geometry_de_morgan(Trial& tr) {
  const int n = tr.dim() + 1;
  const auto [m, nn] = draw_subspace_pair(tr, n);
  const Subspace lhs = subspace_meet(m, nn, tr.tol).complement();
  const Subspace rhs = subspace_join(m.complement(), nn.complement(), tr.tol);
  tr.check(lhs.dim() == rhs.dim(), "complement of the meet has the join's dimension");
  tr.close(lhs.projection(), rhs.projection(), 1.0, 1e-8, "complement of the meet is the join of complements");
}

// ---------------------------------------------------------------- douglas

// inf over a ladder of lambda of "AA^* - BB^*/lambda is positive"
bool ladder_majorizes(const Operator& a, const Operator& b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const Operator aa = a * a.adjoint();
  const Operator bb = b * b.adjoint();
  const double na = opnorm(aa), nb = opnorm(bb);
  for (int k = 0; k <= 12; ++k) {
    const double lambda = std::pow(10.0, k);
    if (min_eig(aa - bb / lambda) >= -16.0 * eps * (na + nb / lambda) * double(a.rows())) return true;
  }
  return false;
}

// smallest lambda with lambda AA^* - BB^* positive, by bisection
double minimal_lambda(const Operator& a, const Operator& b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const Operator aa = a * a.adjoint();
  const Operator bb = b * b.adjoint();
  const double na = opnorm(aa), nb = opnorm(bb);
  auto ok = [&](double lam) { return min_eig(lam * aa - bb) >= -64.0 * eps * (lam * na + nb); };
  double hi = 1.0;
  while (!ok(hi)) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = (lo + hi) / 2.0;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

Operator normalized(const Operator& a) {
  const double n = opnorm(a);
  return n > 0.0 ? Operator(a / n) : a;
}

void douglas_equivalence(Trial& tr) {
  const int m = tr.dim(), n = tr.dim();
  const int r = tr.pick(0, std::min(m, n));
  const Operator a = normalized(random_rank(m, n, r, tr.rng));
  tr.conditioned(a);
  const bool included = r == m || tr.rng.coin();
  const int k = tr.pick(1, tr.cfg.dim_max);
  Operator b = normalized(Operator(a * random_matrix(n, k, tr.rng)));
  if (!included) {
    // a unit-size part outside R(A), so a finite lambda ladder can see it
    const Operator out = fundamental_subspaces(a, tr.tol).conull_basis;
    b = normalized(Operator(b + normalized(Operator(out * random_matrix(out.cols(), k, tr.rng)))));
  }
  tr.conditioned(b);
  bool by_solution = true;
  try {
    (void)reduced_solution(a, b, tr.tol);
  } catch (const RangeNotIncluded& e) {
    tr.skip_unless(!e.borderline);
    by_solution = false;
  }
  const bool by_range = range_leq(b, a, tr.tol);
  const bool by_ladder = ladder_majorizes(a, b);
  tr.check(by_range == included, "range inclusion verdict");
  tr.check(by_range == by_solution, "range inclusion vs solvability");
  tr.check(by_range == by_ladder, "range inclusion vs majorization");
  tr.count(included ? "included" : "excluded");
}

void douglas_minimal_norm(Trial& tr) {
  const int m = tr.dim(), n = tr.dim();
  const Operator a = normalized(random_rank(m, n, tr.pick(1, std::min(m, n)), tr.rng));
  tr.conditioned(a);
  const Operator b = a * random_matrix(n, tr.pick(1, tr.cfg.dim_max), tr.rng);
  const auto sol = reduced_solution(a, b, tr.tol);
  const double eq = tr.tol.eq_rel;
  const double dn = std::sqrt(sol.norm_sq);
  tr.small(sol.corange_defect, eq * std::max(dn, 1.0), "D lies in N(A)^perp");
  const Operator other = sol.d + (identity(n) - pinv(a, tr.tol) * a) * random_matrix(n, b.cols(), tr.rng);
  tr.close(a * other, b, std::max(opnorm(b), 1.0), eq, "perturbed solution solves AX = B");
  tr.check(opnorm(other) >= dn - eq * std::max(dn, 1.0), "D has minimal norm");
  if (condition_number(a, tr.tol) <= 1e3) {
    const double lam = minimal_lambda(a, b);
    tr.small(std::abs(lam - sol.norm_sq), 1e-6 * std::max(sol.norm_sq, 1e-300), "||D||^2 is the least majorizing lambda");
    tr.count("lambda_checked");
  }
}

void douglas_nullspace(Trial& tr) {
  const int m = tr.dim(), n = tr.dim();
  const Operator a = random_rank(m, n, tr.pick(0, std::min(m, n)), tr.rng);
  tr.conditioned(a);
  const int k = tr.dim();
  const Operator b = a * random_rank(n, k, tr.pick(0, std::min(n, k)), tr.rng);
  tr.conditioned(b);
  const auto sol = reduced_solution(a, b, tr.tol);
  tr.check(rank(sol.d, tr.tol) == rank(b, tr.tol), "rank D = rank B");
  const double eq = tr.tol.eq_rel;
  const Operator nd = fundamental_subspaces(sol.d, tr.tol).null_basis;
  const Operator nb = fundamental_subspaces(b, tr.tol).null_basis;
  tr.check(nd.cols() == nb.cols(), "dim N(D) = dim N(B)");
  tr.small(opnorm(b * nd), eq * std::max(opnorm(b), 1.0), "N(D) in N(B)");
  tr.small(opnorm(sol.d * nb), eq * std::max(opnorm(sol.d), 1.0), "N(B) in N(D)");
}

// ---------------------------------------------------------------- shorting

void shorting_collapse(Trial& tr) {
  bool spoiled = false;
  const auto tri = draw_mixed_triple(tr, spoiled);
  const auto rep = complementability(tri.a, tri.s, tri.t, tr.tol);
  tr.note(rep);
  tr.check(rep.strongly == !spoiled, "complementability of the drawn triple");
  tr.check(rep.strongly == rep.witnesses.has_value(), "witnesses exactly when complementable");
  tr.count(spoiled ? "non_complementable" : "complementable");
}

void shorting_direct_properties(Trial& tr) {
  const auto tri = draw_triple(tr);
  const auto res = shorted(tri.a, tri.s, tri.t, tr.tol);
  tr.note(res.report);
  const Operator& sh = res.shorted;
  const double scale = std::max(opnorm(tri.a), opnorm(sh));
  const double eq = tr.tol.eq_rel;

  const Complex alpha = tr.rng.complex_normal();
  const Operator scaled = shorted(Operator(alpha * tri.a), tri.s, tri.t, tr.tol).shorted;
  tr.close(scaled, alpha * sh, std::abs(alpha) * scale, eq, "homogeneity");

  const Operator adj = shorted(Operator(tri.a.adjoint()), tri.t, tri.s, tr.tol).shorted;
  tr.close(adj, sh.adjoint(), scale, eq, "adjoint");

  const Operator twice = shorted(sh, tri.s, tri.t, tr.tol).shorted;
  tr.close(twice, sh, scale, eq, "idempotent");

  tr.check(range_leq(sh, tri.t.basis(), tr.tol), "R(A/(S,T)) in T");
  tr.check(range_leq(Operator(sh.adjoint()), tri.s.basis(), tr.tol), "R(A/(S,T)^*) in S");

  const int n = tr.dim();
  const Operator g = random_matrix(n, n, tr.rng);
  const Operator h = g + g.adjoint();
  const Subspace s = gen_subspace(n, tr.pick(0, n), tr.rng);
  const auto hrep = complementability(h, s, s, tr.tol);
  tr.note(hrep);
  tr.skip_unless(hrep.strongly);
  tr.conditioned(block_decompose(h, s, s, tr.tol).a22);
  const Operator hs = shorted(h, s, s, tr.tol).shorted;
  tr.close(hs.adjoint(), hs, std::max(opnorm(h), opnorm(hs)), eq, "Hermitian in, Hermitian out");
}

void shorting_range_nullspace(Trial& tr) {
  const auto tri = draw_triple(tr);
  const auto res = shorted(tri.a, tri.s, tri.t, tr.tol);
  tr.note(res.report);
  const double na = opnorm(tri.a);
  const Subspace meet = subspace_meet(range_of(tri.a, tr.tol), tri.t, tr.tol);
  tr.check(rank(res.shorted, tr.tol, na) == meet.dim(), "rank is dim(R(A) ∩ T)");
  tr.check(meet.dim() == 0 || same_range(res.shorted, meet.basis(), tr.tol, na), "range is R(A) ∩ T");
  const Subspace nsh = null_of(res.shorted, tr.tol, na);
  const Subspace join = subspace_join(null_of(tri.a, tr.tol), tri.s.complement(), tr.tol);
  tr.check(same_subspace(nsh, join, tr.tol), "nullspace is N(A) + S^perp");
}

void shorting_qa_ap(Trial& tr) {
  const auto tri = draw_triple(tr);
  const auto res = shorted(tri.a, tri.s, tri.t, tr.tol);
  tr.note(res.report);
  const double na = opnorm(tri.a);
  const double eq = tr.tol.eq_rel;
  tr.small(res.diagnostics.qa_minus_ap, eq * std::max(na, 1.0), "QA = AP");
  tr.small(res.diagnostics.ap_minus_shorted, eq * std::max(na, 1.0), "AP = A/(S,T)");
  const double np = opnorm(res.p), nq = opnorm(res.q);
  tr.close(res.p * res.p, res.p, np * np, eq, "P idempotent");
  tr.close(res.q * res.q, res.q, nq * nq, eq, "Q idempotent");
  if (tri.s.dim() > 0) tr.check(same_range(Operator(res.p.adjoint()), tri.s.basis(), tr.tol), "R(P^*) = S");
  else tr.small(np, eq, "P = 0 when S = 0");
  if (tri.t.dim() > 0) tr.check(same_range(res.q, tri.t.basis(), tr.tol), "R(Q) = T");
  else tr.small(nq, eq, "Q = 0 when T = 0");
}

void shorting_witnesses(Trial& tr) {
  bool spoiled = false;
  const auto tri = draw_mixed_triple(tr, spoiled);
  const auto rep = complementability(tri.a, tri.s, tri.t, tr.tol);
  tr.note(rep);
  const Eigen::Index m = tri.a.rows(), n = tri.a.cols();
  const double eq = tr.tol.eq_rel;

  // angle criterion, skipping draws whose cosines sit too close to 1 to call
  const double limit = 1.0 - tr.tol.eq_rel;
  for (double c : {rep.dixmier_s, rep.dixmier_t}) {
    const double gap = 1.0 - c;
    tr.skip_unless(gap < 1e-11 || gap > 1e-6);
  }
  const bool by_angles = rep.dixmier_s < limit && rep.dixmier_t < limit;
  tr.check(by_angles == rep.strongly, "angle criterion");

  // H1 = S^perp + N(P_{T^perp} A), H2 = T^perp + N(P_{S^perp} A^*)
  const Operator pt_perp = identity(m) - tri.t.projection();
  const Operator ps_perp = identity(n) - tri.s.projection();
  const double na = opnorm(tri.a);
  const bool sum1 = subspace_join(tri.s.complement(), null_of(pt_perp * tri.a, tr.tol, na), tr.tol).dim() == n;
  const bool sum2 =
      subspace_join(tri.t.complement(), null_of(ps_perp * tri.a.adjoint(), tr.tol, na), tr.tol).dim() == m;
  tr.check((sum1 && sum2) == rep.strongly, "subspace-sum criterion");

  if (!rep.witnesses) return;
  const auto& w = *rep.witnesses;
  const double scale = std::max(opnorm(tri.a), 1.0) * std::max({opnorm(w.m_r), opnorm(w.m_l), 1.0});
  tr.close(ps_perp * w.m_r, w.m_r, std::max(opnorm(w.m_r), 1.0), eq, "(I - P_S) M_r = M_r");
  tr.close(pt_perp * tri.a * w.m_r, pt_perp * tri.a, scale, eq, "(I - P_T) A M_r = (I - P_T) A");
  tr.close(pt_perp * w.m_l, w.m_l, std::max(opnorm(w.m_l), 1.0), eq, "(I - P_T) M_l = M_l");
  tr.close(w.m_l.adjoint() * tri.a * ps_perp, tri.a * ps_perp, scale, eq, "M_l^* A (I - P_S) = A (I - P_S)");

  const double np = opnorm(w.p_hat), nq = opnorm(w.q_hat);
  tr.close(w.p_hat * w.p_hat, w.p_hat, np * np, eq, "P-hat idempotent");
  tr.close(w.q_hat * w.q_hat, w.q_hat, nq * nq, eq, "Q-hat idempotent");
  tr.check(range_leq(Operator(tri.a * w.p_hat), tri.t.basis(), tr.tol), "R(A P-hat) in T");
  tr.check(range_leq(Operator((w.q_hat * tri.a).adjoint()), tri.s.basis(), tr.tol), "R((Q-hat A)^*) in S");
}

// A with S, T and a second pair (S2, T2) for the iterated identity.
void shorting_iterated(Trial& tr) {
  const int n = std::max(tr.dim(), 2);
  const int s = tr.pick(1, n);
  const auto tri = gen_complementable(n, n, s, s, n - s, tr.rng);
  tr.conditioned(tri.a);
  const int s2 = tr.pick(n - s, n);
  const bool nested = tr.rng.coin();
  Subspace S2 = gen_subspace(n, s2, tr.rng);
  Subspace T2 = gen_subspace(n, s2, tr.rng);
  if (nested && s2 >= s) {
    S2 = subspace_join(tri.s, gen_subspace(n, s2 - s, tr.rng), tr.tol);
    T2 = subspace_join(tri.t, gen_subspace(n, s2 - s, tr.rng), tr.tol);
    tr.count("nested");
  }
  const Subspace s3 = subspace_meet(tri.s, S2, tr.tol);
  const Subspace t3 = subspace_meet(tri.t, T2, tr.tol);

  const auto r1 = complementability(tri.a, tri.s, tri.t, tr.tol);
  tr.note(r1);
  tr.skip_unless(r1.strongly);
  const Operator sh = shorted(tri.a, tri.s, tri.t, tr.tol).shorted;
  const auto r2 = complementability(sh, S2, T2, tr.tol);
  const auto r3 = complementability(tri.a, s3, t3, tr.tol);
  tr.note(r2);
  tr.note(r3);
  tr.skip_unless(r2.strongly && r3.strongly);
  tr.conditioned(block_decompose(sh, S2, T2, tr.tol).a22);
  tr.conditioned(block_decompose(tri.a, s3, t3, tr.tol).a22);

  const Operator lhs = shorted(sh, S2, T2, tr.tol).shorted;
  const Operator rhs = shorted(tri.a, s3, t3, tr.tol).shorted;
  tr.close(lhs, rhs, std::max(opnorm(tri.a), opnorm(sh)), 1e-8, "(A/(S,T))/(S2,T2) = A/(S∩S2, T∩T2)");
  tr.count("accepted");
}

void shorting_idempotent_case(Trial& tr) {
  const int n = tr.dim();
  const int k = tr.pick(1, n);
  const Operator x = random_matrix(n, k, tr.rng);
  const Operator y = random_matrix(n, k, tr.rng);
  const Operator yx = y.adjoint() * x;
  tr.conditioned(yx);
  const Operator e = x * yx.inverse() * y.adjoint();
  tr.skip_unless(opnorm(e) <= std::sqrt(tr.cfg.condition_cap));
  const int sd = tr.rng.coin() ? tr.pick(n - k, n) : tr.pick(0, n);
  const int td = tr.rng.coin() ? sd : tr.pick(0, n);
  const Subspace s = gen_subspace(n, sd, tr.rng);
  const Subspace t = gen_subspace(n, td, tr.rng);
  const auto rep = complementability(e, s, t, tr.tol);
  tr.note(rep);
  tr.skip_unless(rep.strongly);
  tr.conditioned(block_decompose(e, s, t, tr.tol).a22);
  const Operator sh = shorted(e, s, t, tr.tol).shorted;
  const double nsh = opnorm(sh);
  tr.close(sh * sh, sh, std::max(nsh * nsh, 1.0), tr.tol.eq_rel, "shorted projection is idempotent");
  const Subspace range = subspace_meet(range_of(e, tr.tol), t, tr.tol);
  const Subspace along = subspace_join(null_of(e, tr.tol), s.complement(), tr.tol);
  tr.check(range.dim() + along.dim() == n, "R(E) ∩ T and N(E) + S^perp are complementary");
  if (range.dim() + along.dim() != n) return;
  tr.skip_unless(dixmier_cos(range, along) < 1.0 - 1.0 / tr.cfg.condition_cap);
  const Operator expected = oblique_projection(range, along, tr.tol);
  tr.close(sh, expected, std::max({nsh, opnorm(expected), opnorm(e)}), 1e-8,
           "projection onto R(E) ∩ T along N(E) + S^perp");
}

void shorting_positive_case(Trial& tr) {
  const int n = tr.dim();
  const Operator g = random_matrix(n, tr.pick(0, n), tr.rng);
  const Operator a = g * g.adjoint();
  tr.conditioned(a);
  const Subspace s = gen_subspace(n, tr.pick(0, n), tr.rng);
  const auto res = shorted(a, s, s, tr.tol);
  tr.note(res.report);
  const double na = std::max(opnorm(a), 1.0);
  const double eq = tr.tol.eq_rel;
  tr.close(res.shorted.adjoint(), res.shorted, na, eq, "shorted Hermitian");
  tr.check(min_eig(res.shorted) >= -eq * na, "shorted positive");
  tr.check(min_eig(a - res.shorted) >= -eq * na, "shorted below A");
  tr.check(range_leq(res.shorted, s.basis(), tr.tol), "range in S");
}

void shorting_solve_direction(Trial& tr) {
  const auto tri = draw_triple(tr);
  tr.skip_unless(tri.s.dim() > 0);
  const auto res = shorted(tri.a, tri.s, tri.t, tr.tol);
  tr.note(res.report);
  const CVector x = tri.s.basis() * random_matrix(tri.s.dim(), 1, tr.rng);
  const CVector y = solve_shorting_direction(tri.a, tri.s, tri.t, x, tr.tol);
  const double eq = tr.tol.eq_rel;
  const double scale = std::max(opnorm(tri.a), 1.0) * (x.norm() + y.norm());
  tr.small((tri.s.projection() * y).norm(), eq * std::max(y.norm(), 1.0), "y in S^perp");
  tr.small((tri.a * (x + y) - res.shorted * x).norm(), eq * scale, "A(x + y) = A/(S,T) x");

  // independent least squares: y' in S^perp with P_{T^perp} A (x + y') = 0
  const Operator sp = tri.s.complement_basis();
  const Operator tp = tri.t.complement_basis();
  if (sp.cols() > 0 && tp.cols() > 0) {
    const Operator lhs = tp.adjoint() * tri.a * sp;
    const CVector rhs = -(tp.adjoint() * tri.a * x);
    const CVector z = lhs.completeOrthogonalDecomposition().solve(rhs);
    const CVector y2 = sp * z;
    tr.small((tri.a * (x + y2) - res.shorted * x).norm(), 1e-8 * std::max(scale, 1.0), "least-squares direction");
  }
}

// ---------------------------------------------------------------- minus order

// Chains C <= D <= B built from nested idempotents in a shared frame.
void minus_order_axioms(Trial& tr) {
  const int m = tr.dim(), n = tr.dim();
  const int r = tr.pick(1, std::min(m, n));
  const Operator x = random_matrix(m, r, tr.rng);
  const Operator y = random_matrix(n, r, tr.rng);
  const Operator frame = random_matrix(r, r, tr.rng);
  tr.conditioned(frame);
  const int k2 = tr.pick(0, r);
  const int k1 = tr.pick(0, k2);
  Eigen::VectorXcd d1 = Eigen::VectorXcd::Zero(r), d2 = Eigen::VectorXcd::Zero(r);
  d1.head(k1).setOnes();
  d2.head(k2).setOnes();
  const Operator fi = frame.inverse();
  const Operator b = x * y.adjoint();
  const Operator d = x * frame * d2.asDiagonal() * fi * y.adjoint();
  const Operator c = x * frame * d1.asDiagonal() * fi * y.adjoint();
  tr.conditioned(b);
  tr.skip_unless(opnorm(c) <= tr.cfg.condition_cap && opnorm(d) <= tr.cfg.condition_cap);

  tr.check(minus_leq(b, b, tr.tol).holds, "reflexive");
  tr.check(minus_leq(c, d, tr.tol).holds, "C <= D");
  tr.check(minus_leq(d, b, tr.tol).holds, "D <= B");
  tr.check(minus_leq(c, b, tr.tol).holds, "transitive C <= B");
  // antisymmetry: D <= C as well only when they coincide
  if (minus_leq(d, c, tr.tol).holds)
    tr.close(d, c, std::max(opnorm(d), 1.0), tr.tol.eq_rel, "antisymmetric");
  else
    tr.count("strict_pairs");
  tr.check((k1 == k2) == minus_leq(d, c, tr.tol).holds, "D <= C exactly when the chain is flat");
  const auto v = minus_leq(d, b, tr.tol);
  tr.check(v.rank_route == v.projection_route, "rank and projection routes agree");
}

void minus_range_inclusion(Trial& tr) {
  const auto tri = draw_triple(tr);
  const auto res = shorted(tri.a, tri.s, tri.t, tr.tol);
  tr.note(res.report);
  const auto v = minus_leq(res.shorted, tri.a, tr.tol);
  tr.check(v.holds, "A/(S,T) <= A");
  tr.check(v.rank_route == v.projection_route, "rank and projection routes agree");
  tr.check(in_minus_set(res.shorted, tri.a, tri.s, tri.t, tr.tol), "A/(S,T) in M^-(A,S,T)");
}

void minus_projection_inheritance(Trial& tr) {
  const int n = tr.dim();
  const int k = tr.pick(1, n);
  const Operator x = random_matrix(n, k, tr.rng);
  const Operator y = random_matrix(n, k, tr.rng);
  const Operator yx = y.adjoint() * x;
  tr.conditioned(yx);
  const Operator e = x * yx.inverse() * y.adjoint();
  tr.skip_unless(opnorm(e) <= 1e3);
  const int j = tr.pick(0, k);
  const Operator sub = x.leftCols(j);
  // a sub-projection along a larger nullspace: C = X1 (Y1^* X1)^{-1} Y1^* with
  // Y1 chosen so that C <= E
  const Operator yfull = y * yx.inverse().adjoint();  // biorthogonal: yfull^* x = I
  const Operator c = sub * yfull.leftCols(j).adjoint();
  const auto v = minus_leq(c, e, tr.tol);
  tr.check(v.holds, "sub-projection below the projection");
  tr.close(c * c, c, 1.0, 1e-8, "C idempotent");
  if (v.witnesses) {
    tr.close(v.witnesses->q * e, c, 1.0, 1e-8, "C = Q E");
    tr.close(e * v.witnesses->p, c, 1.0, 1e-8, "C = E P");
  }
  // a C <= E with E a projection is itself a projection
  const Operator k_idem = [&] {
    const Operator f = random_matrix(k, k, tr.rng);
    Eigen::VectorXcd dd = Eigen::VectorXcd::Zero(k);
    dd.head(j).setOnes();
    return Operator(f * dd.asDiagonal() * f.inverse());
  }();
  const Operator c2 = x * k_idem * yfull.adjoint();
  tr.skip_unless(opnorm(c2) <= 1e3);
  tr.check(minus_leq(c2, e, tr.tol).holds, "structured C below E");
  tr.close(c2 * c2, c2, 1.0, 1e-8, "C below a projection is a projection");
}

void minus_mitra_maximality(Trial& tr) {
  const auto tri = draw_triple(tr);
  const auto res = shorted(tri.a, tri.s, tri.t, tr.tol);
  tr.note(res.report);
  const Operator& sh = res.shorted;
  tr.check(in_minus_set(sh, tri.a, tri.s, tri.t, tr.tol), "A/(S,T) in M^-(A,S,T)");
  const Eigen::Index m = tri.a.rows();
  const Eigen::Index t = tri.t.dim();

  for (int sample = 0; sample < 4; ++sample) {
    Operator c;
    if (sample % 2 == 0) {
      // E S with E an idempotent whose range sits inside T
      const int j = tr.pick(0, t);
      const Subspace range = Subspace::span(Operator(tri.t.basis() * random_matrix(t, j, tr.rng)), tr.tol);
      const Subspace along = gen_subspace(m, m - range.dim(), tr.rng);
      if (dixmier_cos(range, along) > 1.0 - 1e-3) continue;
      const Operator e = oblique_projection(range, along, tr.tol);
      if (opnorm(e) > 1e3) continue;
      c = e * sh;
    } else {
      // U_r Sigma K V_r^* with K idempotent
      Eigen::JacobiSVD<Operator> svd(sh, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const Eigen::Index r = rank(sh, tr.tol);
      if (r == 0) continue;
      const Operator f = random_matrix(r, r, tr.rng);
      if (condition_number(f, tr.tol) > 1e3) continue;
      Eigen::VectorXcd dd = Eigen::VectorXcd::Zero(r);
      dd.head(tr.pick(0, r)).setOnes();
      const Operator kk = f * dd.asDiagonal() * f.inverse();
      const Eigen::VectorXcd sv = svd.singularValues().head(r).cast<Complex>();
      c = svd.matrixU().leftCols(r) * sv.asDiagonal() * kk * svd.matrixV().leftCols(r).adjoint();
    }
    tr.count("samples_drawn");
    if (!in_minus_set(c, tri.a, tri.s, tri.t, tr.tol)) continue;
    tr.count("samples_accepted");
    const auto v = minus_leq(c, sh, tr.tol);
    tr.check(v.rank_route && v.projection_route, "accepted sample is below A/(S,T)");
  }
}

// ---------------------------------------------------------------- parallel

void parallel_route_agreement(Trial& tr) {
  const auto [a, b] = draw_summable_pair(tr);
  tr.conditioned(a + b);
  const auto rep = summability(a, b, tr.tol);
  tr.note(rep);
  tr.check(rep.strongly, "drawn pair is summable");
  if (!rep.strongly) return;
  const auto ps = parallel_sum(a, b, tr.tol);
  tr.note(ps.report);
  const double scale = std::max(opnorm(a), opnorm(b));
  tr.small(ps.max_route_disagreement, 1e-8 * std::max(scale, 1e-300), "routes agree");
  tr.count("pairs");
}

void parallel_commutativity(Trial& tr) {
  const auto [a, b] = draw_summable_pair(tr);
  tr.conditioned(a + b);
  const auto ab = parallel_sum(a, b, tr.tol);
  const auto ba = parallel_sum(b, a, tr.tol);
  tr.note(ab.report);
  tr.note(ba.report);
  const double scale = std::max(opnorm(a), opnorm(b));
  tr.close(ab.sum, ba.sum, scale, tr.tol.eq_rel, "A ∥ B = B ∥ A");
  tr.small(ab.commutativity_defect, tr.tol.eq_rel * std::max(scale, 1e-300), "pseudoinverse commutativity");
}

void parallel_range_intersection(Trial& tr) {
  const auto [a, b] = draw_summable_pair(tr);
  tr.conditioned(a + b);
  const auto ps = parallel_sum(a, b, tr.tol);
  tr.note(ps.report);
  const double sc = std::max(opnorm(a), opnorm(b));
  const Subspace meet = subspace_meet(range_of(a, tr.tol), range_of(b, tr.tol), tr.tol);
  tr.check(rank(ps.sum, tr.tol, sc) == meet.dim(), "rank(A ∥ B) = dim(R(A) ∩ R(B))");
  tr.check(meet.dim() == 0 || same_range(ps.sum, meet.basis(), tr.tol, sc), "R(A ∥ B) = R(A) ∩ R(B)");
}

void parallel_collapse(Trial& tr) {
  const bool summable_draw = tr.rng.coin();
  Operator a, b;
  if (summable_draw) {
    std::tie(a, b) = [&] {
      auto p = draw_summable_pair(tr);
      return std::make_pair(p.a, p.b);
    }();
  } else {
    const int m = tr.dim(), n = tr.dim();
    a = random_matrix(m, n, tr.rng);
    b = -a + random_rank(m, n, tr.pick(0, std::min(m, n) - 1), tr.rng);
  }
  const auto rep = summability(a, b, tr.tol);
  tr.note(rep);
  if (summable_draw) tr.check(rep.strongly, "drawn pair is summable");
  if (rep.strongly) tr.check(rep.b_inclusions, "B inclusions follow from A inclusions");
  tr.count(rep.strongly ? "summable" : "not_summable");
}

void parallel_round_trip(Trial& tr) {
  const int m = tr.dim(), n = tr.dim();
  const Operator a = random_rank(m, n, tr.pick(1, std::min(m, n)), tr.rng);
  tr.conditioned(a);
  const Operator c = gen_DA_member(a, tr.rng, tr.tol);
  tr.conditioned(c);
  const Operator d = parallel_subtract(c, a, tr.tol);
  const double nc = opnorm(c);
  const auto back = parallel_sum(a, d, tr.tol);
  tr.note(back.report);
  tr.close(back.sum, c, nc, 1e-8, "A ∥ (C ÷ A) = C");
  tr.close(parallel_sum(d, a, tr.tol).sum, c, nc, 1e-8, "(C ÷ A) ∥ A = C");
  tr.check(same_range(Operator(a + d), a, tr.tol), "R(A + X) = R(A)");
  tr.check(same_range(Operator((a + d).adjoint()), Operator(a.adjoint()), tr.tol), "R((A + X)^*) = R(A^*)");

  // the other direction: X in D_{-A}, C = A ∥ X, then C ÷ A = X
  const Operator x = gen_DA_member(Operator(-a), tr.rng, tr.tol);
  tr.conditioned(a + x);
  const auto cx = parallel_sum(a, x, tr.tol);
  tr.note(cx.report);
  tr.check(in_DA(cx.sum, a, tr.tol), "A ∥ X lies in D_A");
  tr.close(parallel_subtract(cx.sum, a, tr.tol), x, opnorm(x), 1e-8, "(A ∥ X) ÷ A = X");
  tr.count("round_trips", 2);
}

// A/(S,T) ∥ B = (A ∥ B)/(S,T) whenever both sides are defined
void parallel_shorted_of_sum(Trial& tr) {
  const auto tri = draw_triple(tr);
  const auto res = shorted(tri.a, tri.s, tri.t, tr.tol);
  tr.note(res.report);
  const Eigen::Index m = tri.a.rows(), n = tri.a.cols();
  const Operator b = random_rank(m, n, tr.pick(1, std::min(m, n)), tr.rng);
  tr.conditioned(b);
  const auto r1 = summability(tri.a, b, tr.tol);
  const auto r2 = summability(res.shorted, b, tr.tol);
  tr.note(r1);
  tr.note(r2);
  tr.skip_unless(r1.strongly && r2.strongly);
  tr.conditioned(tri.a + b);
  tr.conditioned(res.shorted + b);
  const Operator ab = parallel_sum(tri.a, b, tr.tol).sum;
  const auto r3 = complementability(ab, tri.s, tri.t, tr.tol);
  tr.note(r3);
  tr.skip_unless(r3.strongly);
  tr.conditioned(block_decompose(ab, tri.s, tri.t, tr.tol).a22);
  const Operator lhs = parallel_sum(res.shorted, b, tr.tol).sum;
  const Operator rhs = shorted(ab, tri.s, tri.t, tr.tol).shorted;
  tr.close(lhs, rhs, std::max(opnorm(tri.a), opnorm(b)), 1e-8, "A/(S,T) ∥ B = (A ∥ B)/(S,T)");
  tr.count("accepted");
}

void parallel_limit_convergence(Trial& tr) {
  const auto tri = draw_triple(tr, false, true);
  tr.skip_unless(tri.s.dim() > 0);
  const Operator g = random_matrix(tri.t.dim(), tri.s.dim(), tr.rng);
  tr.skip_unless(condition_number(g, tr.tol) <= 10.0);
  const Operator b = gen_with_ranges(tri.t, tri.s, g);
  const auto rec = shorted_via_limit(tri.a, tri.s, tri.t, b, geometric_schedule(16), tr.tol);
  tr.check(!rec.schedule.empty(), "some schedule point is summable");
  if (rec.schedule.empty()) return;
  const double na = std::max(opnorm(tri.a), 1.0);
  // eventually decreasing: monotone over the fitted tail, up to rounding
  const std::size_t tail = std::min<std::size_t>(8, rec.errors.size());
  for (std::size_t i = rec.errors.size() - tail + 1; i < rec.errors.size(); ++i)
    tr.check(rec.errors[i] <= rec.errors[i - 1] + 1e-12 * na, "errors decrease along the schedule tail");
  // errors that have reached the rounding floor carry no rate information
  tr.skip_unless(rec.fitted_slope.has_value() && rec.errors.back() > 1e-10 * na);
  tr.small(*rec.fitted_slope, -0.9, "log-log slope");
  tr.count("fits");
}

void parallel_sequence_solution(Trial& tr) {
  const auto [a, b] = draw_summable_pair(tr);
  tr.conditioned(a + b);
  const auto ps = parallel_sum(a, b, tr.tol);
  tr.note(ps.report);
  // (A ∥ B) x is reached by A u = B v with u + v = x; equivalently y with
  // A y = (A ∥ B) x and B (x - y) = (A ∥ B) x
  const Eigen::Index m = a.rows(), n = a.cols();
  Operator stacked(2 * m, n);
  stacked << a, b;
  const CVector x = random_matrix(n, 1, tr.rng);
  const CVector target = ps.sum * x;
  CVector rhs(2 * m);
  rhs << target, b * x - target;
  const CVector y = stacked.completeOrthogonalDecomposition().solve(rhs);
  const double scale = std::max(opnorm(a), opnorm(b)) * std::max(x.norm(), 1.0);
  tr.small((stacked * y - rhs).norm(), 1e-8 * scale, "A y = (A ∥ B) x = B (x - y) is solvable");
}

void parallel_recover_shorted(Trial& tr) {
  const auto tri = draw_triple(tr, false, true);
  const auto res = shorted(tri.a, tri.s, tri.t, tr.tol);
  tr.note(res.report);
  const Operator g = random_matrix(tri.t.dim(), tri.s.dim(), tr.rng);
  tr.skip_unless(tri.s.dim() == 0 || condition_number(g, tr.tol) <= 1e2);
  tr.skip_unless(tri.s.dim() > 0);
  const Operator l = gen_with_ranges(tri.t, tri.s, g);
  const auto rec = recover_shorted(tri.a, tri.s, tri.t, l, 1.0, tr.tol);
  tr.close(rec.value, res.shorted, opnorm(tri.a), 1e-7, "(A ∥ nL) ÷ nL = A/(S,T)");
  tr.check(rec.doublings <= 10, "at most 10 doublings");
  tr.count("doublings", rec.doublings);
  tr.count("recoveries");
}

// ---------------------------------------------------------------- genlab

void genlab_soundness(Trial& tr) {
  const auto tri = draw_triple(tr);
  const auto rep = complementability(tri.a, tri.s, tri.t, tr.tol);
  tr.note(rep);
  tr.check(rep.strongly, "generated triple is complementable");

  const int n = tr.dim();
  const int k = tr.pick(0, n);
  const Subspace s = gen_subspace(n, k, tr.rng);
  const Subspace t = gen_subspace(n, k, tr.rng);
  const Operator g = random_matrix(k, k, tr.rng);
  tr.conditioned(g);
  bool matched = true;
  try {
    require_matching_ranges(gen_with_ranges(t, s, g), s, t, tr.tol);
  } catch (const BadAuxiliary&) {
    matched = false;
  }
  tr.check(matched, "generated operator has the prescribed ranges");

  const Operator a = random_rank(n, n, tr.pick(1, n), tr.rng);
  tr.conditioned(a);
  const Operator c = gen_DA_member(a, tr.rng, tr.tol);
  tr.check(in_DA(c, a, tr.tol), "generated C lies in D_A");
}

const std::vector<std::pair<std::string, TrialFn>>& registry() {
  static const std::vector<std::pair<std::string, TrialFn>> table = {
      {"numcore.penrose", numcore_penrose},
      {"numcore.polar", numcore_polar},
      {"numcore.sqrt_psd", numcore_sqrt_psd},
      {"numcore.fundamental_subspaces", numcore_fundamental},
      {"geometry.friedrichs_complement", geometry_friedrichs_complement},
      {"geometry.dixmier_meet", geometry_dixmier_meet},
      {"geometry.projections", geometry_projections},
      {"geometry.de_morgan", geometry_de_morgan},
      {"douglas.equivalence", douglas_equivalence},
      {"douglas.minimal_norm", douglas_minimal_norm},
      {"douglas.nullspace", douglas_nullspace},
      {"shorting.collapse", shorting_collapse},
      {"shorting.direct_properties", shorting_direct_properties},
      {"shorting.range_nullspace", shorting_range_nullspace},
      {"shorting.qa_ap", shorting_qa_ap},
      {"shorting.witnesses", shorting_witnesses},
      {"shorting.iterated", shorting_iterated},
      {"shorting.idempotent_case", shorting_idempotent_case},
      {"shorting.positive_case", shorting_positive_case},
      {"shorting.solve_direction", shorting_solve_direction},
      {"minus.order_axioms", minus_order_axioms},
      {"minus.range_inclusion", minus_range_inclusion},
      {"minus.projection_inheritance", minus_projection_inheritance},
      {"minus.mitra_maximality", minus_mitra_maximality},
      {"parallel.route_agreement", parallel_route_agreement},
      {"parallel.commutativity", parallel_commutativity},
      {"parallel.range_intersection", parallel_range_intersection},
      {"parallel.collapse", parallel_collapse},
      {"parallel.round_trip", parallel_round_trip},
      {"parallel.shorted_of_sum", parallel_shorted_of_sum},
      {"parallel.limit_convergence", parallel_limit_convergence},
      {"parallel.sequence_solution", parallel_sequence_solution},
      {"parallel.recover_shorted", parallel_recover_shorted},
      {"genlab.soundness", genlab_soundness},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& invariant_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

TrialResult run_trial_seeded(std::string_view invariant, const GenConfig& config, std::uint64_t seed) {
  const auto& table = registry();
  const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == invariant; });
  if (it == table.end()) throw BadDims("unknown invariant: " + std::string(invariant));
  Trial tr(config, seed);
  try {
    it->second(tr);
  } catch (const SkipTrial&) {
    if (tr.res.outcome != Outcome::Fail) tr.res.outcome = Outcome::Skip;
  } catch (const RangeNotIncluded& e) {
    if (e.borderline) {
      if (tr.res.outcome != Outcome::Fail) tr.res.outcome = Outcome::Skip;
    } else {
      tr.check(false, std::string("unexpected: ") + e.what());
    }
  } catch (const Error& e) {
    tr.check(false, std::string("unexpected: ") + e.what());
  }
  return tr.res;
}

}  // namespace bishort
