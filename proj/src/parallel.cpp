#include "bishort/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace bishort {

namespace {

void require_same_shape(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("operators must have the same shape");
  require_finite(a);
  require_finite(b);
}

// |(A+B)^*|^{1/2} U and |A+B|^{1/2}, U the polar partial isometry of A+B.
std::pair<Operator, Operator> root_factors(const Operator& sum, const Tolerance& tol, double scale) {
  const auto pd = polar(sum, tol, scale);
  const Operator abs_adj = pd.u * pd.abs_a * pd.u.adjoint();
  return {sqrt_psd(abs_adj, tol, scale) * pd.u, sqrt_psd(pd.abs_a, tol, scale)};
}

// A + B can cancel to (nearly) zero; rank decisions about it are made against
// the size of the summands.
double pair_scale(const Operator& a, const Operator& b) { return std::max(opnorm(a), opnorm(b)); }

Operator block_device(const Operator& a, const Operator& b) {
  const Eigen::Index m = a.rows(), n = a.cols();
  Operator big(2 * m, 2 * n);
  big << a, a, a, a + b;
  return big;
}

Subspace leading_coordinates(Eigen::Index ambient, Eigen::Index k) {
  Operator basis = Operator::Zero(ambient, k);
  basis.topRows(k).setIdentity();
  return Subspace::span(basis);
}

}  // namespace

SummabilityReport summability(const Operator& a, const Operator& b, const Tolerance& tol) {
  require_same_shape(a, b);
  SummabilityReport r;
  const Operator sum = a + b;
  const Operator sum_adj = sum.adjoint();
  const Operator a_adj = a.adjoint();
  const Operator b_adj = b.adjoint();
  const double sc = pair_scale(a, b);
  r.defect_a = range_residual(a, sum, tol, sc);
  r.defect_a_adj = range_residual(a_adj, sum_adj, tol, sc);
  r.defect_b = range_residual(b, sum, tol, sc);
  r.defect_b_adj = range_residual(b_adj, sum_adj, tol, sc);
  r.strongly = r.defect_a <= tol.eq_rel && r.defect_a_adj <= tol.eq_rel;
  r.b_inclusions = r.defect_b <= tol.eq_rel && r.defect_b_adj <= tol.eq_rel;

  const auto [left, right] = root_factors(sum, tol, sc);
  const double root_sc = std::sqrt(sc);
  r.weakly = range_leq(a, left, tol, root_sc) && range_leq(b, left, tol, root_sc) &&
             range_leq(a_adj, right, tol, root_sc) && range_leq(b_adj, right, tol, root_sc);
  return r;
}

ParallelSumResult parallel_sum(const Operator& a, const Operator& b, const Tolerance& tol) {
  ParallelSumResult out;
  out.report = summability(a, b, tol);
  if (!out.report.weakly) throw NotSummable(out.report);

  const Operator sum = a + b;
  const double sc = pair_scale(a, b);
  const Operator sum_pinv = pinv(sum, tol, sc);
  out.route_pinv = a - a * sum_pinv * a;
  out.commutativity_defect = opnorm(out.route_pinv - (b - b * sum_pinv * b));

  const auto [left, right] = root_factors(sum, tol, sc);
  const double root_sc = std::sqrt(sc);
  const Operator e_a = reduced_solution(left, a, tol, root_sc).d;
  const Operator e_b = reduced_solution(left, b, tol, root_sc).d;
  const Operator f_a = reduced_solution(right, Operator(a.adjoint()), tol, root_sc).d;
  const Operator f_b = reduced_solution(right, Operator(b.adjoint()), tol, root_sc).d;
  out.route_reduced = f_a.adjoint() * e_b;
  const Operator route_reduced_swapped = f_b.adjoint() * e_a;

  const Eigen::Index m = a.rows(), n = a.cols();
  const auto sh = shorted(block_device(a, b), leading_coordinates(2 * n, n), leading_coordinates(2 * m, m), tol);
  out.route_block = sh.shorted.topLeftCorner(m, n);
  out.sum = out.route_block;

  out.max_route_disagreement = std::max({opnorm(out.route_pinv - out.route_reduced),
                                         opnorm(out.route_pinv - out.route_block),
                                         opnorm(out.route_reduced - out.route_block),
                                         opnorm(out.route_reduced - route_reduced_swapped)});
  return out;
}

bool in_DA(const Operator& c, const Operator& a, const Tolerance& tol) {
  require_same_shape(c, a);
  const Operator d = c - a;
  const Operator d_adj = d.adjoint();
  const Operator a_adj = a.adjoint();
  const double sc = pair_scale(c, a);
  return range_leq(d, a, tol, sc) && range_leq(a, d, tol, sc) && range_leq(d_adj, a_adj, tol, sc) &&
         range_leq(a_adj, d_adj, tol, sc);
}

Operator parallel_subtract(const Operator& c, const Operator& a, const Tolerance& tol) {
  if (!in_DA(c, a, tol)) throw NotInDA();
  return parallel_sum(c, -a, tol).sum;
}

std::vector<double> geometric_schedule(int max_exponent) {
  std::vector<double> out;
  for (int k = 0; k <= max_exponent; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

std::optional<double> fit_loglog_slope(const std::vector<double>& n, const std::vector<double>& err,
                                       std::size_t fit_points) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < std::min(n.size(), err.size()); ++i)
    if (err[i] > 0.0 && std::isfinite(err[i]) && n[i] > 0.0) pts.emplace_back(std::log(n[i]), std::log(err[i]));
  if (pts.size() > fit_points) pts.erase(pts.begin(), pts.end() - static_cast<std::ptrdiff_t>(fit_points));
  if (pts.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= double(pts.size());
  my /= double(pts.size());
  double sxy = 0, sxx = 0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

void require_matching_ranges(const Operator& b, const Subspace& s, const Subspace& t, const Tolerance& tol) {
  if (b.rows() != t.ambient_dim() || b.cols() != s.ambient_dim())
    throw BadAuxiliary("auxiliary operator has the wrong shape");
  require_finite(b);
  const Operator b_adj = b.adjoint();
  const bool ok = rank(b, tol) == t.dim() && t.dim() == s.dim() && range_leq(b, t.basis(), tol) &&
                  range_leq(t.basis(), b, tol) && range_leq(b_adj, s.basis(), tol) &&
                  range_leq(s.basis(), b_adj, tol);
  if (!ok) throw BadAuxiliary("auxiliary operator must satisfy R(B) = T and R(B^*) = S");
}

ConvergenceRecord shorted_via_limit(const Operator& a, const Subspace& s, const Subspace& t, const Operator& b,
                                    const std::vector<double>& schedule, const Tolerance& tol,
                                    std::size_t fit_points) {
  const Operator target = shorted(a, s, t, tol).shorted;
  require_matching_ranges(b, s, t, tol);
  ConvergenceRecord rec;
  bool found = false;
  for (double n : schedule) {
    const Operator nb = n * b;
    if (!summability(a, nb, tol).strongly) {
      rec.skipped.push_back(n);
      continue;
    }
    if (!found) {
      rec.first_summable_n = n;
      found = true;
    }
    Operator value = parallel_sum(a, nb, tol).sum;
    rec.schedule.push_back(n);
    rec.errors.push_back(opnorm(value - target));
    rec.values.push_back(std::move(value));
  }
  rec.fitted_slope = fit_loglog_slope(rec.schedule, rec.errors, fit_points);
  return rec;
}

RecoveryResult recover_shorted(const Operator& a, const Subspace& s, const Subspace& t, const Operator& l, double n,
                               const Tolerance& tol) {
  if (!(n > 0.0)) throw BadAuxiliary("n must be positive");
  (void)shorted(a, s, t, tol);
  require_matching_ranges(l, s, t, tol);
  double k = n;
  for (int doublings = 0; doublings <= 20; ++doublings, k *= 2.0) {
    const Operator kl = k * l;
    if (!summability(a, kl, tol).strongly) continue;
    const Operator x = parallel_sum(a, kl, tol).sum;
    if (!in_DA(x, kl, tol)) continue;
    return {parallel_subtract(x, kl, tol), k, doublings};
  }
  throw EscalationExhausted("no n up to 2^20 times the initial value made the recovery well defined");
}

}  // namespace bishort
