#pragma once

// Parallel sums A ∥ B, parallel subtraction on D_A, and the formulas linking
// them to the shorted operator.

#include <cstdint>
#include <optional>
#include <vector>

#include "bishort/shorting.hpp"

namespace bishort {

struct SummabilityReport {
  bool weakly = false;
  bool strongly = false;
  /// R(B) ⊆ R(A+B) and R(B^*) ⊆ R(A^*+B^*); implied by `strongly`.
  bool b_inclusions = false;
  /// residuals of A, A^*, B, B^* against A+B, (A+B)^*
  double defect_a = 0.0;
  double defect_a_adj = 0.0;
  double defect_b = 0.0;
  double defect_b_adj = 0.0;
};

SummabilityReport summability(const Operator& a, const Operator& b, const Tolerance& tol = {});

class NotSummable : public Error {
 public:
  explicit NotSummable(SummabilityReport report)
      : Error("operators are not parallel summable"), report(report) {}
  SummabilityReport report;
};

class NotInDA : public Error {
 public:
  NotInDA() : Error("C is not in D_A: R(C - A) = R(A) or R((C - A)^*) = R(A^*) fails") {}
};

struct ParallelSumResult {
  Operator sum;            ///< block-device value (the definition)
  Operator route_pinv;     ///< A - A (A+B)^+ A
  Operator route_reduced;  ///< F_A^* E_B
  Operator route_block;    ///< top-left corner of [[A, A], [A, A+B]] / (H1⊕0, H2⊕0)
  double max_route_disagreement = 0.0;
  double commutativity_defect = 0.0;  ///< ||A∥B - B∥A|| via the pseudoinverse formula
  SummabilityReport report;
};

ParallelSumResult parallel_sum(const Operator& a, const Operator& b, const Tolerance& tol = {});

/// R(C - A) = R(A) and R((C - A)^*) = R(A^*).
bool in_DA(const Operator& c, const Operator& a, const Tolerance& tol = {});

/// C ÷ A = C ∥ (-A), the solution X of A ∥ X = C with R(A+X) = R(A) and
/// R((A+X)^*) = R(A^*).
Operator parallel_subtract(const Operator& c, const Operator& a, const Tolerance& tol = {});

/// Geometric schedule 1, 2, 4, ..., 2^max_exponent.
std::vector<double> geometric_schedule(int max_exponent = 16);

struct ConvergenceRecord {
  std::vector<double> schedule;  ///< n values where A and nB were summable
  std::vector<double> errors;    ///< ||A ∥ (nB) - A/(S,T)||
  std::vector<Operator> values;  ///< A ∥ (nB)
  double first_summable_n = 0.0;
  std::vector<double> skipped;   ///< schedule points before summability held
  /// log-log slope over the last `fit_points` positive errors; empty when
  /// fewer than two are positive
  std::optional<double> fitted_slope;
};

/// Least-squares slope of log(err) against log(n) over the last `fit_points`
/// entries with positive error.
std::optional<double> fit_loglog_slope(const std::vector<double>& n, const std::vector<double>& err,
                                       std::size_t fit_points = 8);

ConvergenceRecord shorted_via_limit(const Operator& a, const Subspace& s, const Subspace& t, const Operator& b,
                                    const std::vector<double>& schedule, const Tolerance& tol = {},
                                    std::size_t fit_points = 8);

struct RecoveryResult {
  Operator value;       ///< (A ∥ nL) ÷ (nL)
  double n_used = 0.0;
  int doublings = 0;
};

/// Rebuilds A/(S,T) as (A ∥ nL) ÷ (nL), doubling n until the pair is summable
/// and A ∥ nL lies in D_{nL}; gives up past 2^20 n.
RecoveryResult recover_shorted(const Operator& a, const Subspace& s, const Subspace& t, const Operator& l, double n,
                               const Tolerance& tol = {});

/// Throws BadAuxiliary unless R(B) = T and R(B^*) = S.
void require_matching_ranges(const Operator& b, const Subspace& s, const Subspace& t, const Tolerance& tol = {});

}  // namespace bishort
