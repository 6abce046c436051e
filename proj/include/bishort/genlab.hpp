#pragma once

// Random instances with prescribed structure and the property-suite runner.
//
// Randomness comes from std::mt19937_64, whose output sequence is fixed by the
// C++ standard; Gaussians are drawn with Box-Muller on top of it (the standard
// distributions are implementation-defined and would not reproduce across
// standard libraries). Each trial seeds its own engine from
// splitmix64(seed, invariant, trial), so trials can run in any order.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bishort/parallel.hpp"

namespace bishort {

inline constexpr std::string_view kRngName = "mt19937_64/splitmix64-seeded/box-muller";

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in (0, 1].
  double uniform();
  double normal();
  /// Standard complex Gaussian, E|z|^2 = 1.
  Complex complex_normal();
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi);
  bool coin() { return integer(0, 1) == 1; }

 private:
  std::mt19937_64 engine_;
};

Operator random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);
/// rows x cols with rank r (almost surely), as a product of Gaussian factors.
Operator random_rank(Eigen::Index rows, Eigen::Index cols, Eigen::Index r, Rng& rng);

Subspace gen_subspace(Eigen::Index ambient, Eigen::Index dim, Rng& rng);

struct ComplementableTriple {
  Operator a;
  Subspace s;  ///< in C^n (domain)
  Subspace t;  ///< in C^m (codomain)
};

/// m x n operator complementable with respect to random S (dim s_dim) and
/// T (dim t_dim), with rank(A22) = rank22: A21 = A22 X, A12 = Y A22.
ComplementableTriple gen_complementable(Eigen::Index m, Eigen::Index n, Eigen::Index s_dim, Eigen::Index t_dim,
                                        Eigen::Index rank22, Rng& rng);

/// B = T_basis G S_basis^* with G random, so R(B) = T and R(B^*) = S.
Operator gen_with_ranges(const Subspace& t, const Subspace& s, Rng& rng);
Operator gen_with_ranges(const Subspace& t, const Subspace& s, const Operator& g);

/// C = A + U_r diag(sigma') V_r^* with U_r, V_r the singular vectors of A.
Operator gen_DA_member(const Operator& a, Rng& rng, const Tolerance& tol = {});
Operator gen_DA_member(const Operator& a, const Eigen::VectorXd& sigma, const Tolerance& tol = {});

struct GenConfig {
  std::uint64_t seed = 0;
  int dim_min = 2;
  int dim_max = 8;
  int trials = 500;
  double condition_cap = 1e6;
  Tolerance tol;

  void validate() const;
};

enum class Outcome { Pass, Fail, Skip };

struct TrialResult {
  Outcome outcome = Outcome::Pass;
  std::string detail;
  std::uint64_t seed = 0;
  /// weak-vs-strong comparisons made during the trial and how many disagreed
  int collapse_checks = 0;
  int collapse_discrepancies = 0;
  /// invariant-specific tallies (e.g. accepted samples)
  std::map<std::string, long> counters;
};

struct FailureRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::string detail;
};

struct InvariantReport {
  std::string name;
  long pass = 0;
  long fail = 0;
  long skip = 0;
  std::vector<FailureRecord> failures;
  std::map<std::string, long> counters;
  long collapse_checks = 0;
  long collapse_discrepancies = 0;

  void add(std::uint64_t trial, const TrialResult& r);
};

struct SuiteReport {
  GenConfig config;
  std::vector<InvariantReport> invariants;
  long collapse_checks = 0;
  long collapse_discrepancies = 0;

  long total_failures() const;
};

/// Names of every invariant the suite knows, in report order.
const std::vector<std::string>& invariant_names();

/// Sub-seed of one trial.
std::uint64_t trial_seed(const GenConfig& config, std::string_view invariant, std::uint64_t trial);

/// Runs one trial from an explicit sub-seed (for reproducing failures).
TrialResult run_trial_seeded(std::string_view invariant, const GenConfig& config, std::uint64_t seed);
TrialResult run_trial(std::string_view invariant, const GenConfig& config, std::uint64_t trial);

/// `config.trials` trials of one invariant, starting at trial index `first`.
InvariantReport run_invariant(std::string_view invariant, const GenConfig& config, std::uint64_t first = 0);

/// Every invariant; trials may run on several threads, results are merged in
/// trial order so the report does not depend on scheduling.
SuiteReport run_suite(const GenConfig& config, unsigned threads = 0);

}  // namespace bishort
