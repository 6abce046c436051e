#include "bishort/genlab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace bishort {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double Rng::uniform() {
  // 53 random bits -> (0, 1]
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

int Rng::integer(int lo, int hi) {
  if (hi <= lo) return lo;
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  // rejection keeps the draw unbiased
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<int>(x % span);
}

Operator random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Operator out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = rng.complex_normal();
  return out;
}

Operator random_rank(Eigen::Index rows, Eigen::Index cols, Eigen::Index r, Rng& rng) {
  if (r < 0 || r > std::min(rows, cols)) throw BadDims("rank exceeds the matrix dimensions");
  if (r == std::min(rows, cols)) return random_matrix(rows, cols, rng);
  const Operator left = random_matrix(rows, r, rng);
  const Operator right = random_matrix(r, cols, rng);
  return left * right;
}

Subspace gen_subspace(Eigen::Index ambient, Eigen::Index dim, Rng& rng) {
  if (ambient < 0 || dim < 0 || dim > ambient) throw BadDims("need 0 <= dim <= ambient");
  if (dim == 0) return Subspace::trivial(ambient);
  const Operator g = random_matrix(ambient, dim, rng);
  Eigen::HouseholderQR<Operator> qr(g);
  const Operator q = qr.householderQ() * Operator::Identity(ambient, dim);
  return Subspace::span(q);
}

ComplementableTriple gen_complementable(Eigen::Index m, Eigen::Index n, Eigen::Index s_dim, Eigen::Index t_dim,
                                        Eigen::Index rank22, Rng& rng) {
  if (m < 1 || n < 1 || s_dim < 0 || s_dim > n || t_dim < 0 || t_dim > m)
    throw BadDims("subspace dimensions out of range");
  if (rank22 < 0 || rank22 > std::min(n - s_dim, m - t_dim)) throw BadDims("rank22 exceeds the corner size");
  ComplementableTriple out{Operator(), gen_subspace(n, s_dim, rng), gen_subspace(m, t_dim, rng)};
  const Operator a22 = random_rank(m - t_dim, n - s_dim, rank22, rng);
  const Operator a21 = a22 * random_matrix(n - s_dim, s_dim, rng);
  const Operator a12 = random_matrix(t_dim, m - t_dim, rng) * a22;
  const Operator a11 = random_matrix(t_dim, s_dim, rng);
  Operator blocks(m, n);
  blocks << a11, a12, a21, a22;
  Operator row_frame(m, m), col_frame(n, n);
  row_frame << out.t.basis(), out.t.complement_basis();
  col_frame << out.s.basis(), out.s.complement_basis();
  out.a = row_frame * blocks * col_frame.adjoint();
  return out;
}

Operator gen_with_ranges(const Subspace& t, const Subspace& s, const Operator& g) {
  if (t.dim() != s.dim()) throw BadDims("dim(S) must equal dim(T)");
  if (g.rows() != t.dim() || g.cols() != s.dim()) throw BadDims("G must be dim(T) x dim(S)");
  return t.basis() * g * s.basis().adjoint();
}

Operator gen_with_ranges(const Subspace& t, const Subspace& s, Rng& rng) {
  if (t.dim() != s.dim()) throw BadDims("dim(S) must equal dim(T)");
  return gen_with_ranges(t, s, random_matrix(t.dim(), s.dim(), rng));
}

Operator gen_DA_member(const Operator& a, const Eigen::VectorXd& sigma, const Tolerance& tol) {
  require_finite(a);
  if (a.size() == 0) throw ZeroOperator("A must be nonzero");
  Eigen::JacobiSVD<Operator> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::Index r = detail::count_above_threshold(svd.singularValues(), a.rows(), a.cols(), tol);
  if (r == 0) throw ZeroOperator("A must be nonzero");
  if (sigma.size() != r) throw BadDims("need one value per nonzero singular value of A");
  if ((sigma.array() <= 0.0).any()) throw BadDims("singular values must be positive");
  const CVector sc = sigma.cast<Complex>();
  return a + svd.matrixU().leftCols(r) * sc.asDiagonal() * svd.matrixV().leftCols(r).adjoint();
}

Operator gen_DA_member(const Operator& a, Rng& rng, const Tolerance& tol) {
  require_finite(a);
  if (a.size() == 0) throw ZeroOperator("A must be nonzero");
  Eigen::JacobiSVD<Operator> svd(a);
  const auto& sv = svd.singularValues();
  const Eigen::Index r = detail::count_above_threshold(sv, a.rows(), a.cols(), tol);
  if (r == 0) throw ZeroOperator("A must be nonzero");
  Eigen::VectorXd sigma(r);
  for (Eigen::Index i = 0; i < r; ++i) sigma(i) = sv(i) * std::exp(std::log(4.0) * (2.0 * rng.uniform() - 1.0));
  return gen_DA_member(a, sigma, tol);
}

void GenConfig::validate() const {
  if (dim_min < 1 || dim_max < dim_min) throw BadDims("dimension range must satisfy 1 <= min <= max");
  if (trials < 1) throw BadDims("trials must be positive");
  if (!(condition_cap >= 1.0)) throw BadDims("condition cap must be at least 1");
  tol.validate();
}

void InvariantReport::add(std::uint64_t trial, const TrialResult& r) {
  switch (r.outcome) {
    case Outcome::Pass:
      ++pass;
      break;
    case Outcome::Skip:
      ++skip;
      break;
    case Outcome::Fail:
      ++fail;
      failures.push_back({trial, r.seed, r.detail});
      break;
  }
  collapse_checks += r.collapse_checks;
  collapse_discrepancies += r.collapse_discrepancies;
  for (const auto& [k, v] : r.counters) counters[k] += v;
}

long SuiteReport::total_failures() const {
  long n = 0;
  for (const auto& inv : invariants) n += inv.fail;
  return n;
}

std::uint64_t trial_seed(const GenConfig& config, std::string_view invariant, std::uint64_t trial) {
  // FNV-1a of the name keeps sub-seeds stable when invariants are reordered
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : invariant) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(config.seed ^ h) + trial);
}

TrialResult run_trial(std::string_view invariant, const GenConfig& config, std::uint64_t trial) {
  return run_trial_seeded(invariant, config, trial_seed(config, invariant, trial));
}

InvariantReport run_invariant(std::string_view invariant, const GenConfig& config, std::uint64_t first) {
  InvariantReport rep;
  rep.name = std::string(invariant);
  for (std::uint64_t i = first; i < first + static_cast<std::uint64_t>(config.trials); ++i)
    rep.add(i, run_trial(invariant, config, i));
  return rep;
}

SuiteReport run_suite(const GenConfig& config, unsigned threads) {
  config.validate();
  const auto& names = invariant_names();
  SuiteReport rep;
  rep.config = config;
  rep.invariants.resize(names.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(names.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < names.size(); i = next++) rep.invariants[i] = run_invariant(names[i], config);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  for (const auto& inv : rep.invariants) {
    rep.collapse_checks += inv.collapse_checks;
    rep.collapse_discrepancies += inv.collapse_discrepancies;
  }
  return rep;
}

}  // namespace bishort
