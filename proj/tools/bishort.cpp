// bishort: shorted operators, parallel sums and the minus order from the
// command line. Reports are JSON on stdout (or --json-out); messages go to
// stderr.
//
// Exit codes: 0 success, 1 I/O or parse error, 2 precondition failure,
// 3 predicate false, 4 property-suite failures.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bishort/io.hpp"

#ifndef BISHORT_VERSION
#define BISHORT_VERSION "0.0.0"
#endif

namespace {

using namespace bishort;

constexpr int kOk = 0;
constexpr int kIo = 1;
constexpr int kPrecondition = 2;
constexpr int kPredicateFalse = 3;
constexpr int kSuiteFailures = 4;

constexpr const char* kTolEnv = "BISHORT_TOL";

// Usage errors from our own flag parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
    if (used != item.size()) throw UsageError("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// "EQ" or "RANK,EQ,PSD"
Tolerance parse_tolerance(const std::string& text) {
  const auto v = parse_numbers(text);
  Tolerance tol;
  if (v.size() == 1) {
    tol.eq_rel = v[0];
  } else if (v.size() == 3) {
    tol.rank_rel = v[0];
    tol.eq_rel = v[1];
    tol.psd_slack = v[2];
  } else {
    throw UsageError("tolerance must be EQ or RANK,EQ,PSD");
  }
  try {
    tol.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return tol;
}

struct Context {
  std::vector<std::string> argv;
  std::string tol_text;
  std::string json_out = "-";
  Tolerance tol;

  void resolve_tolerance() {
    if (!tol_text.empty()) {
      tol = parse_tolerance(tol_text);
    } else if (const char* env = std::getenv(kTolEnv); env && *env) {
      tol = parse_tolerance(env);
    }
  }

  Json envelope(const std::string& command) const {
    return Json{{"tool", "bishort"},
                {"version", BISHORT_VERSION},
                {"invocation", argv},
                {"command", command},
                {"tolerance", to_json(tol)}};
  }

  void emit(Json report) const { write_json(json_out, report); }
};

int cmd_short(Context& ctx, const std::vector<std::string>& files) {
  const Operator a = read_matrix(files.at(0));
  const Subspace s = read_subspace(files.at(1), ctx.tol);
  const Subspace t = read_subspace(files.at(2), ctx.tol);
  Json report = ctx.envelope("short");
  try {
    report["result"] = to_json(shorted(a, s, t, ctx.tol));
  } catch (const NotComplementable& e) {
    report["error"] = e.what();
    report["complementability"] = to_json(e.report);
    ctx.emit(report);
    std::cerr << "bishort: " << e.what() << "\n";
    return kPrecondition;
  }
  ctx.emit(report);
  return kOk;
}

int cmd_psum(Context& ctx, const std::vector<std::string>& files) {
  const Operator a = read_matrix(files.at(0));
  const Operator b = read_matrix(files.at(1));
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ParseError("A and B must have the same shape");
  Json report = ctx.envelope("psum");
  try {
    report["result"] = to_json(parallel_sum(a, b, ctx.tol));
  } catch (const NotSummable& e) {
    report["error"] = e.what();
    report["summability"] = to_json(e.report);
    ctx.emit(report);
    std::cerr << "bishort: " << e.what() << "\n";
    return kPrecondition;
  }
  ctx.emit(report);
  return kOk;
}

int cmd_psub(Context& ctx, const std::vector<std::string>& files) {
  const Operator c = read_matrix(files.at(0));
  const Operator a = read_matrix(files.at(1));
  if (a.rows() != c.rows() || a.cols() != c.cols()) throw ParseError("C and A must have the same shape");
  Json report = ctx.envelope("psub");
  if (!in_DA(c, a, ctx.tol)) {
    report["error"] = NotInDA().what();
    ctx.emit(report);
    std::cerr << "bishort: " << NotInDA().what() << "\n";
    return kPrecondition;
  }
  const Operator x = parallel_subtract(c, a, ctx.tol);
  const double residual = opnorm(parallel_sum(a, x, ctx.tol).sum - c);
  report["result"] = Json{{"difference", matrix_to_json(x)}, {"round_trip_residual", residual}};
  ctx.emit(report);
  return kOk;
}

int cmd_check(Context& ctx, const std::string& what, const std::vector<std::string>& files) {
  Json report = ctx.envelope("check");
  report["what"] = what;
  bool holds = false;
  if (what == "complementable") {
    if (files.size() != 3) throw UsageError("complementable needs A, S and T files");
    const Operator a = read_matrix(files[0]);
    const Subspace s = read_subspace(files[1], ctx.tol);
    const Subspace t = read_subspace(files[2], ctx.tol);
    const auto r = complementability(a, s, t, ctx.tol);
    holds = r.strongly;
    report["result"] = to_json(r);
  } else if (what == "summable") {
    if (files.size() != 2) throw UsageError("summable needs A and B files");
    const Operator a = read_matrix(files[0]);
    const Operator b = read_matrix(files[1]);
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ParseError("A and B must have the same shape");
    const auto r = summability(a, b, ctx.tol);
    holds = r.strongly;
    report["result"] = to_json(r);
  } else if (what == "minus") {
    if (files.size() != 2) throw UsageError("minus needs C and B files");
    const Operator c = read_matrix(files[0]);
    const Operator b = read_matrix(files[1]);
    if (c.rows() != b.rows() || c.cols() != b.cols()) throw ParseError("C and B must have the same shape");
    const auto v = minus_leq(c, b, ctx.tol);
    holds = v.holds;
    report["result"] = to_json(v);
  } else {
    throw UsageError("--what must be complementable, summable or minus");
  }
  report["holds"] = holds;
  ctx.emit(report);
  return holds ? kOk : kPredicateFalse;
}

std::vector<double> parse_schedule(const std::string& text) {
  if (text.rfind("geometric:", 0) == 0) {
    const auto v = parse_numbers(text.substr(10));
    if (v.size() != 1 || v[0] < 0 || v[0] > 60 || v[0] != std::floor(v[0]))
      throw UsageError("geometric:K needs an integer K in [0, 60]");
    return geometric_schedule(int(v[0]));
  }
  auto v = parse_numbers(text);
  for (double x : v)
    if (!(x > 0.0) || !std::isfinite(x)) throw UsageError("schedule entries must be positive");
  if (v.empty()) throw UsageError("empty schedule");
  return v;
}

int cmd_converge(Context& ctx, const std::vector<std::string>& files, const std::string& schedule_text,
                 std::uint64_t seed) {
  if (files.size() != 3 && files.size() != 4) throw UsageError("converge needs A, S, T and optionally B files");
  const Operator a = read_matrix(files[0]);
  const Subspace s = read_subspace(files[1], ctx.tol);
  const Subspace t = read_subspace(files[2], ctx.tol);
  const auto schedule = parse_schedule(schedule_text);
  Json report = ctx.envelope("converge");
  Operator b;
  if (files.size() == 4) {
    b = read_matrix(files[3]);
  } else {
    if (s.ambient_dim() != a.cols() || t.ambient_dim() != a.rows()) throw ParseError("S, T do not fit A");
    Rng rng(seed);
    try {
      b = gen_with_ranges(t, s, rng);
    } catch (const BadDims&) {
      throw BadAuxiliary("default B needs dim(S) = dim(T)");
    }
    report["seed"] = seed;
  }
  report["b"] = matrix_to_json(b);
  try {
    report["result"] = to_json(shorted_via_limit(a, s, t, b, schedule, ctx.tol));
  } catch (const NotComplementable& e) {
    report["error"] = e.what();
    report["complementability"] = to_json(e.report);
    ctx.emit(report);
    std::cerr << "bishort: " << e.what() << "\n";
    return kPrecondition;
  }
  ctx.emit(report);
  return kOk;
}

int cmd_verify(Context& ctx, std::uint64_t seed, int trials, const std::string& dims, double cap, unsigned threads) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.condition_cap = cap;
  cfg.tol = ctx.tol;
  const auto colon = dims.find(':');
  if (colon == std::string::npos) throw UsageError("--dims must be MIN:MAX");
  try {
    cfg.dim_min = std::stoi(dims.substr(0, colon));
    cfg.dim_max = std::stoi(dims.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("--dims must be MIN:MAX");
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const SuiteReport suite = run_suite(cfg, threads);
  Json report = ctx.envelope("verify");
  report["result"] = to_json(suite);
  ctx.emit(report);
  for (const auto& inv : suite.invariants)
    for (const auto& f : inv.failures)
      std::cerr << "FAIL " << inv.name << " trial " << f.trial << " seed " << f.seed << ": " << f.detail << "\n";
  return suite.total_failures() == 0 ? kOk : kSuiteFailures;
}

int cmd_demo(Context& ctx, const std::vector<double>& resistors, const std::vector<std::string>& ports) {
  std::vector<Operator> parts;
  for (double r : resistors) parts.push_back(Operator::Constant(1, 1, Complex(r, 0.0)));
  for (const auto& f : ports) parts.push_back(read_matrix(f));
  if (parts.size() < 2) throw UsageError("need at least two resistors or port matrices");
  Operator joint = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].rows() != joint.rows() || parts[i].cols() != joint.cols())
      throw ParseError("impedance matrices must have the same shape");
    joint = parallel_sum(joint, parts[i], ctx.tol).sum;
  }
  Json report = ctx.envelope("demo-impedance");
  Json inputs = Json::array();
  for (const auto& p : parts) inputs.push_back(matrix_to_json(p));
  report["inputs"] = std::move(inputs);
  report["joint_impedance"] = matrix_to_json(joint);
  ctx.emit(report);
  if (joint.size() == 1)
    std::cerr << "joint resistance: " << joint(0, 0).real() << "\n";
  else
    std::cerr << "joint impedance:\n" << joint.real() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  ctx.argv.assign(argv, argv + argc);

  CLI::App app{"Bilateral shorted operators, parallel sums and the minus order."};
  app.footer(std::string("Every command accepts --tol EQ or --tol RANK,EQ,PSD. The environment variable ") + kTolEnv +
             " (same format) replaces the default tolerance when --tol is absent.\n"
             "Exit codes: 0 success, 1 I/O or parse error, 2 precondition failure, 3 predicate false, "
             "4 suite failures.");
  app.set_version_flag("--version", BISHORT_VERSION);
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", ctx.tol_text, "tolerance override: EQ or RANK,EQ,PSD");
    sub->add_option("--json-out", ctx.json_out, "report path ('-' for stdout)");
  };

  std::vector<std::string> files;
  auto* short_cmd = app.add_subcommand("short", "shorted operator A/(S,T)");
  short_cmd->add_option("files", files, "A S T")->required()->expected(3);
  common(short_cmd);

  auto* psum_cmd = app.add_subcommand("psum", "parallel sum A ∥ B");
  psum_cmd->add_option("files", files, "A B")->required()->expected(2);
  common(psum_cmd);

  auto* psub_cmd = app.add_subcommand("psub", "parallel subtraction C ÷ A");
  psub_cmd->add_option("files", files, "C A")->required()->expected(2);
  common(psub_cmd);

  std::string what;
  auto* check_cmd = app.add_subcommand("check", "evaluate a predicate (exit 3 when false)");
  check_cmd->add_option("--what", what, "complementable (A S T) | summable (A B) | minus (C B)")->required();
  check_cmd->add_option("files", files, "input files")->required()->expected(2, 3);
  common(check_cmd);

  std::string schedule = "geometric:16";
  std::uint64_t seed = 0;
  auto* conv_cmd = app.add_subcommand("converge", "A ∥ (nB) along a schedule, against A/(S,T)");
  conv_cmd->add_option("files", files, "A S T [B]")->required()->expected(3, 4);
  conv_cmd->add_option("--schedule", schedule, "n1,n2,... or geometric:K for 1,2,...,2^K")->capture_default_str();
  conv_cmd->add_option("--seed", seed, "seed for the default B")->capture_default_str();
  common(conv_cmd);

  int trials = 500;
  std::string dims = "2:8";
  double cap = 1e6;
  unsigned threads = 0;
  auto* verify_cmd = app.add_subcommand("verify", "run the randomized property suite");
  verify_cmd->add_option("--seed", seed, "suite seed")->capture_default_str();
  verify_cmd->add_option("--trials", trials, "trials per invariant")->capture_default_str();
  verify_cmd->add_option("--dims", dims, "dimension range MIN:MAX")->capture_default_str();
  verify_cmd->add_option("--condition-cap", cap, "skip draws with a larger condition number")->capture_default_str();
  verify_cmd->add_option("--threads", threads, "worker threads (0 = hardware)")->capture_default_str();
  common(verify_cmd);

  std::vector<double> resistors;
  std::vector<std::string> ports;
  auto* demo_cmd = app.add_subcommand("demo-impedance", "joint impedance of a parallel connection");
  auto* res_opt = demo_cmd->add_option("--resistors", resistors, "scalar resistances");
  auto* port_opt = demo_cmd->add_option("--ports", ports, "impedance matrix files");
  res_opt->excludes(port_opt);
  common(demo_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIo;
  }

  try {
    ctx.resolve_tolerance();
    if (*short_cmd) return cmd_short(ctx, files);
    if (*psum_cmd) return cmd_psum(ctx, files);
    if (*psub_cmd) return cmd_psub(ctx, files);
    if (*check_cmd) return cmd_check(ctx, what, files);
    if (*conv_cmd) return cmd_converge(ctx, files, schedule, seed);
    if (*verify_cmd) return cmd_verify(ctx, seed, trials, dims, cap, threads);
    if (*demo_cmd) return cmd_demo(ctx, resistors, ports);
  } catch (const UsageError& e) {
    std::cerr << "bishort: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "bishort: " << e.what() << "\n";
    return kIo;
  } catch (const DimensionMismatch& e) {
    std::cerr << "bishort: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    std::cerr << "bishort: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "bishort: " << e.what() << "\n";
    return kIo;
  }
  return kIo;
}
