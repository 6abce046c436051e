#include "bishort/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace bishort {

namespace {

Complex entry_from_json(const Json& e, bool allow_real, bool allow_pair) {
  if (e.is_number() && allow_real) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number() && allow_pair)
    return {e[0].get<double>(), e[1].get<double>()};
  throw ParseError("bad matrix entry: " + e.dump());
}

// rows x cols payload; cols may be -1 to infer from the first row
Operator payload_from_json(const Json& data, Eigen::Index rows, Eigen::Index cols, bool allow_real,
                           bool allow_pair) {
  if (!data.is_array()) throw ParseError("data must be an array of rows");
  if (rows >= 0 && Eigen::Index(data.size()) != rows && !(data.empty() && cols == 0))
    throw ParseError("data has " + std::to_string(data.size()) + " rows, expected " + std::to_string(rows));
  if (rows < 0) rows = Eigen::Index(data.size());
  if (cols < 0) cols = data.empty() ? 0 : Eigen::Index(data[0].is_array() ? data[0].size() : 0);
  Operator out(rows, cols);
  for (Eigen::Index i = 0; i < Eigen::Index(data.size()); ++i) {
    const Json& row = data[std::size_t(i)];
    if (!row.is_array() || Eigen::Index(row.size()) != cols)
      throw ParseError("row " + std::to_string(i) + " does not have " + std::to_string(cols) + " entries");
    for (Eigen::Index k = 0; k < cols; ++k) out(i, k) = entry_from_json(row[std::size_t(k)], allow_real, allow_pair);
  }
  if (!all_finite(out)) throw ParseError("matrix entries must be finite");
  return out;
}

Eigen::Index dimension_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
    throw ParseError(std::string("missing or invalid field '") + key + "'");
  return Eigen::Index(j[key].get<long long>());
}

Json series(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json counters_json(const std::map<std::string, long>& c) {
  Json out = Json::object();
  for (const auto& [k, v] : c) out[k] = v;
  return out;
}

}  // namespace

Operator matrix_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("matrix file must hold a JSON object");
  const Eigen::Index rows = dimension_field(j, "rows");
  const Eigen::Index cols = dimension_field(j, "cols");
  bool complex = false;
  if (j.contains("complex")) {
    if (!j["complex"].is_boolean()) throw ParseError("'complex' must be a boolean");
    complex = j["complex"].get<bool>();
  }
  if (!j.contains("data")) throw ParseError("missing field 'data'");
  return payload_from_json(j["data"], rows, cols, !complex, complex);
}

Json matrix_to_json(const Operator& a) {
  const bool complex = (a.array().imag() != 0.0).any();
  Json data = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (complex)
        row.push_back(Json::array({a(i, k).real(), a(i, k).imag()}));
      else
        row.push_back(a(i, k).real());
    }
    data.push_back(std::move(row));
  }
  return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"complex", complex}, {"data", std::move(data)}};
}

Subspace subspace_from_json(const Json& j, const Tolerance& tol) {
  if (!j.is_object()) throw ParseError("subspace file must hold a JSON object");
  const Eigen::Index ambient = dimension_field(j, "ambient");
  if (!j.contains("kind") || !j["kind"].is_string()) throw ParseError("missing field 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (!j.contains("data")) throw ParseError("missing field 'data'");
  const Json& data = j["data"];
  if (kind == "basis") {
    if (data.is_array() && data.empty()) return Subspace::trivial(ambient);
    const Operator basis = payload_from_json(data, ambient, -1, true, true);
    return Subspace::span(basis, tol);
  }
  if (kind == "projection") {
    const Operator p = payload_from_json(data, ambient, ambient, true, true);
    try {
      return Subspace::from_projection(p, tol);
    } catch (const InvalidOperator&) {
      throw ParseError("projection payload is not an orthogonal projection");
    }
  }
  throw ParseError("kind must be \"basis\" or \"projection\"");
}

Json subspace_to_json(const Subspace& s) {
  const Json m = matrix_to_json(s.basis());
  return Json{{"ambient", s.ambient_dim()}, {"kind", "basis"}, {"dim", s.dim()}, {"data", m["data"]}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Operator read_matrix(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    return matrix_from_json(j);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Subspace read_subspace(const std::string& path, const Tolerance& tol) {
  const Json j = read_json_file(path);
  try {
    return subspace_from_json(j, tol);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
  if (!out) throw ParseError("write failed: " + path);
}

Json to_json(const Tolerance& tol) {
  return Json{{"rank_rel", tol.rank_rel}, {"eq_rel", tol.eq_rel}, {"psd_slack", tol.psd_slack}};
}

Json to_json(const ComplementabilityReport& r) {
  Json out{{"weakly", r.weakly},
           {"strongly", r.strongly},
           {"residual_21", r.residual_21},
           {"residual_12", r.residual_12},
           {"weak_residual_21", r.weak_residual_21},
           {"weak_residual_12", r.weak_residual_12},
           {"dixmier_s", r.dixmier_s},
           {"dixmier_t", r.dixmier_t}};
  if (r.witnesses) {
    const auto& w = *r.witnesses;
    out["witnesses"] = Json{{"e", matrix_to_json(w.e)},
                            {"f", matrix_to_json(w.f)},
                            {"p_hat", matrix_to_json(w.p_hat)},
                            {"q_hat", matrix_to_json(w.q_hat)},
                            {"m_r", matrix_to_json(w.m_r)},
                            {"m_l", matrix_to_json(w.m_l)}};
  } else {
    out["witnesses"] = nullptr;
  }
  return out;
}

Json to_json(const ShortedResult& r) {
  return Json{{"shorted", matrix_to_json(r.shorted)},
              {"e", matrix_to_json(r.e)},
              {"f", matrix_to_json(r.f)},
              {"p", matrix_to_json(r.p)},
              {"q", matrix_to_json(r.q)},
              {"residuals",
               {{"qa_minus_ap", r.diagnostics.qa_minus_ap},
                {"ap_minus_shorted", r.diagnostics.ap_minus_shorted},
                {"route_disagreement", r.diagnostics.route_disagreement},
                {"e_residual", r.diagnostics.e_residual},
                {"f_residual", r.diagnostics.f_residual}}},
              {"complementability", to_json(r.report)}};
}

Json to_json(const SummabilityReport& r) {
  return Json{{"weakly", r.weakly},         {"strongly", r.strongly},         {"b_inclusions", r.b_inclusions},
              {"defect_a", r.defect_a},     {"defect_a_adj", r.defect_a_adj}, {"defect_b", r.defect_b},
              {"defect_b_adj", r.defect_b_adj}};
}

Json to_json(const ParallelSumResult& r) {
  return Json{{"sum", matrix_to_json(r.sum)},
              {"routes",
               {{"pinv", matrix_to_json(r.route_pinv)},
                {"reduced", matrix_to_json(r.route_reduced)},
                {"block", matrix_to_json(r.route_block)}}},
              {"max_route_disagreement", r.max_route_disagreement},
              {"commutativity_defect", r.commutativity_defect},
              {"summability", to_json(r.report)}};
}

Json to_json(const MinusVerdict& v) {
  Json out{{"holds", v.holds},
           {"rank_route", v.rank_route},
           {"projection_route", v.projection_route},
           {"dixmier_range", v.dixmier_range},
           {"dixmier_corange", v.dixmier_corange},
           {"factorization_residual", v.factorization_residual}};
  if (v.witnesses)
    out["witnesses"] = Json{{"q", matrix_to_json(v.witnesses->q)}, {"p", matrix_to_json(v.witnesses->p)}};
  else
    out["witnesses"] = nullptr;
  return out;
}

Json to_json(const ConvergenceRecord& r) {
  Json values = Json::array();
  for (const auto& v : r.values) values.push_back(matrix_to_json(v));
  Json out{{"schedule", series(r.schedule)},
           {"errors", series(r.errors)},
           {"first_summable_n", r.first_summable_n},
           {"skipped", series(r.skipped)}};
  if (r.fitted_slope)
    out["fitted_slope"] = *r.fitted_slope;
  else
    out["fitted_slope"] = nullptr;
  out["values"] = std::move(values);
  return out;
}

Json to_json(const SuiteReport& r) {
  Json invariants = Json::array();
  for (const auto& inv : r.invariants) {
    Json failures = Json::array();
    for (const auto& f : inv.failures)
      failures.push_back(Json{{"trial", f.trial}, {"seed", f.seed}, {"detail", f.detail}});
    invariants.push_back(Json{{"name", inv.name},
                              {"pass", inv.pass},
                              {"fail", inv.fail},
                              {"skip", inv.skip},
                              {"collapse_checks", inv.collapse_checks},
                              {"collapse_discrepancies", inv.collapse_discrepancies},
                              {"counters", counters_json(inv.counters)},
                              {"failures", std::move(failures)}});
  }
  return Json{{"rng", std::string(kRngName)},
              {"config",
               {{"seed", r.config.seed},
                {"trials", r.config.trials},
                {"dim_min", r.config.dim_min},
                {"dim_max", r.config.dim_max},
                {"condition_cap", r.config.condition_cap},
                {"tolerance", to_json(r.config.tol)}}},
              {"total_failures", r.total_failures()},
              {"collapse_checks", r.collapse_checks},
              {"collapse_discrepancies", r.collapse_discrepancies},
              {"invariants", std::move(invariants)}};
}

}  // namespace bishort
