#pragma once

// JSON files and reports.
//
// MatrixFile:   {"rows": m, "cols": n, "complex": bool, "data": [[...], ...]}
//               entries are numbers, or [re, im] pairs when complex is true.
// SubspaceFile: {"ambient": n, "kind": "basis" | "projection", "data": [[...]]}
//               basis data is ambient x k (columns span the subspace); entries
//               may be numbers or [re, im] pairs.
//
// Doubles are written in shortest round-trip form, so a written matrix reads
// back bit for bit.

#include <string>

#include "json.hpp"

#include "bishort/genlab.hpp"
#include "bishort/minus_order.hpp"

namespace bishort {

using Json = nlohmann::ordered_json;

/// Unreadable file or malformed content.
class ParseError : public Error {
 public:
  using Error::Error;
};

Operator matrix_from_json(const Json& j);
/// `complex` is written as false when every imaginary part is exactly zero.
Json matrix_to_json(const Operator& a);

Subspace subspace_from_json(const Json& j, const Tolerance& tol = {});
Json subspace_to_json(const Subspace& s);

Json read_json_file(const std::string& path);
Operator read_matrix(const std::string& path);
Subspace read_subspace(const std::string& path, const Tolerance& tol = {});
/// Pretty-printed with a trailing newline; "-" means stdout.
void write_json(const std::string& path, const Json& j);

Json to_json(const Tolerance& tol);
Json to_json(const ComplementabilityReport& r);
Json to_json(const ShortedResult& r);
Json to_json(const SummabilityReport& r);
Json to_json(const ParallelSumResult& r);
Json to_json(const MinusVerdict& v);
Json to_json(const ConvergenceRecord& r);
Json to_json(const SuiteReport& r);

}  // namespace bishort
