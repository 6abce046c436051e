#include "doctest.h"
#include "util.hpp"

#include <cstring>
#include <limits>

#include "bishort/io.hpp"

using namespace bishort;
using testutil::dist;
using testutil::mat;

namespace {
bool bit_equal(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(), sizeof(Complex) * std::size_t(a.size())) == 0;
}
}  // namespace

TEST_CASE("real matrix parses") {
  const Json j = Json::parse(R"({"rows":2,"cols":2,"data":[[2,1],[1,1]]})");
  CHECK(dist(matrix_from_json(j), mat({{2, 1}, {1, 1}})) == 0.0);
}

TEST_CASE("complex matrix parses") {
  const Json j = Json::parse(R"({"rows":1,"cols":2,"complex":true,"data":[[[1,2],[0,-1]]]})");
  const Operator a = matrix_from_json(j);
  CHECK(a(0, 0) == Complex(1, 2));
  CHECK(a(0, 1) == Complex(0, -1));
}

TEST_CASE("malformed matrices are rejected") {
  const char* bad[] = {
      R"([1,2])",
      R"({"rows":2,"cols":2,"data":[[1,2]]})",
      R"({"rows":1,"cols":2,"data":[[1]]})",
      R"({"rows":1,"cols":1,"data":[["x"]]})",
      R"({"rows":1,"cols":1,"complex":true,"data":[[1]]})",
      R"({"rows":1,"cols":1,"data":[[[1,0]]]})",
      R"({"rows":-1,"cols":1,"data":[]})",
      R"({"cols":1,"data":[[1]]})",
      R"({"rows":1,"cols":1,"complex":"yes","data":[[1]]})",
  };
  for (const char* text : bad) {
    INFO(text);
    CHECK_THROWS_AS(matrix_from_json(Json::parse(text)), ParseError);
  }
}

TEST_CASE("round trip is bit exact") {
  Operator a(3, 2);
  a << Complex(0.1, 1.0 / 3.0), Complex(std::numeric_limits<double>::denorm_min(), -0.0),
      Complex(1e308, -2.5e-300), Complex(M_PI, M_E), Complex(-1.0 / 7.0, 0.3), Complex(123456789.0123, 1e-17);
  const std::string text = matrix_to_json(a).dump(2);
  const Operator b = matrix_from_json(Json::parse(text));
  CHECK(bit_equal(a, b));

  const Operator r = mat({{0.1, 0.2}, {1.0 / 3.0, -2.0 / 3.0}});
  const Json jr = matrix_to_json(r);
  CHECK(jr["complex"] == false);
  CHECK(bit_equal(matrix_from_json(Json::parse(jr.dump())), r));
}

TEST_CASE("subspace formats") {
  auto s = subspace_from_json(Json::parse(R"({"ambient":2,"kind":"basis","data":[[1],[0]]})"));
  CHECK(s.dim() == 1);
  s = subspace_from_json(Json::parse(R"({"ambient":3,"kind":"basis","data":[]})"));
  CHECK(s.is_trivial());
  CHECK(s.ambient_dim() == 3);
  s = subspace_from_json(Json::parse(R"({"ambient":2,"kind":"projection","data":[[0.5,0.5],[0.5,0.5]]})"));
  CHECK(s.dim() == 1);
  CHECK_THROWS_AS(subspace_from_json(Json::parse(R"({"ambient":2,"kind":"projection","data":[[1,1],[0,0]]})")),
                  ParseError);
  CHECK_THROWS_AS(subspace_from_json(Json::parse(R"({"ambient":2,"kind":"cone","data":[]})")), ParseError);

  const Json out = subspace_to_json(Subspace::span(mat({{1}, {0}})));
  CHECK(out["dim"] == 1);
  CHECK(subspace_from_json(out).dim() == 1);
}

TEST_CASE("missing file is a parse error") {
  CHECK_THROWS_AS(read_matrix("/nonexistent/a.json"), ParseError);
}

TEST_CASE("reports carry the expected fields") {
  const Operator a = mat({{2, 1}, {1, 1}});
  const Subspace e1 = Subspace::span(mat({{1}, {0}}));
  const Json j = to_json(shorted(a, e1, e1));
  CHECK(j.contains("shorted"));
  CHECK(j["complementability"]["strongly"] == true);
  CHECK(j["residuals"].contains("qa_minus_ap"));

  const Json t = to_json(Tolerance{});
  CHECK(t["eq_rel"] == 1e-9);
}
