#include <doctest.h>

#include "speck/errors.hpp"
#include "speck/json_io.hpp"

using namespace speck;

TEST_CASE("Clifford element round trip") {
  const std::string text =
      R"({"signature":{"squares":[1,-1],"kappa":[1,1]},)"
      R"("coeffs":[{"monomial":[],"re":1.5},{"monomial":[0,1],"re":0.5,"im":-2}]})";
  const auto x = json_io::parse_clifford(text);
  CHECK(x.coefficient(clifford::Monomial(0)) == Complex(1.5));
  CHECK(x.coefficient(clifford::Monomial(3)) == Complex(0.5, -2));
  CHECK(json_io::parse_clifford(json_io::to_json(x)).distance(x) == 0.0);
}

TEST_CASE("graded matrix round trip") {
  const std::string text = R"({"dim":2,"grading":[1,-1],"re":[[0,1],[1,0]],"im":[[0,0],[0,0]]})";
  const auto m = json_io::parse_graded_matrix(text);
  CHECK(m.dim() == 2);
  CHECK(m.entries(0, 1) == Complex(1.0));
  const auto again = json_io::parse_graded_matrix(json_io::to_json(m));
  CHECK(again.entries == m.entries);
  CHECK(again.grading == m.grading);
}

TEST_CASE("Fredholm inputs") {
  const auto map = json_io::parse_fredholm(
      R"({"kind":"map","ring":{"kind":"functions","points":2},)"
      R"("blocks":[{"re":[[1,0]]},{"re":[[0,0]]}],"expected_index":[1,1]})");
  REQUIRE(std::holds_alternative<fredholm::FredholmMap>(map.value));
  const auto r = fredholm::index(std::get<fredholm::FredholmMap>(map.value));
  CHECK(r.index.values == *map.expected_index);
  CHECK(json_io::to_json(r.index) == "[1,1]");

  const auto cycle = json_io::parse_fredholm(
      R"({"kind":"cycle","ring":{"kind":"complex"},"even_dim":1,"odd_dim":1,)"
      R"("operators":[{"re":[[0,0],[0,0]]}]})");
  CHECK(std::holds_alternative<fredholm::FredholmCycle>(cycle.value));
  CHECK(!cycle.expected_index);
}

TEST_CASE("schema violations are parse errors") {
  CHECK_THROWS_AS(json_io::parse_fredholm("{"), ParseError);
  CHECK_THROWS_AS(json_io::parse_fredholm(R"({"kind":"map"})"), ParseError);
  CHECK_THROWS_AS(json_io::parse_fredholm(R"({"kind":"map","ring":{"kind":"complex"},"blocks":[{"re":[[1],[1,2]]}]})"),
                  ParseError);
  CHECK_THROWS_AS(json_io::parse_fredholm(R"({"kind":"cycle","ring":{"kind":"complex"},"even_dim":1,"odd_dim":1,"operators":[{"re":[[1,0],[0,1]]}]})"),
                  ParseError);
  CHECK_THROWS_AS(json_io::parse_clifford(R"({"signature":{"squares":[2],"kappa":[1]},"coeffs":[]})"), ParseError);
  CHECK_THROWS_AS(json_io::parse_graded_matrix(R"({"dim":2,"grading":[1,0],"re":[[0,1],[1,0]]})"), ParseError);
  CHECK_THROWS_AS(json_io::read_file("/nonexistent/file.json"), ParseError);
}
