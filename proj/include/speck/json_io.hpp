#pragma once

// JSON exchange formats. Everything crosses this boundary as text so callers
// never see the JSON library.
//
// Matrices: {"re": [[...], ...], "im": [[...], ...]} (rows; "im" optional).
// Clifford element:
//   {"signature": {"squares": [..], "kappa": [..]},
//    "coeffs": [{"monomial": [i, ...], "re": x, "im": y}, ...]}
// Graded matrix: {"dim": n, "grading": [+-1, ...], "re": .., "im": ..}
// Fredholm input:
//   {"kind": "map", "ring": {"kind": "complex"} | {"kind": "functions",
//    "points": k}, "blocks": [matrix, ...], "expected_index": [..]}
//   {"kind": "cycle", "ring": .., "even_dim": a, "odd_dim": b,
//    "operators": [matrix, ...], "expected_index": [..]}

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "speck/clifford.hpp"
#include "speck/fredholm.hpp"
#include "speck/graded_matrix.hpp"

namespace speck::json_io {

/// All parse functions throw ParseError on malformed or schema-violating
/// input.
clifford::CliffordElement parse_clifford(const std::string& text);
std::string to_json(const clifford::CliffordElement& x);

GradedMatrix parse_graded_matrix(const std::string& text);
std::string to_json(const GradedMatrix& m);

struct FredholmInput {
  std::variant<fredholm::FredholmMap, fredholm::FredholmCycle> value;
  std::optional<std::vector<long>> expected_index;
};
FredholmInput parse_fredholm(const std::string& text);

std::string to_json(const fredholm::IndexResult& r);
std::string to_json(const fredholm::GradedIndexResult& r);
std::string to_json(const fredholm::K0Class& k);

std::string spectrum_json(const std::vector<double>& values);

/// Reads a whole file; throws ParseError if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace speck::json_io
