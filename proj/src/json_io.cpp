#include "speck/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "speck/errors.hpp"

namespace speck::json_io {

using nlohmann::json;

namespace {

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + what + "' has the wrong type");
  }
}

Matrix parse_matrix(const json& j) {
  const auto re = get<std::vector<std::vector<double>>>(field(j, "re"), "re");
  std::vector<std::vector<double>> im;
  if (j.contains("im")) im = get<std::vector<std::vector<double>>>(j.at("im"), "im");
  const auto rows = static_cast<Eigen::Index>(re.size());
  const auto cols = rows ? static_cast<Eigen::Index>(re.front().size()) : 0;
  if (!im.empty() && im.size() != re.size())
    throw ParseError("'re' and 'im' have different shapes");
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = re[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      double imag = 0.0;
      if (!im.empty()) {
        const auto& irow = im[static_cast<std::size_t>(r)];
        if (irow.size() != row.size()) throw ParseError("'re' and 'im' have different shapes");
        imag = irow[static_cast<std::size_t>(c)];
      }
      m(r, c) = Complex(row[static_cast<std::size_t>(c)], imag);
    }
  }
  return m;
}

json matrix_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ir = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return {{"re", re}, {"im", im}};
}

fredholm::BaseRing parse_ring(const json& j) {
  const auto kind = get<std::string>(field(j, "kind"), "kind");
  if (kind == "complex") return fredholm::BaseRing::complex();
  if (kind == "functions") {
    const int points = get<int>(field(j, "points"), "points");
    if (points < 1) throw ParseError("'points' must be >= 1");
    return fredholm::BaseRing::functions(points);
  }
  throw ParseError("unknown ring kind '" + kind + "'");
}

json k0_json(const fredholm::K0Class& k) {
  if (k.ring.kind == fredholm::BaseRing::Kind::complex) return k.values.front();
  return k.values;
}

}  // namespace

clifford::CliffordElement parse_clifford(const std::string& text) {
  const json j = parse_text(text);
  const json& sig = field(j, "signature");
  const auto squares = get<std::vector<int>>(field(sig, "squares"), "squares");
  const auto kappa = get<std::vector<int>>(field(sig, "kappa"), "kappa");
  clifford::CliffordSignature s;
  try {
    s = clifford::CliffordSignature(squares, kappa);
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  clifford::CliffordElement x(s);
  for (const auto& c : get<std::vector<json>>(field(j, "coeffs"), "coeffs")) {
    const auto idx = get<std::vector<int>>(field(c, "monomial"), "monomial");
    const double re = c.contains("re") ? get<double>(c.at("re"), "re") : 0.0;
    const double im = c.contains("im") ? get<double>(c.at("im"), "im") : 0.0;
    try {
      x = x + clifford::CliffordElement::monomial(
                  s, clifford::Monomial::from_indices(idx), Complex(re, im));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(e.what());
    }
  }
  return x;
}

std::string to_json(const clifford::CliffordElement& x) {
  const auto& s = x.signature();
  json coeffs = json::array();
  for (const auto& [m, c] : x.coefficients())
    coeffs.push_back({{"monomial", m.indices()}, {"re", c.real()}, {"im", c.imag()}});
  return json{{"signature", {{"squares", s.squares}, {"kappa", s.kappa}}},
              {"coeffs", coeffs}}
      .dump();
}

GradedMatrix parse_graded_matrix(const std::string& text) {
  const json j = parse_text(text);
  const int dim = get<int>(field(j, "dim"), "dim");
  Matrix entries = parse_matrix(j);
  if (entries.rows() != dim || entries.cols() != dim)
    throw ParseError("matrix shape does not match 'dim'");
  try {
    GradedMatrix m(std::move(entries), get<std::vector<int>>(field(j, "grading"), "grading"));
    m.validate();
    return m;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
}

std::string to_json(const GradedMatrix& m) {
  json j = matrix_json(m.entries);
  j["dim"] = m.dim();
  j["grading"] = m.grading;
  return j.dump();
}

FredholmInput parse_fredholm(const std::string& text) {
  const json j = parse_text(text);
  const auto kind = get<std::string>(field(j, "kind"), "kind");
  const auto ring = parse_ring(field(j, "ring"));
  FredholmInput out;
  if (j.contains("expected_index"))
    out.expected_index = get<std::vector<long>>(j.at("expected_index"), "expected_index");
  try {
    if (kind == "map") {
      fredholm::FredholmMap f{ring, {}};
      for (const auto& b : get<std::vector<json>>(field(j, "blocks"), "blocks"))
        f.blocks.push_back(parse_matrix(b));
      f.validate();
      out.value = std::move(f);
    } else if (kind == "cycle") {
      fredholm::FredholmCycle c{ring, get<int>(field(j, "even_dim"), "even_dim"),
                                get<int>(field(j, "odd_dim"), "odd_dim"), {}};
      for (const auto& b : get<std::vector<json>>(field(j, "operators"), "operators"))
        c.operators.push_back(parse_matrix(b));
      c.validate();
      out.value = std::move(c);
    } else {
      throw ParseError("unknown input kind '" + kind + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  return out;
}

std::string to_json(const fredholm::IndexResult& r) {
  return json{{"index", k0_json(r.index)},
              {"kernel_dims", r.kernel_dims},
              {"cokernel_dims", r.cokernel_dims},
              {"tamed_kernel_dims", r.tamed_kernel_dims},
              {"taming_size", r.taming_size}}
      .dump();
}

std::string to_json(const fredholm::GradedIndexResult& r) {
  return json{{"index", k0_json(r.index)},
              {"even_kernel_dims", r.even_kernel_dims},
              {"odd_kernel_dims", r.odd_kernel_dims}}
      .dump();
}

std::string to_json(const fredholm::K0Class& k) { return k0_json(k).dump(); }

std::string spectrum_json(const std::vector<double>& values) {
  return json{{"eigenvalues", values}}.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace speck::json_io
