#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "speck/bott.hpp"
#include "speck/clifford.hpp"
#include "speck/errors.hpp"
#include "speck/fredholm.hpp"
#include "speck/json_io.hpp"
#include "speck/oscillator.hpp"
#include "speck/repcalc.hpp"
#include "speck/schwartz.hpp"
#include "speck/verify.hpp"

namespace py = pybind11;
using namespace speck;

namespace {

schwartz::SFunction named_function(const std::string& name) {
  if (name == "u") return schwartz::SFunction::u();
  if (name == "v") return schwartz::SFunction::v();
  if (name == "0") return schwartz::SFunction::zero();
  throw py::value_error("function must be 'u', 'v' or '0'");
}

fredholm::FredholmMap make_map(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw py::value_error("need at least one block");
  const auto ring = blocks.size() == 1
                        ? fredholm::BaseRing::complex()
                        : fredholm::BaseRing::functions(static_cast<int>(blocks.size()));
  return {ring, blocks};
}

py::object k0(const fredholm::K0Class& k) {
  if (k.ring.kind == fredholm::BaseRing::Kind::complex) return py::int_(k.scalar());
  return py::cast(k.values);
}

}  // namespace

PYBIND11_MODULE(_speck, m) {
  m.doc() = "Desk-scale spectral K-theory: Clifford algebras, Fredholm index, Bott periodicity";

  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<DecomposeFirstError>(m, "DecomposeFirstError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<verify::UsageError>(m, "UsageError", PyExc_ValueError);

  m.def(
      "multiply",
      [](const std::vector<int>& squares, const std::vector<int>& a, const std::vector<int>& b) {
        const clifford::CliffordSignature sig(squares, std::vector<int>(squares.size(), 1));
        const auto r = clifford::multiply(sig, clifford::Monomial::from_indices(a),
                                          clifford::Monomial::from_indices(b));
        return py::make_tuple(r.sign, r.monomial.indices());
      },
      py::arg("squares"), py::arg("a"), py::arg("b"),
      "Sign and index list of the monomial product e_a e_b.");

  m.def(
      "clifford_norm",
      [](const std::string& element_json) {
        return clifford::norm(json_io::parse_clifford(element_json));
      },
      py::arg("element_json"));

  m.def(
      "generator_images",
      [](int p, int q) { return repcalc::matrix_model(p, q).images; }, py::arg("p"),
      py::arg("q"), "Generator matrices of the Cl(p,q) model.");

  m.def(
      "comultiply",
      [](const std::string& f, double x, double y) {
        return schwartz::comultiply(named_function(f))(x, y);
      },
      py::arg("f"), py::arg("x"), py::arg("y"));

  m.def(
      "oscillator_spectrum",
      [](int dim, int cutoff, int margin, int k) {
        return oscillator::oscillator_spectrum({dim, cutoff, margin}, k);
      },
      py::arg("dim") = 1, py::arg("cutoff") = 64, py::arg("margin") = 4, py::arg("k") = 6);

  m.def(
      "mehler_parameters",
      [](double s) {
        const auto r = oscillator::mehler_parameters(s);
        return py::make_tuple(r.s1, r.s2);
      },
      py::arg("s"));

  m.def(
      "index",
      [](const std::vector<Matrix>& blocks) {
        const auto r = fredholm::index(make_map(blocks));
        py::dict d;
        d["index"] = k0(r.index);
        d["kernel_dims"] = r.kernel_dims;
        d["cokernel_dims"] = r.cokernel_dims;
        d["taming_size"] = r.taming_size;
        return d;
      },
      py::arg("blocks"), "Index of a map given by one block per point.");

  m.def(
      "graded_index",
      [](int even_dim, int odd_dim, const std::vector<Matrix>& operators) {
        const auto ring = operators.size() == 1
                              ? fredholm::BaseRing::complex()
                              : fredholm::BaseRing::functions(static_cast<int>(operators.size()));
        return k0(fredholm::graded_index({ring, even_dim, odd_dim, operators}).index);
      },
      py::arg("even_dim"), py::arg("odd_dim"), py::arg("operators"));

  m.def(
      "cayley",
      [](const Matrix& d, const std::vector<int>& grading) {
        return fredholm::cayley(GradedMatrix(d, grading));
      },
      py::arg("d"), py::arg("grading"));

  m.def("unitary_retraction", &fredholm::unitary_retraction, py::arg("a"), py::arg("t"));

  m.def(
      "bott_class",
      [](int dim, int cutoff, int margin) {
        const auto r = bott::bott_class({dim, cutoff, margin});
        py::dict d;
        d["class"] = r.cls.scalar();
        d["even_kernel"] = r.even_kernel;
        d["odd_kernel"] = r.odd_kernel;
        d["window_dim"] = r.window_dim;
        d["leakage"] = r.leakage;
        return d;
      },
      py::arg("dim") = 1, py::arg("cutoff") = 64, py::arg("margin") = 4);

  m.def(
      "residual_table",
      [](int cutoff, double tmax, int margin) {
        std::vector<std::tuple<double, double, double>> rows;
        for (const auto& r : bott::residual_table(bott::doubling_grid(tmax), {1, cutoff, margin}))
          rows.emplace_back(r.t, r.residual_u, r.residual_v);
        return rows;
      },
      py::arg("cutoff") = 128, py::arg("tmax") = 16.0, py::arg("margin") = 4,
      "Rows (t, residual_u, residual_v) of the Dirac-dual-Dirac comparison.");

  m.def(
      "run_suite",
      [](const std::string& suite, std::uint64_t seed, double tol_scale) {
        verify::Params p;
        p.seed = seed;
        p.tol_scale = tol_scale;
        return verify::report_json(verify::run_suite(suite, p));
      },
      py::arg("suite"), py::arg("seed") = verify::Params{}.seed, py::arg("tol_scale") = 1.0,
      "Runs a verification suite and returns its JSON report.");
}
