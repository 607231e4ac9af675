#include <doctest.h>

#include <bit>

#include "speck/errors.hpp"
#include "speck/repcalc.hpp"

using namespace speck;
using namespace speck::repcalc;

namespace {
double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("exterior and interior multiplication on Lambda R^2") {
  const std::vector<double> e0{1.0, 0.0}, e1{0.0, 1.0};
  const RealMatrix ext0 = exterior_multiplication(e0);
  const RealMatrix ext1 = exterior_multiplication(e1);
  // 1 -> e0, e1 -> e0 ^ e1, and e1 ^ e0 = -e0 ^ e1.
  CHECK(ext0(1, 0) == 1.0);
  CHECK(ext0(3, 2) == 1.0);
  CHECK(ext1(3, 1) == -1.0);
  CHECK((ext0 * ext0).isZero());
  const RealMatrix ins0 = interior_multiplication(e0);
  CHECK((ext0 * ins0 + ins0 * ext0).isIdentity());
}

TEST_CASE("exterior_rep satisfies the Cl(n,n) relations and is onto") {
  for (int n = 1; n <= 3; ++n) {
    const auto rep = exterior_rep(n);
    const auto cert = certify(rep, n, n);
    CHECK(cert.relations_exact);
    CHECK(cert.span_rank == cert.target_rank);
    CHECK(cert.adjoint_residual == 0.0);
  }
  CHECK_THROWS_AS(exterior_rep(9), ResourceError);
}

TEST_CASE("c_rep and signature_rep agree on the euclidean signature") {
  const auto a = c_rep(3);
  const auto b = signature_rep(clifford::CliffordSignature::euclidean(3));
  for (int i = 0; i < 3; ++i) CHECK(max_abs(a.images[i] - b.images[i]) == 0.0);
}

TEST_CASE("signature_rep is a *-representation for mixed signatures") {
  const clifford::CliffordSignature sig({1, -1, -1}, {1, 1, 1});
  const auto rep = signature_rep(sig);
  for (int i = 0; i < 3; ++i) {
    const Matrix& g = rep.images[i];
    CHECK(max_abs(g * g - double(sig.squares[i]) * Matrix::Identity(8, 8)) == 0.0);
    CHECK(max_abs(g.adjoint() - double(sig.squares[i]) * g) == 0.0);
  }
  const auto x = clifford::CliffordElement::generator(sig, 0) +
                 clifford::CliffordElement::generator(sig, 1) * clifford::CliffordElement::generator(sig, 2);
  CHECK(max_abs(rep.image(clifford::adjoint(x)) - rep.image(x).adjoint()) == 0.0);
}

TEST_CASE("left multiplication and signed right multiplication anticommute") {
  const auto sig = clifford::CliffordSignature::euclidean(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const RealMatrix l = left_multiplication(sig, i);
      const RealMatrix r = signed_right_multiplication(sig, j);
      CHECK((l * r + r * l).isZero());
    }
}

TEST_CASE("number operator is diag(2p - n) on monomials of length p") {
  for (int n = 1; n <= 3; ++n) {
    const auto num = number_operator(n);
    for (int m = 0; m < (1 << n); ++m)
      CHECK(num.entries(m, m).real() == 2 * std::popcount(static_cast<unsigned>(m)) - n);
    CHECK(num.entries.imag().isZero());
    CHECK((num.entries.real() - RealMatrix(num.entries.real().diagonal().asDiagonal())).isZero());
  }
}

TEST_CASE("matrix models") {
  const auto m20 = matrix_model(2, 0);
  CHECK(m20.dim() == 2);
  CHECK(certify(m20, 2, 0).passed());
  const auto m80 = matrix_model(8, 0);
  CHECK(m80.dim() == 16);
  const auto c = certify(m80, 8, 0);
  CHECK(c.passed());
  CHECK(c.span_rank == 256);
  REQUIRE(c.real_residual);
  CHECK(*c.real_residual == 0.0);
  CHECK(certify(matrix_model(4, 4), 4, 4).span_rank == 256);
  CHECK_THROWS_AS(matrix_model(3, 0), UnsupportedError);
}
