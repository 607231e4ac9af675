#include <doctest.h>

#include "speck/bott.hpp"
#include "speck/errors.hpp"

using namespace speck;
using namespace speck::bott;
using schwartz::SFunction;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Oracle: exp(-a) of a real symmetric matrix through its own eigensolver.
RealMatrix expm_neg(const RealMatrix& a) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(a);
  return es.eigenvectors() * es.eigenvalues().unaryExpr([](double x) { return std::exp(-x); }).asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace

TEST_CASE("bott_map is the functional calculus of C") {
  const Truncation t{1, 24, 4};
  const RealMatrix c = oscillator::clifford_operator(t).dense();
  const RealMatrix eu = expm_neg(c * c);
  CHECK(max_abs(bott_map(SFunction::u(), t) - eu.cast<Complex>()) < 1e-12);
  CHECK(max_abs(bott_map(SFunction::v(), t) - (c * eu).cast<Complex>()) < 1e-12);
  CHECK(bott_map(SFunction::zero(), t).isZero());
}

TEST_CASE("alpha with f = h = u is e^{-D^2/t^2} e^{-C^2/t^2}") {
  const Truncation t{1, 24, 4};
  const RealMatrix c = oscillator::clifford_operator(t).dense();
  const RealMatrix d = oscillator::dirac_operator(t).dense();
  const double tp = 3.0;
  const RealMatrix expected = expm_neg(d * d / (tp * tp)) * expm_neg(c * c / (tp * tp));
  CHECK(max_abs(alpha(SFunction::u(), SFunction::u(), tp, t) - expected.cast<Complex>()) < 1e-12);
  CHECK(alpha(SFunction::zero(), SFunction::u(), tp, t).isZero());
  CHECK_THROWS_AS(alpha(SFunction::u(), SFunction::u(), 0.5, t), DomainError);
}

TEST_CASE("Delta-compatibility of the Dirac-dual-Dirac left side") {
  const Truncation t{1, 24, 4};
  for (double tp : {1.0, 4.0}) {
    CHECK(delta_compatibility(SFunction::u(), tp, t) < 1e-12);
    CHECK(delta_compatibility(SFunction::v(), tp, t) < 1e-12);
  }
  CHECK_THROWS_AS(dirac_dual_dirac_lhs(SFunction::zero(), 2.0, t), UnsupportedError);
}

TEST_CASE("residual table decays and is reproducible") {
  const Truncation t{1, 48, 4};
  const auto grid = doubling_grid(8.0);
  CHECK(grid == std::vector<double>{1, 2, 4, 8});
  const auto a = residual_table(grid, t);
  const auto b = residual_table(grid, t, 16, true);
  REQUIRE(a.size() == 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].residual_u == b[i].residual_u);
    CHECK(a[i].residual_v == b[i].residual_v);
  }
  CHECK(a[3].residual_u < 0.5 * a[1].residual_u);
  CHECK(a[3].residual_v < 0.5 * a[1].residual_v);
  CHECK_THROWS_AS(doubling_grid(0.5), DomainError);
}

TEST_CASE("Bott class is 1 in one and two dimensions") {
  const auto one = bott_class({1, 64, 4});
  CHECK(one.cls.scalar() == 1);
  CHECK(one.even_kernel == 1);
  CHECK(one.odd_kernel == 0);
  CHECK(one.leakage < 1e-12);
  CHECK(one.gap == doctest::Approx(std::sqrt(2.0)));
  const auto two = bott_class({2, 24, 4});
  CHECK(two.cls.scalar() == 1);
  for (const auto& row : two.scaling) CHECK(row.norm <= row.bound + 1e-12);
}

TEST_CASE("periodicity report") {
  const auto r = periodicity_report();
  CHECK(r.passed);
  CHECK(r.certificates.size() == 6);
  CHECK(r.certificates[2].span_rank == 4);   // Cl(1,1)
  CHECK(r.certificates[4].span_rank == 64);  // Cl(3,3)
}
