#include <doctest.h>

#include <cmath>
#include <numbers>

#include "speck/errors.hpp"
#include "speck/fredholm.hpp"

using namespace speck;
using namespace speck::fredholm;

namespace {

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Matrix offdiag(const Matrix& t) {
  const auto k = t.cols(), m = t.rows();
  Matrix f = Matrix::Zero(k + m, k + m);
  f.topRightCorner(k, m) = t.adjoint();
  f.bottomLeftCorner(m, k) = t;
  return f;
}

// Oracle: rank by SVD, independent of the library's helpers.
int svd_rank(const Matrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > 1e-9 * s(0);
  return r;
}

}  // namespace

TEST_CASE("find_taming examples") {
  const auto zero = find_taming(FredholmMap::scalar(Matrix::Zero(2, 2)));
  CHECK(zero.n == 2);
  CHECK(max_abs(zero.g[0].adjoint() * zero.g[0] - Matrix::Identity(2, 2)) < 1e-14);

  const auto inv = find_taming(FredholmMap::scalar(Matrix::Identity(3, 3)));
  CHECK(inv.n == 0);

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  const auto t = find_taming(FredholmMap::scalar(d));
  CHECK(t.n == 1);
  CHECK(std::abs(t.g[0](0, 0)) < 1e-14);
  CHECK(std::abs(t.g[0](1, 0)) == doctest::Approx(1.0));
}

TEST_CASE("index equals k - m against the rank-nullity oracle") {
  std::mt19937_64 rng(5);
  for (int m = 1; m <= 5; ++m)
    for (int k = 1; k <= 5; ++k)
      for (int r = 0; r <= std::min(m, k); ++r) {
        const Matrix f = random_matrix(rng, m, r) * random_matrix(rng, r, k);
        const auto res = index(FredholmMap::scalar(f));
        CHECK(res.index.scalar() == k - m);
        CHECK(res.kernel_dims[0] == k - svd_rank(f));
        CHECK(res.cokernel_dims[0] == m - svd_rank(f));
      }
}

TEST_CASE("family over two points keeps per-point kernel data") {
  std::mt19937_64 rng(9);
  const Matrix a = random_matrix(rng, 3, 2) * random_matrix(rng, 2, 3);
  const Matrix b = random_matrix(rng, 3, 1) * random_matrix(rng, 1, 3);
  const FredholmMap f{BaseRing::functions(2), {a, b}};
  const auto r = index(f);
  CHECK(r.index.values == std::vector<long>{0, 0});
  CHECK(r.kernel_dims == std::vector<int>{1, 2});
  CHECK(r.taming_size == 2);
  CHECK(taming_independence(f, 10, rng));
}

TEST_CASE("invalid tamings and structural errors") {
  const FredholmMap f = FredholmMap::scalar(Matrix::Zero(2, 2));
  Taming bad{1, {Matrix::Zero(2, 1)}};
  CHECK_THROWS_AS(index(f, bad), PreconditionError);
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(taming_independence(f, 1, rng), PreconditionError);
  CHECK(taming_independence(f, 5, rng));
  const FredholmMap ragged{BaseRing::functions(2), {Matrix::Zero(2, 2), Matrix::Zero(2, 3)}};
  CHECK_THROWS_AS(ragged.validate(), StructuralError);
}

TEST_CASE("additivity and adjoint") {
  std::mt19937_64 rng(21);
  const auto a = FredholmMap::scalar(random_matrix(rng, 2, 5));
  const auto b = FredholmMap::scalar(random_matrix(rng, 4, 1));
  CHECK(index(direct_sum(a, b)).index == index(a).index + index(b).index);
  CHECK(index(adjoint(a)).index == -index(a).index);
}

TEST_CASE("graded index examples") {
  const FredholmCycle zero{BaseRing::complex(), 2, 1, {Matrix::Zero(3, 3)}};
  CHECK(graded_index(zero).index.scalar() == 1);

  Matrix t = Matrix::Zero(2, 2);
  t(0, 0) = 1.0;
  const auto c = FredholmCycle::from_map(FredholmMap::scalar(t));
  const auto r = graded_index(c);
  CHECK(r.index.scalar() == 0);
  CHECK(r.even_kernel_dims[0] == 1);
  CHECK(r.odd_kernel_dims[0] == 1);

  std::mt19937_64 rng(2);
  const Matrix rect = random_matrix(rng, 2, 4);
  CHECK(graded_index(FredholmCycle::from_map(FredholmMap::scalar(rect))).index.scalar() == 2);
  CHECK(graded_index(inverse_cycle(FredholmCycle::from_map(FredholmMap::scalar(rect)))).index.scalar() == -2);

  Matrix not_odd = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(graded_index({BaseRing::complex(), 2, 1, {not_odd}}), PreconditionError);
}

TEST_CASE("essentially_unitarize clips the spectrum") {
  Matrix t = Matrix::Zero(1, 2);
  t(0, 0) = 2.0;
  const FredholmCycle c{BaseRing::complex(), 2, 1, {offdiag(t)}};
  const auto u = essentially_unitarize(c, 1.0);
  CHECK(u.warnings.empty());
  const auto spec = hermitian_spectrum(u.cycle.operators[0]);
  CHECK(spec.values(0) == doctest::Approx(-1.0));
  CHECK(std::abs(spec.values(1)) < 1e-14);
  CHECK(spec.values(2) == doctest::Approx(1.0));
  CHECK(graded_index(u.cycle).index == graded_index(c).index);

  const auto warned = essentially_unitarize(c, 3.0);
  CHECK(warned.warnings.size() == 1);
  CHECK_THROWS_AS(essentially_unitarize(c, 0.0), DomainError);
  const FredholmCycle zero{BaseRing::complex(), 1, 1, {Matrix::Zero(2, 2)}};
  CHECK(max_abs(essentially_unitarize(zero, 1.0).cycle.operators[0]) == 0.0);
}

TEST_CASE("spectral class") {
  const auto u = schwartz::SFunction::u();
  const auto zero = spectral_class(GradedMatrix(Matrix::Zero(3, 3), {1, 1, -1}), u, {1.0, 0.5});
  CHECK(zero.cls.scalar() == 1);
  for (const auto& row : zero.table) CHECK(row.norm == 0.0);

  Matrix d = Matrix::Zero(3, 3);
  d(0, 2) = d(2, 0) = 1.0;
  const auto gap = spectral_class(GradedMatrix(d, {1, 1, -1}), u, {1.0, 0.5, 0.25});
  CHECK(gap.cls.scalar() == 1);
  for (const auto& row : gap.table)
    CHECK(std::abs(row.norm - std::exp(-1.0 / (row.s * row.s))) < 1e-12);
}

TEST_CASE("Cayley transform examples") {
  const GradedMatrix zero(Matrix::Zero(2, 2), {1, -1});
  CHECK(max_abs(cayley(zero) + Matrix::Identity(2, 2)) < 1e-15);

  Matrix d = Matrix::Zero(2, 2);
  d(0, 1) = d(1, 0) = 1.0;
  const GradedMatrix dg(d, {1, -1});
  const Matrix u = cayley(dg);
  CHECK(max_abs(u - Complex(0, -1) * d) < 1e-15);
  CHECK(max_abs(inverse_cayley(u) - d) < 1e-12);
  const auto defects = cayley_defects(dg, u);
  CHECK(defects.unitary < 1e-15);
  CHECK(defects.graded < 1e-15);
  CHECK(defects.shifted_a0 < 1e-15);
  CHECK_THROWS_AS(inverse_cayley(Matrix::Identity(2, 2)), DomainError);
}

TEST_CASE("A_0 projection and the unitary retraction") {
  std::mt19937_64 rng(17);
  const GradedMatrix space(Matrix::Zero(4, 4), {1, 1, -1, -1}, RealForm{{1, 0, 2, 3}, {1, 1, 1, -1}});
  const Matrix x = project_a0(space, random_matrix(rng, 4, 4));
  CHECK(a0_defect(space, x) < 1e-14);
  CHECK(max_abs(project_a0(space, x) - x) < 1e-14);

  const Matrix a = Matrix::Identity(4, 4) + 0.4 / op_norm(x) * x;
  for (double t : {0.0, 0.5, 1.0})
    CHECK(a0_defect(space, unitary_retraction(a, t) - Matrix::Identity(4, 4)) < 1e-12);

  const Matrix w = random_matrix(rng, 3, 3).householderQr().householderQ();
  CHECK(max_abs(unitary_retraction(w, 0.5) - w) < 1e-12);
  CHECK(max_abs(unitary_retraction(2.0 * Matrix::Identity(3, 3), 1.0) - Matrix::Identity(3, 3)) < 1e-15);
  CHECK_THROWS_AS(unitary_retraction(Matrix::Zero(2, 2), 1.0), PreconditionError);
  CHECK_THROWS_AS(unitary_retraction(w, 1.5), DomainError);
}

TEST_CASE("rotation path is invertible for t > 0") {
  Matrix t = Matrix::Zero(1, 1);
  t(0, 0) = 0.5;
  const Matrix f = offdiag(t);
  for (int i = 1; i <= 10; ++i) {
    const double s = i / 10.0;
    CHECK(min_singular_value(rotation_path(f, s)) >= std::sin(std::numbers::pi * s / 2) - 1e-14);
  }
}
