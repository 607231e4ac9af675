#include <doctest.h>

#include <cmath>
#include <numbers>

#include "speck/errors.hpp"
#include "speck/oscillator.hpp"

using namespace speck;
using namespace speck::oscillator;

namespace {

// Hermite functions sampled on a uniform grid via the three-term recurrence.
struct HermiteGrid {
  double h = 0.005;
  std::vector<double> x;
  std::vector<std::vector<double>> psi;

  explicit HermiteGrid(int levels) {
    for (double t = -15.0; t <= 15.0 + 1e-12; t += h) x.push_back(t);
    psi.assign(static_cast<std::size_t>(levels), std::vector<double>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
      psi[0][i] = std::pow(std::numbers::pi, -0.25) * std::exp(-x[i] * x[i] / 2);
      if (levels > 1) psi[1][i] = std::sqrt(2.0) * x[i] * psi[0][i];
      for (int k = 1; k + 1 < levels; ++k)
        psi[k + 1][i] = std::sqrt(2.0 / (k + 1)) * x[i] * psi[k][i] -
                        std::sqrt(double(k) / (k + 1)) * psi[k - 1][i];
    }
  }
  // Trapezoid rule; spectrally accurate for these rapidly decaying integrands.
  template <class F>
  double integrate(F f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += f(i);
    return s * h;
  }
};

}  // namespace

TEST_CASE("position and derivative matrices match quadrature of Hermite functions") {
  const int n = 16;
  const HermiteGrid g(n + 1);
  const RealMatrix x = position_matrix(n);
  const RealMatrix d = derivative_matrix(n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) {
      const double xq = g.integrate([&](std::size_t i) { return g.psi[m][i] * g.x[i] * g.psi[k][i]; });
      // psi_k' = -x psi_k + sqrt(2k) psi_{k-1}
      const double dq = g.integrate([&](std::size_t i) {
        const double prev = k > 0 ? std::sqrt(2.0 * k) * g.psi[k - 1][i] : 0.0;
        return g.psi[m][i] * (-g.x[i] * g.psi[k][i] + prev);
      });
      CHECK(x(m, k) == doctest::Approx(xq).epsilon(1e-10).scale(1.0));
      CHECK(d(m, k) == doctest::Approx(dq).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("truncation validation") {
  CHECK_THROWS_AS((Truncation{0, 64, 4}.validate()), StructuralError);
  CHECK_THROWS_AS((Truncation{1, 4, 2}.validate()), StructuralError);
  CHECK_THROWS_AS((Truncation{1, 64, 1}.validate()), StructuralError);
  CHECK_THROWS_AS((Truncation{5, 16, 4}.validate()), ResourceError);
  CHECK(Truncation{2, 10, 2}.size() == 400);
}

TEST_CASE("operators are symmetric and odd") {
  const Truncation t{2, 10, 2};
  for (auto op : {clifford_operator(t), dirac_operator(t), harmonic_operator(t)}) {
    const RealMatrix m = op.dense();
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(op.graded().even_part_norm() == 0.0);
  }
}

TEST_CASE("B^2 = C^2 + D^2 + N on the interior") {
  for (int dim : {1, 2}) {
    const auto r = square_identity_residual({dim, 12, 3});
    CHECK(r.residual < 1e-12);
    CHECK(r.number_rep_residual < 1e-12);
    CHECK(r.comm_n_c2 < 1e-12);
    CHECK(r.comm_n_d2 < 1e-12);
  }
}

TEST_CASE("naive truncated square has a spurious kernel vector, the compressed one does not") {
  const Truncation t{1, 32, 4};
  const RealMatrix b = harmonic_operator(t).dense();
  const auto naive = symmetric_spectrum(RealMatrix(b * b));
  CHECK(std::abs(naive.values(1)) < 1e-10);  // psi_{N-1} (x) e
  const auto spec = oscillator_spectrum(t, 4);
  CHECK(spec[0] == doctest::Approx(0.0).scale(1.0));
  CHECK(spec[1] == doctest::Approx(2.0));
  CHECK(spec[2] == doctest::Approx(2.0));
  CHECK(spec[3] == doctest::Approx(4.0));
}

TEST_CASE("two-dimensional spectrum and ground state") {
  const Truncation t{2, 12, 2};
  const auto spec = oscillator_spectrum(t, 5);
  // Energies 2m with multiplicities 1, 4, ... for n = 2.
  CHECK(spec[0] == doctest::Approx(0.0).scale(1.0));
  for (int i = 1; i < 5; ++i) CHECK(spec[i] == doctest::Approx(2.0));
  CHECK(ground_state_overlap(t) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ladder identities") {
  const auto r = ladder_check({1, 40, 4});
  CHECK(r.h_minus_rl_minus_i < 1e-12);
  CHECK(r.h_minus_lr_plus_i < 1e-12);
  for (double v : r.h_r_power) CHECK(v < 1e-10);
  CHECK(r.eigen_law < 1e-12);
  CHECK(r.l_psi0 < 1e-15);
  CHECK_THROWS_AS(ladder_check({2, 16, 4}), UnsupportedError);
}

TEST_CASE("Mehler parameters") {
  const auto [s1, s2] = mehler_parameters(0.5);
  CHECK(s1 == doctest::Approx(std::tanh(0.5)));
  CHECK(s2 == doctest::Approx(std::sinh(1.0) / 2));
  CHECK_THROWS_AS(mehler_parameters(0.0), DomainError);
  CHECK_THROWS_AS(mehler_parameters(-1.0), DomainError);
  const auto tau = tau_parameters(2.0);
  CHECK(tau.s1 == doctest::Approx(mehler_parameters(0.25).s1));
}

TEST_CASE("scalar limits behind the t -> infinity replacement of tau_1, tau_2 by t^-2") {
  // sup_x |e^{-tau x^2/2} - e^{-x^2/(2t^2)}| and the same weighted by x/t.
  auto sup = [](double t, bool weighted, bool first) {
    const auto [t1, t2] = tau_parameters(t);
    const double tau = first ? t1 : t2;
    double worst = 0.0;
    for (double x = -60.0 * t; x <= 60.0 * t; x += t / 200.0) {
      double d = std::exp(-0.5 * tau * x * x) - std::exp(-0.5 * x * x / (t * t));
      if (weighted) d *= x / t;
      worst = std::max(worst, std::abs(d));
    }
    return worst;
  };
  for (bool weighted : {false, true})
    for (bool first : {true, false}) {
      const double a = sup(4.0, weighted, first), b = sup(16.0, weighted, first),
                   c = sup(64.0, weighted, first);
      CHECK(b < a);
      CHECK(c < b);
      CHECK(c < 1e-3);
    }
}

TEST_CASE("Mehler residual converges to round-off on the low-energy subspace") {
  const Truncation coarse{1, 32, 4}, t{1, 48, 4};
  for (double s : {0.25, 1.0})
    for (auto order : {MehlerOrder::c_outer, MehlerOrder::d_outer})
      CHECK(mehler_residual(t, s, 16, order) < 1e-13);
  // At s = 1 the coarse cutoff still shows truncation error.
  CHECK(mehler_residual(coarse, 1.0, 16) > 1e3 * mehler_residual(t, 1.0, 16));
  // The degenerate cluster at the cut is completed.
  CHECK(low_energy_basis(t, 2).cols() == 3);
}

TEST_CASE("spectral cache reuses entries") {
  auto& cache = SpectralCache::global();
  cache.clear();
  const Truncation t{1, 16, 2};
  const auto a = cache.linear(Kind::dirac, t);
  const auto b = cache.linear(Kind::dirac, t);
  CHECK(a.get() == b.get());
  cache.squared(Kind::dirac, t);
  CHECK(cache.size() == 2);
  cache.clear();
  CHECK(cache.size() == 0);
}

TEST_CASE("commutator decay") {
  const Truncation t{1, 64, 4};
  const std::vector<double> grid{1, 2, 4};
  const auto rows = commutator_decay(schwartz::SFunction::u(), grid, t);
  CHECK(rows[1].norm < rows[0].norm);
  CHECK(rows[2].norm < rows[1].norm);
  CHECK_THROWS_AS(commutator_decay(schwartz::SFunction::u() + schwartz::SFunction::v(), grid, t),
                  DecomposeFirstError);
}
