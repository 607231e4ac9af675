#include <doctest.h>

#include <random>

#include "speck/clifford.hpp"
#include "speck/errors.hpp"

using namespace speck;
using namespace speck::clifford;

namespace {

// Oracle: concatenate index lists, bubble-sort counting swaps, then cancel
// adjacent equal pairs into their squares.
std::pair<int, std::vector<int>> bubble_product(const CliffordSignature& sig,
                                                std::vector<int> a,
                                                const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  int sign = 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j + 1 < a.size() - i; ++j)
      if (a[j] > a[j + 1]) {
        std::swap(a[j], a[j + 1]);
        sign = -sign;
      }
  std::vector<int> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i + 1 < a.size() && a[i] == a[i + 1]) {
      sign *= sig.squares[static_cast<std::size_t>(a[i])];
      ++i;
    } else {
      out.push_back(a[i]);
    }
  }
  return {sign, out};
}

CliffordSignature signature_from_code(int n, int code) {
  std::vector<int> sq(static_cast<std::size_t>(n)), kp(sq.size(), 1);
  for (int i = 0; i < n; ++i) sq[static_cast<std::size_t>(i)] = (code >> i & 1) ? -1 : 1;
  return {sq, kp};
}

CliffordElement random_element(const CliffordSignature& sig, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  CliffordElement::Coefficients c;
  for (std::uint32_t m = 0; m < sig.basis_size(); ++m) c[Monomial(m)] = {d(rng), d(rng)};
  return {sig, c};
}

}  // namespace

TEST_CASE("monomial products match the bubble-sort oracle for every signature up to 5 generators") {
  for (int n = 0; n <= 5; ++n)
    for (int code = 0; code < (1 << n); ++code) {
      const auto sig = signature_from_code(n, code);
      for (std::uint32_t a = 0; a < sig.basis_size(); ++a)
        for (std::uint32_t b = 0; b < sig.basis_size(); ++b) {
          const auto got = multiply(sig, Monomial(a), Monomial(b));
          const auto [sign, idx] = bubble_product(sig, Monomial(a).indices(), Monomial(b).indices());
          REQUIRE(got.sign == sign);
          REQUIRE(got.monomial == Monomial::from_indices(idx));
        }
    }
}

TEST_CASE("product is associative on monomials, exhaustively for n <= 5") {
  for (int n = 1; n <= 5; ++n) {
    const auto sig = signature_from_code(n, (n * 7) % (1 << n));
    const auto size = static_cast<std::uint32_t>(sig.basis_size());
    for (std::uint32_t a = 0; a < size; ++a)
      for (std::uint32_t b = 0; b < size; ++b)
        for (std::uint32_t c = 0; c < size; ++c) {
          const auto ab = multiply(sig, Monomial(a), Monomial(b));
          const auto ab_c = multiply(sig, ab.monomial, Monomial(c));
          const auto bc = multiply(sig, Monomial(b), Monomial(c));
          const auto a_bc = multiply(sig, Monomial(a), bc.monomial);
          REQUIRE(ab.sign * ab_c.sign == bc.sign * a_bc.sign);
          REQUIRE(ab_c.monomial == a_bc.monomial);
        }
  }
}

TEST_CASE("generators square to Q and anticommute") {
  const CliffordSignature sig({1, -1, 1}, {1, 1, -1});
  for (int i = 0; i < 3; ++i) {
    const auto gi = CliffordElement::generator(sig, i);
    CHECK((gi * gi).distance(CliffordElement::scalar(sig, sig.squares[static_cast<std::size_t>(i)])) == 0.0);
    for (int j = i + 1; j < 3; ++j) {
      const auto gj = CliffordElement::generator(sig, j);
      CHECK((gi * gj + gj * gi).is_zero());
    }
  }
}

TEST_CASE("adjoint is a conjugate-linear anti-automorphism, grading and real involution are automorphisms") {
  std::mt19937_64 rng(3);
  const CliffordSignature sig({1, -1, -1, 1}, {-1, 1, -1, 1});
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_element(sig, rng), y = random_element(sig, rng);
    CHECK(adjoint(x * y).distance(adjoint(y) * adjoint(x)) < 1e-12);
    CHECK(adjoint(adjoint(x)).distance(x) == 0.0);
    CHECK(grading(x * y).distance(grading(x) * grading(y)) < 1e-12);
    CHECK(real_involution(x * y).distance(real_involution(x) * real_involution(y)) < 1e-12);
    CHECK(real_involution(grading(x)).distance(grading(real_involution(x))) == 0.0);
    CHECK(adjoint(Complex(0, 1) * x).distance(Complex(0, -1) * adjoint(x)) < 1e-15);
  }
}

TEST_CASE("C*-identity holds in the exterior norm") {
  std::mt19937_64 rng(11);
  const CliffordSignature sig({1, -1, 1}, {1, 1, 1});
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_element(sig, rng);
    x = Complex(1.0 / norm(x)) * x;
    CHECK(std::abs(norm(adjoint(x) * x) - 1.0) < 1e-12);
  }
}

TEST_CASE("tensor embedding is multiplicative for even left factors") {
  const CliffordSignature a({1}, {1}), b({-1, 1}, {1, 1});
  const auto x = CliffordElement::unit(a) + CliffordElement::monomial(a, Monomial(0), 2.0);
  const auto y = CliffordElement::generator(b, 0) + CliffordElement::generator(b, 1);
  const auto e1 = tensor_embed(x, CliffordElement::unit(b));
  const auto e2 = tensor_embed(CliffordElement::unit(a), y);
  CHECK(tensor_embed(x, y).distance(e1 * e2) < 1e-15);
  CHECK(tensor_embed(x, y).signature() == direct_sum(a, b));
}

TEST_CASE("structural errors") {
  CHECK_THROWS_AS(CliffordSignature({1, 2}, {1, 1}).validate(), StructuralError);
  CHECK_THROWS_AS(Monomial::from_indices({2, 1}), StructuralError);
  const auto x = CliffordElement::generator(CliffordSignature::euclidean(2), 0);
  const auto y = CliffordElement::generator(CliffordSignature::euclidean(3), 0);
  CHECK_THROWS_AS(product(x, y), StructuralError);
}
