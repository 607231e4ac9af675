#include "speck/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "speck/errors.hpp"
#include "speck/linalg.hpp"
#include "speck/repcalc.hpp"

namespace speck::clifford {

CliffordSignature::CliffordSignature(std::vector<int> squares_,
                                     std::vector<int> kappa_)
    : squares(std::move(squares_)), kappa(std::move(kappa_)) {
  validate();
}

CliffordSignature CliffordSignature::euclidean(int n) {
  return {std::vector<int>(static_cast<std::size_t>(n), 1),
          std::vector<int>(static_cast<std::size_t>(n), 1)};
}

CliffordSignature CliffordSignature::cl(int p, int q) {
  std::vector<int> kappa(static_cast<std::size_t>(p), -1);
  kappa.resize(static_cast<std::size_t>(p + q), 1);
  return {std::vector<int>(static_cast<std::size_t>(p + q), 1),
          std::move(kappa)};
}

CliffordSignature CliffordSignature::doubled(int n) {
  std::vector<int> squares(static_cast<std::size_t>(n), 1);
  squares.resize(static_cast<std::size_t>(2 * n), -1);
  return {std::move(squares),
          std::vector<int>(static_cast<std::size_t>(2 * n), 1)};
}

void CliffordSignature::validate() const {
  if (squares.size() != kappa.size())
    throw StructuralError("signature: squares and kappa lengths differ");
  if (squares.size() > static_cast<std::size_t>(kMaxGenerators))
    throw ResourceError("signature: too many generators");
  auto unit = [](int v) { return v == 1 || v == -1; };
  if (!std::all_of(squares.begin(), squares.end(), unit) ||
      !std::all_of(kappa.begin(), kappa.end(), unit))
    throw StructuralError("signature entries must be +-1");
}

Monomial Monomial::from_indices(std::span<const int> idx) {
  std::uint32_t mask = 0;
  int prev = -1;
  for (int i : idx) {
    if (i <= prev)
      throw StructuralError("monomial indices must be strictly increasing");
    if (i >= kMaxGenerators) throw StructuralError("monomial index too large");
    mask |= std::uint32_t{1} << i;
    prev = i;
  }
  return Monomial(mask);
}

int Monomial::length() const { return std::popcount(mask_); }

std::vector<int> Monomial::indices() const {
  std::vector<int> out;
  for (std::uint32_t m = mask_; m != 0; m &= m - 1)
    out.push_back(std::countr_zero(m));
  return out;
}

bool Monomial::valid_for(const CliffordSignature& sig) const {
  return (mask_ >> sig.generators()) == 0;
}

MonomialProduct multiply(const CliffordSignature& sig, Monomial a,
                         Monomial b) {
  // Moving each index j of b leftwards past the indices of a above it.
  int swaps = 0;
  for (std::uint32_t m = b.mask(); m != 0; m &= m - 1) {
    const int j = std::countr_zero(m);
    swaps += std::popcount(a.mask() >> (j + 1));
  }
  int sign = (swaps % 2 == 0) ? 1 : -1;
  for (std::uint32_t m = a.mask() & b.mask(); m != 0; m &= m - 1)
    sign *= sig.squares[static_cast<std::size_t>(std::countr_zero(m))];
  return {sign, Monomial(a.mask() ^ b.mask())};
}

CliffordElement::CliffordElement(CliffordSignature sig) : sig_(std::move(sig)) {
  sig_.validate();
}

CliffordElement::CliffordElement(CliffordSignature sig, Coefficients coeffs)
    : sig_(std::move(sig)), coeffs_(std::move(coeffs)) {
  sig_.validate();
  for (const auto& [m, c] : coeffs_)
    if (!m.valid_for(sig_))
      throw StructuralError("monomial uses a generator outside the algebra");
  canonicalize();
}

CliffordElement CliffordElement::unit(const CliffordSignature& sig) {
  return scalar(sig, 1.0);
}

CliffordElement CliffordElement::scalar(const CliffordSignature& sig,
                                        Complex c) {
  return monomial(sig, Monomial{}, c);
}

CliffordElement CliffordElement::generator(const CliffordSignature& sig,
                                           int i) {
  if (i < 0 || i >= sig.generators())
    throw StructuralError("generator index out of range");
  return monomial(sig, Monomial(std::uint32_t{1} << i));
}

CliffordElement CliffordElement::monomial(const CliffordSignature& sig,
                                          Monomial m, Complex c) {
  return CliffordElement(sig, Coefficients{{m, c}});
}

Complex CliffordElement::coefficient(Monomial m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? Complex{} : it->second;
}

void CliffordElement::canonicalize() {
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == Complex{}; });
}

double CliffordElement::distance(const CliffordElement& other) const {
  if (sig_ != other.sig_)
    throw StructuralError("distance between elements of different algebras");
  double d = 0.0;
  for (const auto& [m, c] : (*this - other).coeffs_) d = std::max(d, std::abs(c));
  return d;
}

namespace {

void require_same(const CliffordElement& x, const CliffordElement& y) {
  if (x.signature() != y.signature())
    throw StructuralError("operands belong to different Clifford algebras");
}

template <class F>
CliffordElement map_coefficients(const CliffordElement& x, F f) {
  CliffordElement::Coefficients out;
  for (const auto& [m, c] : x.coefficients()) out.emplace(m, f(m, c));
  return CliffordElement(x.signature(), std::move(out));
}

int kappa_sign(const CliffordSignature& sig, Monomial m) {
  int s = 1;
  for (int i : m.indices()) s *= sig.kappa[static_cast<std::size_t>(i)];
  return s;
}

int square_sign(const CliffordSignature& sig, Monomial m) {
  int s = 1;
  for (int i : m.indices()) s *= sig.squares[static_cast<std::size_t>(i)];
  return s;
}

}  // namespace

CliffordElement operator+(const CliffordElement& x, const CliffordElement& y) {
  require_same(x, y);
  auto coeffs = x.coeffs_;
  for (const auto& [m, c] : y.coeffs_) coeffs[m] += c;
  return CliffordElement(x.sig_, std::move(coeffs));
}

CliffordElement operator-(const CliffordElement& x, const CliffordElement& y) {
  return x + Complex(-1.0) * y;
}

CliffordElement operator*(Complex c, const CliffordElement& x) {
  return map_coefficients(x, [c](Monomial, Complex v) { return c * v; });
}

CliffordElement operator*(const CliffordElement& x, const CliffordElement& y) {
  require_same(x, y);
  CliffordElement::Coefficients out;
  for (const auto& [a, ca] : x.coeffs_)
    for (const auto& [b, cb] : y.coeffs_) {
      const auto [sign, m] = multiply(x.sig_, a, b);
      out[m] += static_cast<double>(sign) * ca * cb;
    }
  return CliffordElement(x.sig_, std::move(out));
}

CliffordElement product(const CliffordElement& x, const CliffordElement& y) {
  return x * y;
}

CliffordElement grading(const CliffordElement& x) {
  return map_coefficients(x, [](Monomial m, Complex c) {
    return m.length() % 2 == 0 ? c : -c;
  });
}

CliffordElement real_involution(const CliffordElement& x) {
  const auto& sig = x.signature();
  return map_coefficients(x, [&sig](Monomial m, Complex c) {
    return static_cast<double>(kappa_sign(sig, m)) * std::conj(c);
  });
}

CliffordElement adjoint(const CliffordElement& x) {
  const auto& sig = x.signature();
  return map_coefficients(x, [&sig](Monomial m, Complex c) {
    const int k = m.length();
    const int reversal = ((k * (k - 1) / 2) % 2 == 0) ? 1 : -1;
    return static_cast<double>(reversal * square_sign(sig, m)) * std::conj(c);
  });
}

CliffordSignature direct_sum(const CliffordSignature& a,
                             const CliffordSignature& b) {
  auto squares = a.squares;
  squares.insert(squares.end(), b.squares.begin(), b.squares.end());
  auto kappa = a.kappa;
  kappa.insert(kappa.end(), b.kappa.begin(), b.kappa.end());
  return {std::move(squares), std::move(kappa)};
}

CliffordElement tensor_embed(const CliffordElement& x,
                             const CliffordElement& y) {
  const auto sig = direct_sum(x.signature(), y.signature());
  const int shift = x.signature().generators();
  // e_I (x) e_J -> e_I e_{J+shift}; the concatenated list is already
  // increasing, so the embedding of basis tensors carries no sign.
  CliffordElement::Coefficients out;
  for (const auto& [a, ca] : x.coefficients())
    for (const auto& [b, cb] : y.coefficients())
      out[Monomial(a.mask() | (b.mask() << shift))] += ca * cb;
  return CliffordElement(sig, std::move(out));
}

double norm(const CliffordElement& x) {
  const auto rep = repcalc::signature_rep(x.signature());
  return op_norm(rep.image(x));
}

}  // namespace speck::clifford
