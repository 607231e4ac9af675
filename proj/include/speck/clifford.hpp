#pragma once

// Exact Clifford arithmetic over diagonal quadratic forms.
//
// A CliffordSignature fixes n generators e_0..e_{n-1} with e_i^2 = squares[i]
// and the Real involution kappa(e_i) = kappa[i] e_i. Elements of the
// complexified algebra are sparse complex combinations of monomials
// e_{i_1} ... e_{i_p} with i_1 < ... < i_p. Structure constants are exact
// +-1; only the coefficients are floating point.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

namespace speck::clifford {

using Complex = std::complex<double>;

inline constexpr int kMaxGenerators = 16;

struct CliffordSignature {
  std::vector<int> squares;
  std::vector<int> kappa;

  CliffordSignature() = default;
  CliffordSignature(std::vector<int> squares_, std::vector<int> kappa_);

  /// Cliff(R^n) with the Euclidean form and trivial involution.
  static CliffordSignature euclidean(int n);
  /// Cl_{p,q}: p + q generators squaring to +1, kappa = -1 on the first p.
  static CliffordSignature cl(int p, int q);
  /// Cliff(R^n + R^n, |.|^2 + -|.|^2): n generators squaring to +1, then n
  /// squaring to -1, trivial involution.
  static CliffordSignature doubled(int n);

  int generators() const { return static_cast<int>(squares.size()); }
  std::size_t basis_size() const { return std::size_t{1} << generators(); }

  /// Throws StructuralError on mismatched lengths or entries outside {+-1}.
  void validate() const;

  friend bool operator==(const CliffordSignature&,
                         const CliffordSignature&) = default;
};

/// A basis monomial, stored as the bitmask of its (strictly increasing)
/// generator indices. The empty monomial is the unit.
class Monomial {
 public:
  constexpr Monomial() = default;
  constexpr explicit Monomial(std::uint32_t mask) : mask_(mask) {}

  /// Throws StructuralError unless `idx` is strictly increasing and
  /// nonnegative.
  static Monomial from_indices(std::span<const int> idx);
  static Monomial from_indices(std::initializer_list<int> idx) {
    return from_indices(std::span<const int>(idx.begin(), idx.size()));
  }

  std::uint32_t mask() const { return mask_; }
  int length() const;
  std::vector<int> indices() const;
  bool valid_for(const CliffordSignature& sig) const;

  friend constexpr auto operator<=>(Monomial, Monomial) = default;

 private:
  std::uint32_t mask_ = 0;
};

/// Sign and monomial of the product a * b: reorder the concatenated index
/// list, one -1 per transposition, and collapse each repeated index i to
/// squares[i].
struct MonomialProduct {
  int sign;
  Monomial monomial;
};
MonomialProduct multiply(const CliffordSignature& sig, Monomial a, Monomial b);

class CliffordElement {
 public:
  using Coefficients = std::map<Monomial, Complex>;

  CliffordElement() = default;
  explicit CliffordElement(CliffordSignature sig);
  CliffordElement(CliffordSignature sig, Coefficients coeffs);

  static CliffordElement unit(const CliffordSignature& sig);
  static CliffordElement scalar(const CliffordSignature& sig, Complex c);
  static CliffordElement generator(const CliffordSignature& sig, int i);
  static CliffordElement monomial(const CliffordSignature& sig, Monomial m,
                                  Complex c = 1.0);

  const CliffordSignature& signature() const { return sig_; }
  const Coefficients& coefficients() const { return coeffs_; }
  Complex coefficient(Monomial m) const;
  bool is_zero() const { return coeffs_.empty(); }

  /// Max-abs coefficient difference; both operands must share a signature.
  double distance(const CliffordElement& other) const;

  friend CliffordElement operator+(const CliffordElement& x,
                                   const CliffordElement& y);
  friend CliffordElement operator-(const CliffordElement& x,
                                   const CliffordElement& y);
  friend CliffordElement operator*(Complex c, const CliffordElement& x);
  friend CliffordElement operator*(const CliffordElement& x,
                                   const CliffordElement& y);

 private:
  void canonicalize();

  CliffordSignature sig_;
  Coefficients coeffs_;
};

/// Throws StructuralError if the signatures differ.
CliffordElement product(const CliffordElement& x, const CliffordElement& y);
/// (-1)^length on each monomial.
CliffordElement grading(const CliffordElement& x);
/// Conjugate coefficients, then multiply each monomial by prod kappa[i].
CliffordElement real_involution(const CliffordElement& x);
/// Reversal sign (-1)^{k(k-1)/2}, conjugation, and prod squares[i]: generators
/// with Q = +1 are self-adjoint, those with Q = -1 skew-adjoint.
CliffordElement adjoint(const CliffordElement& x);
/// Image of x (graded-tensor) y under v1 + v2 -> v1 (x) 1 + 1 (x) v2, landing
/// in the algebra of the concatenated signature.
CliffordElement tensor_embed(const CliffordElement& x,
                             const CliffordElement& y);
CliffordSignature direct_sum(const CliffordSignature& a,
                             const CliffordSignature& b);
/// Operator norm of the image under the exterior representation.
double norm(const CliffordElement& x);

}  // namespace speck::clifford
