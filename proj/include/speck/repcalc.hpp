#pragma once

// Matrix representations of Clifford algebras on exterior algebras, the
// left/right regular actions underlying Cliff^C(R^n), the number operator,
// and explicit matrix models for the periodicity isomorphisms.
//
// Lambda^* R^n and Cliff(R^n) share one basis indexing: the subset
// {i_1 < ... < i_p} sits at index sum 2^{i_k}.

#include <optional>
#include <utility>
#include <vector>

#include "speck/clifford.hpp"
#include "speck/graded_matrix.hpp"
#include "speck/linalg.hpp"

namespace speck::repcalc {

using clifford::CliffordElement;
using clifford::CliffordSignature;

inline constexpr int kMaxExteriorDegree = 8;

struct Representation {
  CliffordSignature signature;
  /// One image per generator.
  std::vector<Matrix> images;
  /// Hermitian involution implementing the grading; the generators are odd.
  Matrix parity;
  /// Real structure of the target, when the model carries one.
  std::optional<RealForm> real_form;

  int dim() const { return static_cast<int>(parity.rows()); }
  Matrix monomial_image(clifford::Monomial m) const;
  Matrix image(const CliffordElement& x) const;
  /// Images of all 2^n monomials, in mask order.
  std::vector<Matrix> monomial_images() const;
  /// Generator i as a GradedMatrix; requires a basis-diagonal parity.
  GradedMatrix graded_image(int i) const;
};

/// ext_v on Lambda^* R^n.
RealMatrix exterior_multiplication(std::span<const double> v);
/// ins_L on Lambda^* R^n for L = <l, .>.
RealMatrix interior_multiplication(std::span<const double> l);
/// gamma(v, w) = ext_{v+w} + ins_{<v-w, .>}.
RealMatrix gamma(std::span<const double> v, std::span<const double> w);

/// Cliff(R^n + R^n, +|.|^2 + -|.|^2) on Lambda^* R^n: generator i < n maps to
/// gamma(e_i, 0), generator n + i to gamma(0, e_i). Throws ResourceError for
/// n > 8.
Representation exterior_rep(int n);
/// Cliff(R^n) on Lambda^* R^n via c(v) = ext_v + ins_{<v, .>}.
Representation c_rep(int n);
/// Faithful *-representation of an arbitrary diagonal signature on
/// Lambda^* R^n: Q(e_i) = +1 -> ext_i + ins_i, Q(e_i) = -1 -> ext_i - ins_i.
Representation signature_rep(const CliffordSignature& sig);

/// x -> e_i x on the 2^n-dimensional space underlying Cliff^C(sig).
RealMatrix left_multiplication(const CliffordSignature& sig, int i);
/// x -> (-1)^{deg x} x e_i.
RealMatrix signed_right_multiplication(const CliffordSignature& sig, int i);

/// N = sum_i ehat_i e_i on Cliff^C(R^n), graded by monomial parity.
GradedMatrix number_operator(int n);

/// Supported models: (2,0), (8,0) and (n,n) for 1 <= n <= 4.
Representation matrix_model(int p, int q);

/// Relation/rank evidence that a representation is an isomorphism onto a full
/// matrix algebra.
struct ModelCertificate {
  int p = 0;
  int q = 0;
  int dim = 0;
  /// max |g_i g_j + g_j g_i - 2 delta_ij squares[i] I|.
  double relation_residual = 0.0;
  /// Relations hold entrywise with no rounding at all.
  bool relations_exact = false;
  /// max |Gamma g_i + g_i Gamma|.
  double odd_residual = 0.0;
  /// max |g_i^* - squares[i] g_i|.
  double adjoint_residual = 0.0;
  int span_rank = 0;
  int target_rank = 0;
  /// max |tau(g_i) - kappa[i] g_i|; absent when the model has no real form.
  std::optional<double> real_residual;

  bool passed(double tol = 1e-12) const;
};
ModelCertificate certify(const Representation& rep, int p, int q);

}  // namespace speck::repcalc
