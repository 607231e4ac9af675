#pragma once

// Spectral truncation of H(V) = L^2(V, Cliff^C(V)) for V = R^n in the
// Hermite-function basis.
//
// Basis order: Hermite multi-index (k_0, ..., k_{n-1}), k_0 slowest, then
// the Clifford monomial mask (fastest). Position and derivative are exactly
// tridiagonal here, so the linear operators C, D and B = C + D are plain
// truncations. Their truncations couple level cutoff-1 to the missing level
// cutoff, so:
//  * exact identities are stated on the interior (all k_i < cutoff - margin);
//  * squares C^2, D^2, B^2 used for spectra and exponentials are Galerkin
//    compressions: assembled at cutoff + 1, squared, then restricted.

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "speck/graded_matrix.hpp"
#include "speck/linalg.hpp"
#include "speck/schwartz.hpp"

namespace speck::oscillator {

struct Truncation {
  int dim = 1;
  int cutoff = 128;
  int margin = 4;

  /// Throws StructuralError unless dim >= 1, cutoff >= 8, margin >= 2 and
  /// margin < cutoff.
  void validate() const;
  Eigen::Index clifford_size() const { return Eigen::Index{1} << dim; }
  Eigen::Index hermite_size() const;
  Eigen::Index size() const { return hermite_size() * clifford_size(); }
  Truncation enlarged() const { return {dim, cutoff + 1, margin}; }

  friend auto operator<=>(const Truncation&, const Truncation&) = default;
};

enum class Kind { clifford, dirac, harmonic, number };

struct OscOperator {
  Truncation truncation;
  SparseReal matrix;

  RealMatrix dense() const { return RealMatrix(matrix); }
  /// Clifford-monomial parity per basis index.
  std::vector<int> grading() const;
  GradedMatrix graded() const;
};

/// <psi_m, x psi_k> in the normalized Hermite basis, N x N.
RealMatrix position_matrix(int n);
/// <psi_m, psi_k'>; skew-symmetric.
RealMatrix derivative_matrix(int n);

/// C = sum_i x_i (x) e_i (left Clifford multiplication).
OscOperator clifford_operator(const Truncation& t);
/// D = sum_i d/dx_i (x) ehat_i, ehat_i(x) = (-1)^{deg x} x e_i.
OscOperator dirac_operator(const Truncation& t);
/// B = C + D.
OscOperator harmonic_operator(const Truncation& t);
/// 1 (x) N with N the Clifford number operator.
OscOperator number_operator(const Truncation& t);
OscOperator build(Kind kind, const Truncation& t);

/// P A^2 P where A is assembled at cutoff + 1 and P keeps the levels < cutoff.
OscOperator compressed_square(Kind kind, const Truncation& t);

/// Basis indices whose Hermite levels are all < cutoff - margin.
std::vector<Eigen::Index> interior_indices(const Truncation& t);
/// Hermite multi-index and monomial of a basis index.
std::pair<std::vector<int>, int> decode_index(const Truncation& t,
                                              Eigen::Index idx);
/// ||P A P|| over the interior indices.
double interior_norm(const RealMatrix& a, const Truncation& t);
double interior_norm(const Matrix& a, const Truncation& t);
double interior_max_abs(const RealMatrix& a, const Truncation& t);

struct SquareIdentity {
  /// max |P (B^2 - C^2 - D^2 - N) P| with truncated products.
  double residual = 0.0;
  double comm_n_c2 = 0.0;
  double comm_n_d2 = 0.0;
  /// max |P (B^2 - C^2 - D^2 - 1 (x) N_rep) P| with N_rep taken from
  /// repcalc::number_operator.
  double number_rep_residual = 0.0;
};
SquareIdentity square_identity_residual(const Truncation& t);

/// Lowest k eigenvalues of the compressed B^2, ascending.
std::vector<double> oscillator_spectrum(const Truncation& t, int k);
/// |<psi_0 (x) 1, kernel vector>|^2 for the lowest eigenvector of B^2.
double ground_state_overlap(const Truncation& t);

struct LadderResiduals {
  double h_minus_rl_minus_i = 0.0;
  double h_minus_lr_plus_i = 0.0;
  /// Interior residual of H R^m - R^m H - 2m R^m for m = 1..4.
  std::array<double, 4> h_r_power{};
  /// max_k |H psi_k - (2k+1) psi_k| over interior k.
  double eigen_law = 0.0;
  double l_psi0 = 0.0;
};
/// Scalar ladder algebra on L^2(R): L = x + d/dx, R = x - d/dx,
/// H = x^2 - d^2/dx^2. Requires t.dim == 1.
LadderResiduals ladder_check(const Truncation& t);

struct MehlerParameters {
  double s1;
  double s2;
};
/// s1 = (cosh 2s - 1) / sinh 2s, s2 = sinh(2s) / 2. Throws DomainError for
/// s <= 0.
MehlerParameters mehler_parameters(double s);
/// The same pair evaluated at s = t^{-2}.
MehlerParameters tau_parameters(double t);

enum class MehlerOrder { c_outer, d_outer };

/// Orthonormal basis of the lowest k eigenvectors of the compressed B^2,
/// extended to complete the last degenerate cluster.
RealMatrix low_energy_basis(const Truncation& t, int k);

/// Orthonormal basis of the spectral subspace {compressed B^2 <= energy}.
RealMatrix energy_window(const Truncation& t, double energy);

/// ||P_K (e^{-s(C^2+D^2)} - e^{-s1 X^2/2} e^{-s2 Y^2} e^{-s1 X^2/2}) P_K||
/// with (X,Y) = (C,D) for c_outer and (D,C) for d_outer.
double mehler_residual(const Truncation& t, double s, int k,
                       MehlerOrder order = MehlerOrder::c_outer);

/// Eigendecompositions of truncated operators, shared across parameter
/// sweeps. Reads take a shared lock; the first request for a key computes
/// and publishes it under an exclusive lock.
class SpectralCache {
 public:
  static SpectralCache& global();

  std::shared_ptr<const SymmetricSpectrum> linear(Kind kind,
                                                  const Truncation& t);
  std::shared_ptr<const SymmetricSpectrum> squared(Kind kind,
                                                   const Truncation& t);
  void clear();
  std::size_t size() const;

 private:
  using Key = std::tuple<int, bool, int, int, int>;
  std::shared_ptr<const SymmetricSpectrum> get(Kind kind, bool squared,
                                               const Truncation& t);

  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const SymmetricSpectrum>> entries_;
};

/// f(A / scale) for A one of the truncated linear operators.
Matrix scaled_calculus(Kind kind, const schwartz::SFunction& f, double scale,
                       const Truncation& t);

struct DecayRow {
  double t;
  double norm;
};
/// Interior norms of the graded commutator [f(D/t), f(C/t)] for each t.
std::vector<DecayRow> commutator_decay(const schwartz::SFunction& f,
                                       std::span<const double> t_grid,
                                       const Truncation& trunc);

}  // namespace speck::oscillator
