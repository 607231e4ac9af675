#pragma once

// Finite-dimensional Fredholm picture of K_0 over C and over C(X) for a
// finite set X: tamings and index, graded cycles, essentially unitary
// cycles, spectral classes, Cayley transform and the unitary retraction.
//
// Over C(X) everything is per-point data; K_0 classes are integer vectors
// indexed by the points.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "speck/graded_matrix.hpp"
#include "speck/linalg.hpp"
#include "speck/schwartz.hpp"

namespace speck::fredholm {

struct BaseRing {
  enum class Kind { complex, functions };
  Kind kind = Kind::complex;
  int points = 1;

  static BaseRing complex() { return {}; }
  static BaseRing functions(int x) { return {Kind::functions, x}; }
  /// Throws StructuralError for a function ring with no points or a
  /// complex ring with more than one.
  void validate() const;
  friend bool operator==(const BaseRing&, const BaseRing&) = default;
};

struct K0Class {
  BaseRing ring;
  std::vector<long> values;

  static K0Class zero(const BaseRing& ring);
  /// The single value; throws StructuralError over C(X) with |X| > 1.
  long scalar() const;
  std::string to_string() const;

  friend K0Class operator+(const K0Class& a, const K0Class& b);
  friend K0Class operator-(const K0Class& a);
  friend bool operator==(const K0Class&, const K0Class&) = default;
};

/// F: A^k -> A^m as one m x k block per point.
struct FredholmMap {
  BaseRing ring;
  std::vector<Matrix> blocks;

  static FredholmMap scalar(Matrix m);
  /// Throws StructuralError for missing blocks or mismatched shapes.
  void validate() const;
  Eigen::Index rows() const { return blocks.front().rows(); }
  Eigen::Index cols() const { return blocks.front().cols(); }
};

/// (n, g) with g: A^n -> A^m making [F | g] surjective.
struct Taming {
  int n = 0;
  std::vector<Matrix> g;
};

/// Orthonormal cokernel basis per point, zero-padded to the largest
/// cokernel dimension.
Taming find_taming(const FredholmMap& f, double rel_tol = kRankTolerance);

struct IndexResult {
  K0Class index;
  /// dim ker F and dim coker F per point.
  std::vector<int> kernel_dims;
  std::vector<int> cokernel_dims;
  /// dim ker [F | g] per point.
  std::vector<int> tamed_kernel_dims;
  int taming_size = 0;
};

/// ind F = [ker(F + g)] - [A^n]. Uses find_taming when no taming is given.
/// Throws PreconditionError if the taming is not surjective somewhere.
IndexResult index(const FredholmMap& f,
                  const std::optional<Taming>& taming = std::nullopt,
                  double rel_tol = kRankTolerance);

/// Index agreement across `trials` random tamings built by appending random
/// columns to a rotated minimal taming. Throws PreconditionError if
/// trials < 2.
bool taming_independence(const FredholmMap& f, int trials,
                         std::mt19937_64& rng);

FredholmMap direct_sum(const FredholmMap& a, const FredholmMap& b);
FredholmMap adjoint(const FredholmMap& f);

/// Graded module A^{k+} (+) A^{k-} (even block first) with an odd
/// self-adjoint operator per point.
struct FredholmCycle {
  BaseRing ring;
  int even_dim = 0;
  int odd_dim = 0;
  std::vector<Matrix> operators;

  /// offdiag(T^*, T) on A^k (+) A^m.
  static FredholmCycle from_map(const FredholmMap& t);
  std::vector<int> grading() const;
  GradedMatrix graded(int point) const;
  /// Throws PreconditionError unless each operator is odd and self-adjoint
  /// within tol (relative to max(1, ||F||)).
  void validate(double tol = 1e-10) const;
};

struct GradedIndexResult {
  K0Class index;
  std::vector<int> even_kernel_dims;
  std::vector<int> odd_kernel_dims;
};
/// dim(ker F cap even) - dim(ker F cap odd), per point.
GradedIndexResult graded_index(const FredholmCycle& c,
                               double rel_tol = kRankTolerance);

/// The inverse cycle (E, -iota, -F), written with the even block first.
FredholmCycle inverse_cycle(const FredholmCycle& c);

struct UnitarizeResult {
  FredholmCycle cycle;
  std::vector<std::string> warnings;
};
/// h_c(F) / c with h_c clipping the spectrum to [-c, c]. Warns when some
/// nonzero eigenvalue lies inside (-c, c). Throws DomainError for c <= 0.
UnitarizeResult essentially_unitarize(const FredholmCycle& c, double gap);

struct SpectralRow {
  double s;
  double norm;   // ||f(D/s) - f(0) P_0||
  double bound;  // sup over nonzero eigenvalues of |f(lambda/s)|
};
struct SpectralClassResult {
  K0Class cls;
  int even_kernel = 0;
  int odd_kernel = 0;
  std::vector<SpectralRow> table;
};
/// Graded kernel class of an odd self-adjoint D and the decay table of
/// f(s^{-1} D) toward f(0) P_0. Eigenvalues with |lambda| <= kernel_tol
/// count as kernel.
SpectralClassResult spectral_class(const GradedMatrix& d,
                                   const schwartz::SFunction& f,
                                   const std::vector<double>& s_grid,
                                   double kernel_tol = 1e-9);

/// u = (D - i)(D + i)^{-1}. Throws PreconditionError unless D is
/// self-adjoint.
Matrix cayley(const GradedMatrix& d);
/// D = i (1 + u)(1 - u)^{-1}. Throws DomainError if 1 is an eigenvalue.
Matrix inverse_cayley(const Matrix& u);

struct CayleyDefects {
  double unitary = 0.0;     // max |u^* u - 1|
  double graded = 0.0;      // max |u^* - eps(u)|
  double real = 0.0;        // max |tau(u) - u^*|
  double shifted_a0 = 0.0;  // a0_defect(u - 1)
};
CayleyDefects cayley_defects(const GradedMatrix& d, const Matrix& u);

/// A_0 = {a : a^* = eps(a) = tau(a)} inside the graded Real matrix algebra
/// carried by `space`. Returns max(|a^* - eps(a)|, |tau(a) - eps(a)|).
double a0_defect(const GradedMatrix& space, const Matrix& a);
/// Real-linear projection onto A_0 by averaging its two involutions.
Matrix project_a0(const GradedMatrix& space, const Matrix& a);

/// t a (a^* a)^{-1/2} + (1 - t) a. Throws PreconditionError for singular a
/// and DomainError for t outside [0, 1].
Matrix unitary_retraction(const Matrix& a, double t);

/// [[cos(pi t/2) F, sin(pi t/2)], [sin(pi t/2), -cos(pi t/2) F]].
Matrix rotation_path(const Matrix& f, double t);

struct PathSample {
  double t;
  long index;
  /// Smallest nonzero |eigenvalue|.
  double gap;
};
/// graded_index and spectral gap at `steps` + 1 equally spaced t in [0, 1].
std::vector<PathSample> sample_path(
    const std::function<Matrix(double)>& path, int even_dim, int odd_dim,
    int steps, double rel_tol = kRankTolerance);

/// Complex Gaussian matrix with unit-variance entries.
Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows,
                     Eigen::Index cols);

}  // namespace speck::fredholm
