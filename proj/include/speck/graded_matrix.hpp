#pragma once

#include <optional>
#include <vector>

#include "speck/linalg.hpp"

namespace speck {

/// Real structure on C^dim given by a signed basis involution J:
/// J e_i = sign[i] e_{perm[i]}. Vectors map to J conj(v), matrices to
/// J conj(M) J^{-1}.
struct RealForm {
  std::vector<int> perm;
  std::vector<int> sign;

  static RealForm identity(int dim);

  int dim() const { return static_cast<int>(perm.size()); }
  /// Throws StructuralError unless perm is an involution with
  /// sign[i] * sign[perm[i]] == 1.
  void validate() const;
  Matrix matrix() const;
  Matrix conjugate(const Matrix& m) const;
};

/// Square complex matrix on a graded finite-dimensional space. The grading is
/// diagonal in the chosen basis.
struct GradedMatrix {
  Matrix entries;
  std::vector<int> grading;
  std::optional<RealForm> real_form;

  GradedMatrix() = default;
  GradedMatrix(Matrix m, std::vector<int> g,
               std::optional<RealForm> rf = std::nullopt);

  int dim() const { return static_cast<int>(entries.rows()); }
  void validate() const;

  Matrix parity() const;
  /// epsilon(M) = Gamma M Gamma.
  Matrix graded(const Matrix& m) const;
  /// tau(M); identity conjugation when no real form is carried.
  Matrix real_conjugate(const Matrix& m) const;

  /// Norm of the part of `entries` that commutes with the grading.
  double even_part_norm() const;
  double odd_part_norm() const;
  double hermitian_defect() const;
  /// max |tau(M) - M|; 0 when no real form is carried.
  double real_defect() const;
};

/// Parity grading (+1 even, -1 odd) of the 2^n subsets ordered by bitmask.
std::vector<int> subset_parity_grading(int n);

}  // namespace speck
