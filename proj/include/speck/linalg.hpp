#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace speck {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using SparseReal = Eigen::SparseMatrix<double>;

/// Default relative singular-value cutoff for ranks and kernels.
inline constexpr double kRankTolerance = 1e-9;

/// Largest singular value.
double op_norm(const Matrix& a);
double op_norm(const RealMatrix& a);

/// Number of singular values above `rel_tol * sigma_max`.
/// A zero matrix has rank 0.
int numerical_rank(const Matrix& a, double rel_tol = kRankTolerance);

/// Orthonormal basis of ker(a), one vector per column.
Matrix null_space(const Matrix& a, double rel_tol = kRankTolerance);

/// Orthonormal basis of ker(a^*), i.e. the cokernel of a.
Matrix left_null_space(const Matrix& a, double rel_tol = kRankTolerance);

/// Smallest of the min(rows, cols) singular values (0 for empty matrices).
double min_singular_value(const Matrix& a);

/// Dimension of the complex span of a family of equally shaped matrices.
int span_rank(std::span<const Matrix> family, double rel_tol = kRankTolerance);

/// Spectral decomposition of a Hermitian matrix, eigenvalues ascending.
struct HermitianSpectrum {
  RealVector values;
  Matrix vectors;
};
HermitianSpectrum hermitian_spectrum(const Matrix& a);

struct SymmetricSpectrum {
  RealVector values;
  RealMatrix vectors;
};
SymmetricSpectrum symmetric_spectrum(const RealMatrix& a);

/// f(A) = V diag(f(lambda)) V^* for a Hermitian (or real symmetric) A.
Matrix functional_calculus(const HermitianSpectrum& spec,
                           const std::function<Complex(double)>& f);
Matrix functional_calculus(const SymmetricSpectrum& spec,
                           const std::function<Complex(double)>& f);
RealMatrix real_functional_calculus(const SymmetricSpectrum& spec,
                                    const std::function<double(double)>& f);

/// Kronecker product of sparse matrices.
SparseReal kron(const SparseReal& a, const SparseReal& b);
SparseReal sparse_identity(Eigen::Index n);

}  // namespace speck
