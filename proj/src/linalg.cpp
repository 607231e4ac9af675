#include "speck/linalg.hpp"

#include <algorithm>

namespace speck {

namespace {

template <class M>
double largest_singular(const M& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<M> svd(a);
  return svd.singularValues()(0);
}

}  // namespace

double op_norm(const Matrix& a) { return largest_singular(a); }
double op_norm(const RealMatrix& a) { return largest_singular(a); }

int numerical_rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  const double cut = rel_tol * s(0);
  return static_cast<int>(std::count_if(s.begin(), s.end(),
                                        [cut](double x) { return x > cut; }));
}

Matrix null_space(const Matrix& a, double rel_tol) {
  const Eigen::Index cols = a.cols();
  if (cols == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int rank = 0;
  if (s(0) > 0.0) {
    const double cut = rel_tol * s(0);
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > cut) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

Matrix left_null_space(const Matrix& a, double rel_tol) {
  return null_space(a.adjoint(), rel_tol);
}

double min_singular_value(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  return s(s.size() - 1);
}

int span_rank(std::span<const Matrix> family, double rel_tol) {
  if (family.empty()) return 0;
  const Eigen::Index entries = family.front().size();
  Matrix stacked(entries, static_cast<Eigen::Index>(family.size()));
  for (std::size_t k = 0; k < family.size(); ++k)
    stacked.col(static_cast<Eigen::Index>(k)) =
        family[k].reshaped(entries, 1);
  return numerical_rank(stacked, rel_tol);
}

HermitianSpectrum hermitian_spectrum(const Matrix& a) {
  const Matrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  return {es.eigenvalues(), es.eigenvectors()};
}

SymmetricSpectrum symmetric_spectrum(const RealMatrix& a) {
  const RealMatrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym);
  return {es.eigenvalues(), es.eigenvectors()};
}

Matrix functional_calculus(const HermitianSpectrum& spec,
                           const std::function<Complex(double)>& f) {
  Vector fv(spec.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = f(spec.values(i));
  return spec.vectors * fv.asDiagonal() * spec.vectors.adjoint();
}

Matrix functional_calculus(const SymmetricSpectrum& spec,
                           const std::function<Complex(double)>& f) {
  Vector fv(spec.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = f(spec.values(i));
  const Matrix v = spec.vectors.cast<Complex>();
  return v * fv.asDiagonal() * v.transpose();
}

RealMatrix real_functional_calculus(const SymmetricSpectrum& spec,
                                    const std::function<double(double)>& f) {
  RealVector fv(spec.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = f(spec.values(i));
  return spec.vectors * fv.asDiagonal() * spec.vectors.transpose();
}

SparseReal kron(const SparseReal& a, const SparseReal& b) {
  SparseReal out(a.rows() * b.rows(), a.cols() * b.cols());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (SparseReal::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (SparseReal::InnerIterator ib(b, kb); ib; ++ib)
          trips.emplace_back(ia.row() * b.rows() + ib.row(),
                             ia.col() * b.cols() + ib.col(),
                             ia.value() * ib.value());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseReal sparse_identity(Eigen::Index n) {
  SparseReal id(n, n);
  id.setIdentity();
  return id;
}

}  // namespace speck
