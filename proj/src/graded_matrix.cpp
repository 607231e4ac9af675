#include "speck/graded_matrix.hpp"

#include <bit>
#include <string>

#include "speck/errors.hpp"

namespace speck {

RealForm RealForm::identity(int dim) {
  RealForm rf;
  rf.perm.resize(static_cast<std::size_t>(dim));
  rf.sign.assign(static_cast<std::size_t>(dim), 1);
  for (int i = 0; i < dim; ++i) rf.perm[static_cast<std::size_t>(i)] = i;
  return rf;
}

void RealForm::validate() const {
  if (perm.size() != sign.size())
    throw StructuralError("real form: perm and sign lengths differ");
  const int n = dim();
  for (int i = 0; i < n; ++i) {
    const int p = perm[static_cast<std::size_t>(i)];
    if (p < 0 || p >= n)
      throw StructuralError("real form: index out of range");
    if (perm[static_cast<std::size_t>(p)] != i)
      throw StructuralError("real form: permutation is not an involution");
    const int s = sign[static_cast<std::size_t>(i)];
    if ((s != 1 && s != -1) || s * sign[static_cast<std::size_t>(p)] != 1)
      throw StructuralError("real form: signs must be +-1 and square to +1");
  }
}

Matrix RealForm::matrix() const {
  const int n = dim();
  Matrix j = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    j(perm[static_cast<std::size_t>(i)], i) = sign[static_cast<std::size_t>(i)];
  return j;
}

Matrix RealForm::conjugate(const Matrix& m) const {
  const Matrix j = matrix();
  // J is a real signed permutation with J^2 = 1, so J^{-1} = J.
  return j * m.conjugate() * j;
}

GradedMatrix::GradedMatrix(Matrix m, std::vector<int> g,
                           std::optional<RealForm> rf)
    : entries(std::move(m)), grading(std::move(g)), real_form(std::move(rf)) {
  validate();
}

void GradedMatrix::validate() const {
  if (entries.rows() != entries.cols())
    throw StructuralError("graded matrix must be square");
  if (grading.size() != static_cast<std::size_t>(entries.rows()))
    throw StructuralError("grading length does not match dimension");
  for (int g : grading)
    if (g != 1 && g != -1) throw StructuralError("grading entries must be +-1");
  if (real_form) {
    if (real_form->dim() != dim())
      throw StructuralError("real form dimension mismatch");
    real_form->validate();
    for (int i = 0; i < dim(); ++i)
      if (grading[static_cast<std::size_t>(
              real_form->perm[static_cast<std::size_t>(i)])] !=
          grading[static_cast<std::size_t>(i)])
        throw StructuralError("real form does not commute with the grading");
  }
}

Matrix GradedMatrix::parity() const {
  Vector d(dim());
  for (int i = 0; i < dim(); ++i) d(i) = grading[static_cast<std::size_t>(i)];
  return d.asDiagonal();
}

Matrix GradedMatrix::graded(const Matrix& m) const {
  Matrix out = m;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      out(i, j) *= grading[static_cast<std::size_t>(i)] *
                   grading[static_cast<std::size_t>(j)];
  return out;
}

Matrix GradedMatrix::real_conjugate(const Matrix& m) const {
  if (!real_form) return m.conjugate();
  return real_form->conjugate(m);
}

double GradedMatrix::even_part_norm() const {
  return op_norm(Matrix(0.5 * (entries + graded(entries))));
}

double GradedMatrix::odd_part_norm() const {
  return op_norm(Matrix(0.5 * (entries - graded(entries))));
}

double GradedMatrix::hermitian_defect() const {
  if (dim() == 0) return 0.0;
  return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

double GradedMatrix::real_defect() const {
  if (!real_form || dim() == 0) return 0.0;
  return (real_form->conjugate(entries) - entries).cwiseAbs().maxCoeff();
}

std::vector<int> subset_parity_grading(int n) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<int> g(size);
  for (std::size_t s = 0; s < size; ++s)
    g[s] = (std::popcount(s) % 2 == 0) ? 1 : -1;
  return g;
}

}  // namespace speck
