#include "speck/repcalc.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <string>
#include <string_view>

#include "speck/errors.hpp"

namespace speck::repcalc {

using clifford::Monomial;

namespace {

// Sign of e_i moved past the members of `s` below i.
int wedge_sign(std::uint32_t s, int i) {
  const std::uint32_t below = s & ((std::uint32_t{1} << i) - 1);
  return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

void check_degree(int n) {
  if (n < 0) throw StructuralError("negative generator count");
  if (n > kMaxExteriorDegree)
    throw ResourceError("exterior representation limited to n <= 8 (dim 256)");
}

RealMatrix unit_ext(int n, int i) {
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  v[static_cast<std::size_t>(i)] = 1.0;
  return exterior_multiplication(v);
}

RealMatrix unit_ins(int n, int i) {
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  v[static_cast<std::size_t>(i)] = 1.0;
  return interior_multiplication(v);
}

Matrix subset_parity(int n) {
  const auto g = subset_parity_grading(n);
  Vector d(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i)
    d(static_cast<Eigen::Index>(i)) = g[i];
  return d.asDiagonal();
}

}  // namespace

RealMatrix exterior_multiplication(std::span<const double> v) {
  const int n = static_cast<int>(v.size());
  check_degree(n);
  const std::uint32_t size = std::uint32_t{1} << n;
  RealMatrix m = RealMatrix::Zero(size, size);
  for (std::uint32_t s = 0; s < size; ++s)
    for (int i = 0; i < n; ++i) {
      if (s & (std::uint32_t{1} << i)) continue;
      m(s | (std::uint32_t{1} << i), s) +=
          wedge_sign(s, i) * v[static_cast<std::size_t>(i)];
    }
  return m;
}

RealMatrix interior_multiplication(std::span<const double> l) {
  const int n = static_cast<int>(l.size());
  check_degree(n);
  const std::uint32_t size = std::uint32_t{1} << n;
  RealMatrix m = RealMatrix::Zero(size, size);
  for (std::uint32_t s = 0; s < size; ++s)
    for (int i = 0; i < n; ++i) {
      if (!(s & (std::uint32_t{1} << i))) continue;
      m(s & ~(std::uint32_t{1} << i), s) +=
          wedge_sign(s, i) * l[static_cast<std::size_t>(i)];
    }
  return m;
}

RealMatrix gamma(std::span<const double> v, std::span<const double> w) {
  if (v.size() != w.size())
    throw StructuralError("gamma: v and w must have the same dimension");
  std::vector<double> sum(v.size()), diff(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    sum[i] = v[i] + w[i];
    diff[i] = v[i] - w[i];
  }
  return exterior_multiplication(sum) + interior_multiplication(diff);
}

Matrix Representation::monomial_image(Monomial m) const {
  Matrix out = Matrix::Identity(dim(), dim());
  for (int i : m.indices()) out = out * images[static_cast<std::size_t>(i)];
  return out;
}

Matrix Representation::image(const CliffordElement& x) const {
  if (x.signature() != signature)
    throw StructuralError("element does not belong to the represented algebra");
  Matrix out = Matrix::Zero(dim(), dim());
  for (const auto& [m, c] : x.coefficients()) out += c * monomial_image(m);
  return out;
}

std::vector<Matrix> Representation::monomial_images() const {
  std::vector<Matrix> out;
  out.reserve(signature.basis_size());
  for (std::uint32_t s = 0; s < signature.basis_size(); ++s)
    out.push_back(monomial_image(Monomial(s)));
  return out;
}

GradedMatrix Representation::graded_image(int i) const {
  const Matrix off = parity - Matrix(parity.diagonal().asDiagonal());
  if (off.size() > 0 && off.cwiseAbs().maxCoeff() != 0.0)
    throw UnsupportedError("representation parity is not basis-diagonal");
  std::vector<int> g(static_cast<std::size_t>(dim()));
  for (int k = 0; k < dim(); ++k)
    g[static_cast<std::size_t>(k)] = parity(k, k).real() > 0 ? 1 : -1;
  return GradedMatrix(images.at(static_cast<std::size_t>(i)), std::move(g),
                      real_form);
}

Representation exterior_rep(int n) {
  check_degree(n);
  Representation rep;
  rep.signature = CliffordSignature::doubled(n);
  for (int i = 0; i < n; ++i)
    rep.images.push_back((unit_ext(n, i) + unit_ins(n, i)).cast<Complex>());
  for (int i = 0; i < n; ++i)
    rep.images.push_back((unit_ext(n, i) - unit_ins(n, i)).cast<Complex>());
  rep.parity = subset_parity(n);
  rep.real_form = RealForm::identity(1 << n);
  return rep;
}

Representation c_rep(int n) {
  return signature_rep(CliffordSignature::euclidean(n));
}

Representation signature_rep(const CliffordSignature& sig) {
  const int n = sig.generators();
  check_degree(n);
  Representation rep;
  rep.signature = sig;
  for (int i = 0; i < n; ++i) {
    const double s = sig.squares[static_cast<std::size_t>(i)];
    rep.images.push_back((unit_ext(n, i) + s * unit_ins(n, i)).cast<Complex>());
  }
  rep.parity = subset_parity(n);
  return rep;
}

RealMatrix left_multiplication(const CliffordSignature& sig, int i) {
  const auto size = static_cast<std::uint32_t>(sig.basis_size());
  RealMatrix m = RealMatrix::Zero(size, size);
  const Monomial e(std::uint32_t{1} << i);
  for (std::uint32_t s = 0; s < size; ++s) {
    const auto [sign, out] = clifford::multiply(sig, e, Monomial(s));
    m(out.mask(), s) = sign;
  }
  return m;
}

RealMatrix signed_right_multiplication(const CliffordSignature& sig, int i) {
  const auto size = static_cast<std::uint32_t>(sig.basis_size());
  RealMatrix m = RealMatrix::Zero(size, size);
  const Monomial e(std::uint32_t{1} << i);
  for (std::uint32_t s = 0; s < size; ++s) {
    const Monomial x(s);
    const auto [sign, out] = clifford::multiply(sig, x, e);
    m(out.mask(), s) = (x.length() % 2 == 0 ? 1 : -1) * sign;
  }
  return m;
}

GradedMatrix number_operator(int n) {
  check_degree(n);
  const auto sig = CliffordSignature::euclidean(n);
  const auto size = static_cast<Eigen::Index>(sig.basis_size());
  RealMatrix total = RealMatrix::Zero(size, size);
  for (int i = 0; i < n; ++i)
    total += signed_right_multiplication(sig, i) * left_multiplication(sig, i);
  return GradedMatrix(total.cast<Complex>(), subset_parity_grading(n),
                      RealForm::identity(static_cast<int>(size)));
}

namespace {

// Real 2x2 building blocks; 'E' is the rotation generator [[0,1],[-1,0]].
RealMatrix pauli_block(char c) {
  RealMatrix m(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    case 'E': m << 0, 1, -1, 0; break;
    default: throw StructuralError("unknown tensor factor");
  }
  return m;
}

RealMatrix tensor_word(std::string_view word) {
  RealMatrix out = RealMatrix::Identity(1, 1);
  for (char c : word) {
    const RealMatrix b = pauli_block(c);
    RealMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index k = 0; k < out.cols(); ++k)
        next.block(2 * r, 2 * k, 2, 2) = out(r, k) * b;
    out = std::move(next);
  }
  return out;
}

Representation model_2_0() {
  Representation rep;
  rep.signature = CliffordSignature::cl(2, 0);
  Matrix e1(2, 2), e2(2, 2), par(2, 2);
  e1 << 1, 0, 0, -1;
  e2 << 0, 1, 1, 0;
  rep.images = {e1, e2};
  // Grading by conjugation with i e1 e2, which anticommutes with e1 and e2.
  par = Complex(0, 1) * e1 * e2;
  rep.parity = par;
  return rep;
}

Representation model_8_0() {
  // Eight pairwise anticommuting real antisymmetric words on (R^2)^{(x)4},
  // each with an odd number of E factors so that A_j^2 = -1. Setting
  // g_j = i A_j gives Hermitian unitaries with g_j^2 = +1 and
  // conj(g_j) = -g_j, i.e. the generators of Cl_{8,0} with kappa = -1.
  // The product g_1 ... g_8 = A_1 ... A_8 is diagonal and serves as grading.
  static constexpr std::array<std::string_view, 8> words = {
      "IIIE", "IIEX", "IXEZ", "IEIZ", "XZEZ", "XEXX", "XEZX", "EZIZ"};
  Representation rep;
  rep.signature = CliffordSignature::cl(8, 0);
  RealMatrix prod = RealMatrix::Identity(16, 16);
  for (auto w : words) {
    const RealMatrix a = tensor_word(w);
    rep.images.push_back(Complex(0, 1) * a.cast<Complex>());
    prod = prod * a;
  }
  rep.parity = prod.cast<Complex>();
  rep.real_form = RealForm::identity(16);
  return rep;
}

}  // namespace

Representation matrix_model(int p, int q) {
  if (p == 2 && q == 0) return model_2_0();
  if (p == 8 && q == 0) return model_8_0();
  if (p == q && p >= 1 && p <= 4) return exterior_rep(p);
  throw UnsupportedError("no matrix model for Cl_{" + std::to_string(p) + "," +
                         std::to_string(q) + "}");
}

bool ModelCertificate::passed(double tol) const {
  return relation_residual <= tol && odd_residual <= tol &&
         adjoint_residual <= tol && span_rank == target_rank &&
         (!real_residual || *real_residual <= tol);
}

ModelCertificate certify(const Representation& rep, int p, int q) {
  ModelCertificate cert;
  cert.p = p;
  cert.q = q;
  cert.dim = rep.dim();
  const int n = rep.signature.generators();
  const Matrix id = Matrix::Identity(rep.dim(), rep.dim());
  cert.relations_exact = true;
  for (int i = 0; i < n; ++i) {
    const auto& gi = rep.images[static_cast<std::size_t>(i)];
    const double sq = rep.signature.squares[static_cast<std::size_t>(i)];
    for (int j = i; j < n; ++j) {
      const auto& gj = rep.images[static_cast<std::size_t>(j)];
      const Matrix expected = (i == j ? 2.0 * sq : 0.0) * id;
      const Matrix defect = gi * gj + gj * gi - expected;
      const double r = defect.size() ? defect.cwiseAbs().maxCoeff() : 0.0;
      cert.relation_residual = std::max(cert.relation_residual, r);
      if (r != 0.0) cert.relations_exact = false;
    }
    cert.odd_residual = std::max(
        cert.odd_residual,
        (rep.parity * gi + gi * rep.parity).cwiseAbs().maxCoeff());
    cert.adjoint_residual = std::max(
        cert.adjoint_residual, (gi.adjoint() - sq * gi).cwiseAbs().maxCoeff());
    if (rep.real_form) {
      const double kap = rep.signature.kappa[static_cast<std::size_t>(i)];
      const double r =
          (rep.real_form->conjugate(gi) - kap * gi).cwiseAbs().maxCoeff();
      cert.real_residual = std::max(cert.real_residual.value_or(0.0), r);
    }
  }
  const auto family = rep.monomial_images();
  cert.span_rank = span_rank(family);
  cert.target_rank = rep.dim() * rep.dim();
  return cert;
}

}  // namespace speck::repcalc
