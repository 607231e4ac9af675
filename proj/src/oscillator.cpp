#include "speck/oscillator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numeric>

#include "speck/clifford.hpp"
#include "speck/errors.hpp"
#include "speck/repcalc.hpp"

namespace speck::oscillator {

using schwartz::Parity;
using schwartz::SFunction;

void Truncation::validate() const {
  if (dim < 1) throw StructuralError("truncation: dim must be >= 1");
  if (cutoff < 8) throw StructuralError("truncation: cutoff must be >= 8");
  if (margin < 2) throw StructuralError("truncation: margin must be >= 2");
  if (margin >= cutoff)
    throw StructuralError("truncation: margin must be below the cutoff");
  if (dim > 4) throw ResourceError("truncation: dim > 4 is not supported");
}

Eigen::Index Truncation::hermite_size() const {
  Eigen::Index s = 1;
  for (int i = 0; i < dim; ++i) s *= cutoff;
  return s;
}

std::vector<int> OscOperator::grading() const {
  const auto cliff = subset_parity_grading(truncation.dim);
  std::vector<int> g(static_cast<std::size_t>(truncation.size()));
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = cliff[i % cliff.size()];
  return g;
}

GradedMatrix OscOperator::graded() const {
  return GradedMatrix(dense().cast<Complex>(), grading());
}

RealMatrix position_matrix(int n) {
  RealMatrix x = RealMatrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    const double a = std::sqrt((k + 1) / 2.0);
    x(k + 1, k) = a;
    x(k, k + 1) = a;
  }
  return x;
}

RealMatrix derivative_matrix(int n) {
  RealMatrix d = RealMatrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    const double a = std::sqrt((k + 1) / 2.0);
    d(k + 1, k) = -a;
    d(k, k + 1) = a;
  }
  return d;
}

namespace {

SparseReal to_sparse(const RealMatrix& m) { return m.sparseView(); }

// I^{(x) i} (x) a (x) I^{(x) (n-1-i)} on the Hermite factor.
SparseReal on_coordinate(const RealMatrix& a, int i, const Truncation& t) {
  SparseReal out = sparse_identity(1);
  const SparseReal id = sparse_identity(t.cutoff);
  const SparseReal sa = to_sparse(a);
  for (int c = 0; c < t.dim; ++c) out = kron(out, c == i ? sa : id);
  return out;
}

SparseReal assemble(Kind kind, const Truncation& t) {
  const auto sig = clifford::CliffordSignature::euclidean(t.dim);
  SparseReal total(t.size(), t.size());
  switch (kind) {
    case Kind::clifford:
    case Kind::dirac:
    case Kind::harmonic: {
      if (kind != Kind::dirac) {
        const RealMatrix x = position_matrix(t.cutoff);
        for (int i = 0; i < t.dim; ++i)
          total += kron(on_coordinate(x, i, t),
                        to_sparse(repcalc::left_multiplication(sig, i)));
      }
      if (kind != Kind::clifford) {
        const RealMatrix d = derivative_matrix(t.cutoff);
        for (int i = 0; i < t.dim; ++i)
          total += kron(on_coordinate(d, i, t),
                        to_sparse(repcalc::signed_right_multiplication(sig, i)));
      }
      break;
    }
    case Kind::number:
      total = kron(sparse_identity(t.hermite_size()),
                   to_sparse(repcalc::number_operator(t.dim).entries.real()));
      break;
  }
  total.prune(0.0);
  return total;
}

// Indices of the small truncation inside the enlarged one, in order.
std::vector<Eigen::Index> embedded_indices(const Truncation& small) {
  const Truncation big = small.enlarged();
  std::vector<Eigen::Index> out;
  out.reserve(static_cast<std::size_t>(small.size()));
  for (Eigen::Index idx = 0; idx < big.size(); ++idx) {
    const auto [levels, mask] = decode_index(big, idx);
    if (std::all_of(levels.begin(), levels.end(),
                    [&](int k) { return k < small.cutoff; }))
      out.push_back(idx);
  }
  return out;
}

SparseReal restrict(const SparseReal& big, std::span<const Eigen::Index> keep,
                    Eigen::Index big_size) {
  std::vector<Eigen::Index> position(static_cast<std::size_t>(big_size), -1);
  for (std::size_t k = 0; k < keep.size(); ++k)
    position[static_cast<std::size_t>(keep[k])] = static_cast<Eigen::Index>(k);
  std::vector<Eigen::Triplet<double>> trips;
  for (int col = 0; col < big.outerSize(); ++col)
    for (SparseReal::InnerIterator it(big, col); it; ++it) {
      const auto r = position[static_cast<std::size_t>(it.row())];
      const auto c = position[static_cast<std::size_t>(it.col())];
      if (r >= 0 && c >= 0) trips.emplace_back(r, c, it.value());
    }
  const auto n = static_cast<Eigen::Index>(keep.size());
  SparseReal out(n, n);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

struct LowSpectrum {
  RealVector values;
  RealMatrix vectors;
};

// Exactly diagonal (up to round-off) operators are read off directly;
// everything else goes through a dense symmetric eigensolver.
LowSpectrum low_spectrum(const SparseReal& m, Eigen::Index count) {
  const Eigen::Index n = m.rows();
  count = std::min(count, n);
  double diag_max = 0.0, off_max = 0.0;
  for (int col = 0; col < m.outerSize(); ++col)
    for (SparseReal::InnerIterator it(m, col); it; ++it) {
      if (it.row() == it.col())
        diag_max = std::max(diag_max, std::abs(it.value()));
      else
        off_max = std::max(off_max, std::abs(it.value()));
    }
  LowSpectrum out;
  if (off_max <= 1e-13 * std::max(1.0, diag_max)) {
    const RealVector d = m.diagonal();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return d(a) < d(b); });
    out.values.resize(count);
    out.vectors = RealMatrix::Zero(n, count);
    for (Eigen::Index k = 0; k < count; ++k) {
      out.values(k) = d(order[static_cast<std::size_t>(k)]);
      out.vectors(order[static_cast<std::size_t>(k)], k) = 1.0;
    }
    return out;
  }
  const auto spec = symmetric_spectrum(RealMatrix(m));
  out.values = spec.values.head(count);
  out.vectors = spec.vectors.leftCols(count);
  return out;
}

void require_positive(double s) {
  if (!(s > 0.0)) throw DomainError("Mehler parameter s must be positive");
}

RealMatrix expm_symmetric(const RealMatrix& a, double coeff) {
  const auto spec = symmetric_spectrum(a);
  return real_functional_calculus(
      spec, [coeff](double x) { return std::exp(-coeff * x); });
}

}  // namespace

std::pair<std::vector<int>, int> decode_index(const Truncation& t,
                                              Eigen::Index idx) {
  const int mask = static_cast<int>(idx % t.clifford_size());
  Eigen::Index h = idx / t.clifford_size();
  std::vector<int> levels(static_cast<std::size_t>(t.dim));
  for (int c = t.dim - 1; c >= 0; --c) {
    levels[static_cast<std::size_t>(c)] = static_cast<int>(h % t.cutoff);
    h /= t.cutoff;
  }
  return {std::move(levels), mask};
}

OscOperator build(Kind kind, const Truncation& t) {
  t.validate();
  return {t, assemble(kind, t)};
}

OscOperator clifford_operator(const Truncation& t) {
  return build(Kind::clifford, t);
}
OscOperator dirac_operator(const Truncation& t) { return build(Kind::dirac, t); }
OscOperator harmonic_operator(const Truncation& t) {
  return build(Kind::harmonic, t);
}
OscOperator number_operator(const Truncation& t) {
  return build(Kind::number, t);
}

OscOperator compressed_square(Kind kind, const Truncation& t) {
  t.validate();
  const Truncation big = t.enlarged();
  const SparseReal a = assemble(kind, big);
  const SparseReal sq = a * a;
  return {t, restrict(sq, embedded_indices(t), big.size())};
}

std::vector<Eigen::Index> interior_indices(const Truncation& t) {
  std::vector<Eigen::Index> out;
  const int bound = t.cutoff - t.margin;
  for (Eigen::Index idx = 0; idx < t.size(); ++idx) {
    const auto [levels, mask] = decode_index(t, idx);
    if (std::all_of(levels.begin(), levels.end(),
                    [bound](int k) { return k < bound; }))
      out.push_back(idx);
  }
  return out;
}

namespace {

template <class M>
M interior_block(const M& a, const Truncation& t) {
  const auto idx = interior_indices(t);
  return a(idx, idx);
}

}  // namespace

double interior_norm(const RealMatrix& a, const Truncation& t) {
  return op_norm(RealMatrix(interior_block(a, t)));
}

double interior_norm(const Matrix& a, const Truncation& t) {
  return op_norm(Matrix(interior_block(a, t)));
}

double interior_max_abs(const RealMatrix& a, const Truncation& t) {
  const RealMatrix b = interior_block(a, t);
  return b.size() ? b.cwiseAbs().maxCoeff() : 0.0;
}

SquareIdentity square_identity_residual(const Truncation& t) {
  const RealMatrix c = clifford_operator(t).dense();
  const RealMatrix d = dirac_operator(t).dense();
  const RealMatrix b = harmonic_operator(t).dense();
  const RealMatrix n = number_operator(t).dense();
  const RealMatrix c2 = c * c, d2 = d * d;
  SquareIdentity out;
  out.residual = interior_max_abs(b * b - c2 - d2 - n, t);
  out.comm_n_c2 = interior_norm(RealMatrix(n * c2 - c2 * n), t);
  out.comm_n_d2 = interior_norm(RealMatrix(n * d2 - d2 * n), t);

  // Same identity with the Clifford factor taken straight from repcalc.
  const RealMatrix nrep = repcalc::number_operator(t.dim).entries.real();
  RealMatrix n_full = RealMatrix::Zero(t.size(), t.size());
  for (Eigen::Index h = 0; h < t.hermite_size(); ++h)
    n_full.block(h * t.clifford_size(), h * t.clifford_size(),
                 t.clifford_size(), t.clifford_size()) = nrep;
  out.number_rep_residual = interior_max_abs(b * b - c2 - d2 - n_full, t);
  return out;
}

std::vector<double> oscillator_spectrum(const Truncation& t, int k) {
  const auto b2 = compressed_square(Kind::harmonic, t);
  const auto low = low_spectrum(b2.matrix, k);
  return {low.values.begin(), low.values.end()};
}

double ground_state_overlap(const Truncation& t) {
  const auto b2 = compressed_square(Kind::harmonic, t);
  const auto low = low_spectrum(b2.matrix, 1);
  // psi_0 (x) 1 is basis index 0.
  const double a = low.vectors(0, 0);
  return a * a;
}

LadderResiduals ladder_check(const Truncation& t) {
  t.validate();
  if (t.dim != 1) throw UnsupportedError("ladder_check requires dim == 1");
  const int n = t.cutoff;
  const RealMatrix x = position_matrix(n);
  const RealMatrix d = derivative_matrix(n);
  const RealMatrix lower = x + d;
  const RealMatrix raise = x - d;
  const RealMatrix h = x * x - d * d;
  const RealMatrix id = RealMatrix::Identity(n, n);
  const int bound = n - t.margin;

  auto interior = [bound](const RealMatrix& m) {
    return m.topLeftCorner(bound, bound).cwiseAbs().maxCoeff();
  };

  LadderResiduals out;
  out.h_minus_rl_minus_i = interior(h - raise * lower - id);
  out.h_minus_lr_plus_i = interior(h - lower * raise + id);
  RealMatrix rm = id;
  for (int m = 1; m <= 4; ++m) {
    rm = rm * raise;
    out.h_r_power[static_cast<std::size_t>(m - 1)] =
        interior(h * rm - rm * h - 2.0 * m * rm);
  }
  for (int k = 0; k < bound; ++k) {
    RealVector psi = RealVector::Zero(n);
    psi(k) = 1.0;
    out.eigen_law = std::max(
        out.eigen_law, (h * psi - (2.0 * k + 1.0) * psi).cwiseAbs().maxCoeff());
  }
  out.l_psi0 = lower.col(0).cwiseAbs().maxCoeff();
  return out;
}

MehlerParameters mehler_parameters(double s) {
  require_positive(s);
  return {(std::cosh(2.0 * s) - 1.0) / std::sinh(2.0 * s),
          std::sinh(2.0 * s) / 2.0};
}

MehlerParameters tau_parameters(double t) {
  if (!(t > 0.0)) throw DomainError("t must be positive");
  return mehler_parameters(1.0 / (t * t));
}

RealMatrix energy_window(const Truncation& t, double energy) {
  const auto b2 = compressed_square(Kind::harmonic, t);
  const Eigen::Index n = b2.matrix.rows();
  Eigen::Index count = 0;
  LowSpectrum low;
  // Grow the probe until it overshoots the energy bound.
  for (Eigen::Index probe = std::min<Eigen::Index>(n, 64);;
       probe = std::min<Eigen::Index>(n, 2 * probe)) {
    low = low_spectrum(b2.matrix, probe);
    count = 0;
    while (count < probe && low.values(count) <= energy) ++count;
    if (count < probe || probe == n) break;
  }
  return low.vectors.leftCols(count);
}

RealMatrix low_energy_basis(const Truncation& t, int k) {
  const auto b2 = compressed_square(Kind::harmonic, t);
  const Eigen::Index n = b2.matrix.rows();
  // Look a little past k so the last degenerate cluster can be completed.
  const Eigen::Index probe = std::min<Eigen::Index>(n, 2 * k + 8);
  const auto low = low_spectrum(b2.matrix, probe);
  Eigen::Index take = std::min<Eigen::Index>(k, probe);
  const double tol = 1e-8 * std::max(1.0, std::abs(low.values(take - 1)));
  while (take < probe &&
         std::abs(low.values(take) - low.values(take - 1)) <= tol)
    ++take;
  return low.vectors.leftCols(take);
}

double mehler_residual(const Truncation& t, double s, int k,
                       MehlerOrder order) {
  const auto [s1, s2] = mehler_parameters(s);
  const RealMatrix c2 = compressed_square(Kind::clifford, t).dense();
  const RealMatrix d2 = compressed_square(Kind::dirac, t).dense();
  const RealMatrix& outer = order == MehlerOrder::c_outer ? c2 : d2;
  const RealMatrix& inner = order == MehlerOrder::c_outer ? d2 : c2;
  const RealMatrix lhs = expm_symmetric(c2 + d2, s);
  const RealMatrix half = expm_symmetric(outer, 0.5 * s1);
  const RealMatrix rhs = half * expm_symmetric(inner, s2) * half;
  const RealMatrix basis = low_energy_basis(t, k);
  return op_norm(RealMatrix(basis.transpose() * (lhs - rhs) * basis));
}

SpectralCache& SpectralCache::global() {
  static SpectralCache cache;
  return cache;
}

std::shared_ptr<const SymmetricSpectrum> SpectralCache::get(
    Kind kind, bool squared, const Truncation& t) {
  const Key key{static_cast<int>(kind), squared, t.dim, t.cutoff, t.margin};
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  const RealMatrix m = squared ? compressed_square(kind, t).dense()
                               : build(kind, t).dense();
  auto spec = std::make_shared<const SymmetricSpectrum>(symmetric_spectrum(m));
  entries_.emplace(key, spec);
  return spec;
}

std::shared_ptr<const SymmetricSpectrum> SpectralCache::linear(
    Kind kind, const Truncation& t) {
  return get(kind, false, t);
}

std::shared_ptr<const SymmetricSpectrum> SpectralCache::squared(
    Kind kind, const Truncation& t) {
  return get(kind, true, t);
}

void SpectralCache::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

std::size_t SpectralCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

Matrix scaled_calculus(Kind kind, const SFunction& f, double scale,
                       const Truncation& t) {
  if (!(scale > 0.0)) throw DomainError("scale must be positive");
  const auto spec = SpectralCache::global().linear(kind, t);
  return functional_calculus(*spec,
                             [&f, scale](double x) { return f(x / scale); });
}

std::vector<DecayRow> commutator_decay(const SFunction& f,
                                       std::span<const double> t_grid,
                                       const Truncation& trunc) {
  if (!f.homogeneous())
    throw DecomposeFirstError("graded commutator needs a homogeneous function");
  const double sign = f.parity() == Parity::odd ? -1.0 : 1.0;
  std::vector<DecayRow> rows;
  for (double t : t_grid) {
    const Matrix a = scaled_calculus(Kind::dirac, f, t, trunc);
    const Matrix b = scaled_calculus(Kind::clifford, f, t, trunc);
    // [a, b] = ab - (-1)^{|a||b|} ba; both factors share f's parity.
    rows.push_back({t, interior_norm(Matrix(a * b - sign * b * a), trunc)});
  }
  return rows;
}

}  // namespace speck::oscillator
