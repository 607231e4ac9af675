#include "speck/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "speck/errors.hpp"

namespace speck::fredholm {

namespace {

constexpr Complex kI{0.0, 1.0};

double max_abs(const Matrix& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

std::size_t point_count(const BaseRing& r) {
  return static_cast<std::size_t>(r.points);
}

// Kernel dimensions of an even-first odd operator, read off its odd blocks.
std::pair<int, int> graded_kernel(const Matrix& f, int even, int odd,
                                  double rel_tol) {
  const Matrix t = f.bottomLeftCorner(odd, even);
  const int rank_t = numerical_rank(t, rel_tol);
  const int rank_ts = numerical_rank(Matrix(t.adjoint()), rel_tol);
  return {even - rank_t, odd - rank_ts};
}

}  // namespace

void BaseRing::validate() const {
  if (points < 1) throw StructuralError("base ring needs at least one point");
  if (kind == Kind::complex && points != 1)
    throw StructuralError("complex base ring has exactly one point");
}

K0Class K0Class::zero(const BaseRing& ring) {
  return {ring, std::vector<long>(point_count(ring), 0)};
}

long K0Class::scalar() const {
  if (values.size() != 1)
    throw StructuralError("K0 class has more than one component");
  return values.front();
}

std::string K0Class::to_string() const {
  if (ring.kind == BaseRing::Kind::complex) return std::to_string(scalar());
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < values.size(); ++i)
    out << (i ? "," : "") << values[i];
  out << ')';
  return out.str();
}

K0Class operator+(const K0Class& a, const K0Class& b) {
  if (!(a.ring == b.ring)) throw StructuralError("K0 classes over different rings");
  K0Class out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] += b.values[i];
  return out;
}

K0Class operator-(const K0Class& a) {
  K0Class out = a;
  for (auto& v : out.values) v = -v;
  return out;
}

FredholmMap FredholmMap::scalar(Matrix m) {
  return {BaseRing::complex(), {std::move(m)}};
}

void FredholmMap::validate() const {
  ring.validate();
  if (blocks.size() != point_count(ring))
    throw StructuralError("need one block per point of the base ring");
  for (const auto& b : blocks)
    if (b.rows() != blocks.front().rows() || b.cols() != blocks.front().cols())
      throw StructuralError("blocks must share one shape");
}

Taming find_taming(const FredholmMap& f, double rel_tol) {
  f.validate();
  std::vector<Matrix> coker;
  int n = 0;
  for (const auto& b : f.blocks) {
    coker.push_back(left_null_space(b, rel_tol));
    n = std::max(n, static_cast<int>(coker.back().cols()));
  }
  Taming out{n, {}};
  for (auto& c : coker) {
    Matrix g = Matrix::Zero(f.rows(), n);
    g.leftCols(c.cols()) = c;
    out.g.push_back(std::move(g));
  }
  return out;
}

IndexResult index(const FredholmMap& f, const std::optional<Taming>& taming,
                  double rel_tol) {
  f.validate();
  const Taming tm = taming ? *taming : find_taming(f, rel_tol);
  if (tm.n < 0 || tm.g.size() != f.blocks.size())
    throw PreconditionError("taming does not match the map");
  IndexResult out{K0Class::zero(f.ring), {}, {}, {}, tm.n};
  const auto m = f.rows();
  const auto k = f.cols();
  for (std::size_t p = 0; p < f.blocks.size(); ++p) {
    const Matrix& g = tm.g[p];
    if (g.rows() != m || g.cols() != tm.n)
      throw PreconditionError("taming block has the wrong shape");
    Matrix tamed(m, k + tm.n);
    tamed << f.blocks[p], g;
    const int rank = numerical_rank(tamed, rel_tol);
    if (rank != m)
      throw PreconditionError("taming is not surjective at point " +
                              std::to_string(p));
    const int r = numerical_rank(f.blocks[p], rel_tol);
    out.kernel_dims.push_back(static_cast<int>(k) - r);
    out.cokernel_dims.push_back(static_cast<int>(m) - r);
    const int tamed_kernel = static_cast<int>(k + tm.n) - rank;
    out.tamed_kernel_dims.push_back(tamed_kernel);
    out.index.values[p] = tamed_kernel - tm.n;
  }
  return out;
}

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows,
                     Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      out(i, j) = Complex(normal(rng), normal(rng));
  return out;
}

bool taming_independence(const FredholmMap& f, int trials,
                         std::mt19937_64& rng) {
  if (trials < 2) throw PreconditionError("taming_independence needs trials >= 2");
  const Taming minimal = find_taming(f);
  const K0Class reference = index(f, minimal).index;
  std::uniform_int_distribution<int> extra_dist(0, 3);
  for (int trial = 0; trial < trials; ++trial) {
    const int extra = extra_dist(rng);
    // A random unitary mixing of the minimal columns keeps surjectivity.
    const Matrix q = minimal.n ? Matrix(random_matrix(rng, minimal.n, minimal.n)
                                            .householderQr()
                                            .householderQ())
                               : Matrix(0, 0);
    Taming t{minimal.n + extra, {}};
    for (const auto& g : minimal.g) {
      Matrix col(f.rows(), t.n);
      col << g * q, random_matrix(rng, f.rows(), extra);
      t.g.push_back(std::move(col));
    }
    if (!(index(f, t).index == reference)) return false;
  }
  return true;
}

FredholmMap direct_sum(const FredholmMap& a, const FredholmMap& b) {
  a.validate();
  b.validate();
  if (!(a.ring == b.ring)) throw StructuralError("direct sum over different rings");
  FredholmMap out{a.ring, {}};
  for (std::size_t p = 0; p < a.blocks.size(); ++p) {
    const auto& x = a.blocks[p];
    const auto& y = b.blocks[p];
    Matrix s = Matrix::Zero(x.rows() + y.rows(), x.cols() + y.cols());
    s.topLeftCorner(x.rows(), x.cols()) = x;
    s.bottomRightCorner(y.rows(), y.cols()) = y;
    out.blocks.push_back(std::move(s));
  }
  return out;
}

FredholmMap adjoint(const FredholmMap& f) {
  f.validate();
  FredholmMap out{f.ring, {}};
  for (const auto& b : f.blocks) out.blocks.push_back(b.adjoint());
  return out;
}

FredholmCycle FredholmCycle::from_map(const FredholmMap& t) {
  t.validate();
  const auto k = static_cast<int>(t.cols());
  const auto m = static_cast<int>(t.rows());
  FredholmCycle out{t.ring, k, m, {}};
  for (const auto& b : t.blocks) {
    Matrix f = Matrix::Zero(k + m, k + m);
    f.topRightCorner(k, m) = b.adjoint();
    f.bottomLeftCorner(m, k) = b;
    out.operators.push_back(std::move(f));
  }
  return out;
}

std::vector<int> FredholmCycle::grading() const {
  std::vector<int> g(static_cast<std::size_t>(even_dim), 1);
  g.resize(static_cast<std::size_t>(even_dim + odd_dim), -1);
  return g;
}

GradedMatrix FredholmCycle::graded(int point) const {
  return GradedMatrix(operators.at(static_cast<std::size_t>(point)), grading());
}

void FredholmCycle::validate(double tol) const {
  ring.validate();
  if (even_dim < 0 || odd_dim < 0)
    throw StructuralError("graded dimensions must be nonnegative");
  if (operators.size() != point_count(ring))
    throw StructuralError("need one operator per point of the base ring");
  const int n = even_dim + odd_dim;
  for (const auto& f : operators) {
    if (f.rows() != n || f.cols() != n)
      throw StructuralError("cycle operator has the wrong size");
    const double scale = std::max(1.0, max_abs(f));
    if (max_abs(f - f.adjoint()) > tol * scale)
      throw PreconditionError("cycle operator is not self-adjoint");
    const double even_part =
        std::max(max_abs(f.topLeftCorner(even_dim, even_dim)),
                 max_abs(f.bottomRightCorner(odd_dim, odd_dim)));
    if (even_part > tol * scale)
      throw PreconditionError("cycle operator is not odd");
  }
}

GradedIndexResult graded_index(const FredholmCycle& c, double rel_tol) {
  c.validate();
  GradedIndexResult out{K0Class::zero(c.ring), {}, {}};
  for (std::size_t p = 0; p < c.operators.size(); ++p) {
    const auto [even, odd] =
        graded_kernel(c.operators[p], c.even_dim, c.odd_dim, rel_tol);
    out.even_kernel_dims.push_back(even);
    out.odd_kernel_dims.push_back(odd);
    out.index.values[p] = even - odd;
  }
  return out;
}

FredholmCycle inverse_cycle(const FredholmCycle& c) {
  c.validate();
  const int e = c.even_dim, o = c.odd_dim;
  FredholmCycle out{c.ring, o, e, {}};
  for (const auto& f : c.operators) {
    // Negated grading: the old odd block becomes the even one.
    Matrix g = Matrix::Zero(e + o, e + o);
    g.topRightCorner(o, e) = -f.bottomLeftCorner(o, e);
    g.bottomLeftCorner(e, o) = -f.topRightCorner(e, o);
    out.operators.push_back(std::move(g));
  }
  return out;
}

UnitarizeResult essentially_unitarize(const FredholmCycle& c, double gap) {
  if (!(gap > 0.0)) throw DomainError("cutoff c must be positive");
  c.validate();
  UnitarizeResult out{c, {}};
  for (std::size_t p = 0; p < c.operators.size(); ++p) {
    const auto spec = hermitian_spectrum(c.operators[p]);
    const double tol =
        kRankTolerance * std::max(1.0, spec.values.cwiseAbs().maxCoeff());
    for (double lambda : spec.values)
      if (std::abs(lambda) > tol && std::abs(lambda) < gap) {
        out.warnings.push_back("point " + std::to_string(p) +
                               ": nonzero eigenvalue " +
                               std::to_string(lambda) +
                               " lies inside (-c, c)");
        break;
      }
    Matrix g = functional_calculus(spec, [gap](double x) {
      return Complex(std::clamp(x, -gap, gap) / gap);
    });
    // Restore exact oddness lost to round-off in the eigenbasis.
    g.topLeftCorner(c.even_dim, c.even_dim).setZero();
    g.bottomRightCorner(c.odd_dim, c.odd_dim).setZero();
    out.cycle.operators[p] = 0.5 * (g + g.adjoint());
  }
  return out;
}

SpectralClassResult spectral_class(const GradedMatrix& d,
                                   const schwartz::SFunction& f,
                                   const std::vector<double>& s_grid,
                                   double kernel_tol) {
  d.validate();
  const double scale = std::max(1.0, max_abs(d.entries));
  if (d.hermitian_defect() > 1e-10 * scale)
    throw PreconditionError("spectral_class: D is not self-adjoint");
  if (d.even_part_norm() > 1e-10 * scale)
    throw PreconditionError("spectral_class: D is not odd");

  const auto spec = hermitian_spectrum(d.entries);
  const Eigen::Index n = spec.values.size();
  std::vector<Eigen::Index> kernel, rest;
  for (Eigen::Index i = 0; i < n; ++i)
    (std::abs(spec.values(i)) <= kernel_tol ? kernel : rest).push_back(i);

  const Matrix vk = spec.vectors(Eigen::all, kernel);
  const Matrix p0 = vk * vk.adjoint();
  const Matrix gamma = d.parity();
  const double graded_trace = (gamma * p0).trace().real();
  const double trace = p0.trace().real();

  SpectralClassResult out;
  out.cls = {BaseRing::complex(), {std::lround(graded_trace)}};
  out.even_kernel = static_cast<int>(std::lround((trace + graded_trace) / 2));
  out.odd_kernel = static_cast<int>(std::lround((trace - graded_trace) / 2));

  const Complex f0 = f(0.0);
  for (double s : s_grid) {
    if (!(s > 0.0)) throw DomainError("spectral_class: s must be positive");
    const Matrix fd =
        functional_calculus(spec, [&f, s](double x) { return f(x / s); });
    double bound = 0.0;
    for (auto i : rest) bound = std::max(bound, std::abs(f(spec.values(i) / s)));
    out.table.push_back({s, op_norm(Matrix(fd - f0 * p0)), bound});
  }
  return out;
}

Matrix cayley(const GradedMatrix& d) {
  d.validate();
  const double scale = std::max(1.0, max_abs(d.entries));
  if (d.hermitian_defect() > 1e-10 * scale)
    throw PreconditionError("cayley: D is not self-adjoint");
  const Matrix id = Matrix::Identity(d.dim(), d.dim());
  const Matrix plus = d.entries + kI * id;
  // (D - i)(D + i)^{-1}; both factors commute, so solve from the left.
  return plus.partialPivLu().solve(d.entries - kI * id);
}

Matrix inverse_cayley(const Matrix& u) {
  const Matrix id = Matrix::Identity(u.rows(), u.cols());
  const Matrix minus = id - u;
  if (min_singular_value(minus) <= 1e-12 * std::max(1.0, op_norm(u)))
    throw DomainError("inverse_cayley: 1 is an eigenvalue of u");
  return kI * minus.partialPivLu().solve(id + u);
}

CayleyDefects cayley_defects(const GradedMatrix& d, const Matrix& u) {
  const Matrix id = Matrix::Identity(u.rows(), u.cols());
  CayleyDefects out;
  out.unitary = max_abs(u.adjoint() * u - id);
  out.graded = max_abs(u.adjoint() - d.graded(u));
  out.real = d.real_form ? max_abs(d.real_conjugate(u) - u.adjoint()) : 0.0;
  out.shifted_a0 = a0_defect(d, u - id);
  return out;
}

double a0_defect(const GradedMatrix& space, const Matrix& a) {
  const Matrix eps = space.graded(a);
  return std::max(max_abs(a.adjoint() - eps),
                  max_abs(space.real_conjugate(a) - eps));
}

Matrix project_a0(const GradedMatrix& space, const Matrix& a) {
  // phi(a) = eps(a)^*, psi(a) = eps(tau(a)); commuting involutions whose
  // common fixed set is A_0.
  auto phi = [&](const Matrix& m) { return Matrix(space.graded(m).adjoint()); };
  auto psi = [&](const Matrix& m) {
    return space.graded(space.real_conjugate(m));
  };
  return 0.25 * (a + phi(a) + psi(a) + phi(psi(a)));
}

Matrix unitary_retraction(const Matrix& a, double t) {
  if (t < 0.0 || t > 1.0) throw DomainError("retraction parameter must lie in [0,1]");
  if (a.rows() != a.cols()) throw StructuralError("retraction needs a square matrix");
  if (a.size() == 0) return a;
  if (min_singular_value(a) <= 1e-12 * op_norm(a))
    throw PreconditionError("unitary_retraction: matrix is singular");
  const auto spec = hermitian_spectrum(Matrix(a.adjoint() * a));
  const Matrix inv_sqrt =
      functional_calculus(spec, [](double x) { return Complex(1.0 / std::sqrt(x)); });
  return t * (a * inv_sqrt) + (1.0 - t) * a;
}

Matrix rotation_path(const Matrix& f, double t) {
  const double c = std::cos(std::numbers::pi * t / 2.0);
  const double s = std::sin(std::numbers::pi * t / 2.0);
  const auto n = f.rows();
  Matrix p(2 * n, 2 * n);
  p << c * f, s * Matrix::Identity(n, n), s * Matrix::Identity(n, n), -c * f;
  return p;
}

std::vector<PathSample> sample_path(const std::function<Matrix(double)>& path,
                                    int even_dim, int odd_dim, int steps,
                                    double rel_tol) {
  if (steps < 1) throw DomainError("sample_path needs at least one step");
  std::vector<PathSample> out;
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    FredholmCycle c{BaseRing::complex(), even_dim, odd_dim, {path(t)}};
    const long idx = graded_index(c, rel_tol).index.scalar();
    const auto spec = hermitian_spectrum(c.operators.front());
    const double top = std::max(1.0, spec.values.cwiseAbs().maxCoeff());
    double gap = std::numeric_limits<double>::infinity();
    for (double lambda : spec.values)
      if (std::abs(lambda) > rel_tol * top) gap = std::min(gap, std::abs(lambda));
    out.push_back({t, idx, gap});
  }
  return out;
}

}  // namespace speck::fredholm
