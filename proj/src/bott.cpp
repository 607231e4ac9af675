#include "speck/bott.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "speck/errors.hpp"

namespace speck::bott {

using oscillator::Kind;
using oscillator::SpectralCache;

namespace {

void require_t(double tparam) {
  if (!(tparam >= 1.0)) throw DomainError("t must be >= 1");
}

bool is_zero(const SFunction& f) { return f.label() == "0"; }

Matrix zero_matrix(const Truncation& t) {
  return Matrix::Zero(t.size(), t.size());
}

}  // namespace

Matrix bott_map(const SFunction& f, const Truncation& t) {
  t.validate();
  if (is_zero(f)) return zero_matrix(t);
  return oscillator::scaled_calculus(Kind::clifford, f, 1.0, t);
}

Matrix alpha(const SFunction& f, const SFunction& h, double tparam,
             const Truncation& t) {
  require_t(tparam);
  t.validate();
  if (is_zero(f) || is_zero(h)) return zero_matrix(t);
  return oscillator::scaled_calculus(Kind::dirac, f, tparam, t) *
         oscillator::scaled_calculus(Kind::clifford, h, tparam, t);
}

Matrix alpha_tensor(const std::vector<schwartz::ElementaryTensor>& terms,
                    double tparam, const Truncation& t) {
  require_t(tparam);
  Matrix out = zero_matrix(t);
  for (const auto& term : terms)
    out += term.coefficient * alpha(term.left, term.right, tparam, t);
  return out;
}

Matrix gamma_t(const SFunction& f, double tparam, const Truncation& t) {
  require_t(tparam);
  t.validate();
  if (is_zero(f)) return zero_matrix(t);
  return oscillator::scaled_calculus(Kind::harmonic, f, tparam, t);
}

Matrix dirac_dual_dirac_lhs(const SFunction& f, double tparam,
                            const Truncation& t) {
  require_t(tparam);
  t.validate();
  const SFunction u = SFunction::u();
  const Matrix ud = oscillator::scaled_calculus(Kind::dirac, u, tparam, t);
  const Matrix uc = oscillator::scaled_calculus(Kind::clifford, u, tparam, t);
  if (f.label() == "u") return ud * uc;
  if (f.label() == "v") {
    const Matrix c = oscillator::clifford_operator(t).dense().cast<Complex>();
    const Matrix d = oscillator::dirac_operator(t).dense().cast<Complex>();
    return ud * (c / tparam) * uc + (d / tparam) * ud * uc;
  }
  throw UnsupportedError("hand-written left side exists for u and v only");
}

ResidualRow dirac_dual_dirac_residual(const SFunction& f, double tparam,
                                      const Truncation& t, int low_energy) {
  const Matrix lhs = alpha_tensor(schwartz::comultiply_tensor(f), tparam, t);
  const Matrix diff = lhs - gamma_t(f, tparam, t);
  const Matrix basis = oscillator::low_energy_basis(t, low_energy).cast<Complex>();
  return {tparam, op_norm(Matrix(basis.adjoint() * diff * basis)),
          oscillator::interior_norm(diff, t)};
}

double delta_compatibility(const SFunction& f, double tparam,
                           const Truncation& t) {
  const Matrix a = alpha_tensor(schwartz::comultiply_tensor(f), tparam, t);
  const Matrix b = dirac_dual_dirac_lhs(f, tparam, t);
  return (a - b).cwiseAbs().maxCoeff();
}

std::vector<TableRow> residual_table(const std::vector<double>& t_grid,
                                     const Truncation& t, int low_energy,
                                     bool parallel) {
  auto row = [&](double tp) {
    return TableRow{
        tp,
        dirac_dual_dirac_residual(SFunction::u(), tp, t, low_energy).low_energy,
        dirac_dual_dirac_residual(SFunction::v(), tp, t, low_energy).low_energy};
  };
  std::vector<TableRow> out;
  if (!parallel) {
    for (double tp : t_grid) out.push_back(row(tp));
    return out;
  }
  // Warm the cache once so workers only read it.
  for (Kind k : {Kind::clifford, Kind::dirac, Kind::harmonic})
    SpectralCache::global().linear(k, t);
  std::vector<std::future<TableRow>> jobs;
  for (double tp : t_grid)
    jobs.push_back(std::async(std::launch::async, row, tp));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::vector<double> doubling_grid(double tmax) {
  if (!(tmax >= 1.0)) throw DomainError("tmax must be >= 1");
  std::vector<double> out;
  for (double t = 1.0; t <= tmax * (1 + 1e-12); t *= 2.0) out.push_back(t);
  return out;
}

BottClass bott_class(const Truncation& t) {
  t.validate();
  const double energy = std::min(static_cast<double>(t.cutoff - t.margin), 20.0);
  const RealMatrix w = oscillator::energy_window(t, energy);
  const auto b = oscillator::harmonic_operator(t);
  const RealMatrix bw = b.matrix * w;
  const RealMatrix inside = w.transpose() * bw;

  // Grading restricted to the window; B^2 is even, so this stays an
  // involution, and it is basis-diagonal when the window is.
  const auto grading = b.grading();
  RealVector g(static_cast<Eigen::Index>(grading.size()));
  for (std::size_t i = 0; i < grading.size(); ++i)
    g(static_cast<Eigen::Index>(i)) = grading[i];
  const RealMatrix gw = w.transpose() * g.asDiagonal() * w;
  std::vector<int> wgrading;
  for (Eigen::Index i = 0; i < gw.rows(); ++i) {
    const double off = (gw.row(i).cwiseAbs().sum() - std::abs(gw(i, i)));
    if (off > 1e-10 || std::abs(std::abs(gw(i, i)) - 1.0) > 1e-10)
      throw StructuralError("energy window is not spanned by homogeneous basis vectors");
    wgrading.push_back(gw(i, i) > 0 ? 1 : -1);
  }

  BottClass out;
  out.window_energy = energy;
  out.window_dim = static_cast<int>(w.cols());
  out.leakage = op_norm(RealMatrix(bw - w * inside));

  const GradedMatrix dw(0.5 * (inside + inside.transpose()).cast<Complex>(),
                        wgrading);
  const auto sc = fredholm::spectral_class(dw, SFunction::u(), {1.0, 2.0, 4.0, 8.0});
  out.cls = sc.cls;
  out.even_kernel = sc.even_kernel;
  out.odd_kernel = sc.odd_kernel;
  out.scaling = sc.table;

  const auto spec = symmetric_spectrum(inside);
  out.gap = std::numeric_limits<double>::infinity();
  for (double lambda : spec.values)
    if (std::abs(lambda) > 1e-9) out.gap = std::min(out.gap, std::abs(lambda));
  return out;
}

PeriodicityReport periodicity_report(double tol) {
  PeriodicityReport out;
  auto add = [&](int p, int q) {
    out.certificates.push_back(repcalc::certify(repcalc::matrix_model(p, q), p, q));
  };
  add(2, 0);
  add(8, 0);
  for (int n = 1; n <= 4; ++n) add(n, n);
  out.passed = std::all_of(out.certificates.begin(), out.certificates.end(),
                           [tol](const auto& c) { return c.passed(tol); });
  return out;
}

}  // namespace speck::bott
