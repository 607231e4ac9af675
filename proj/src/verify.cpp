#include "speck/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <future>
#include <random>
#include <sstream>

#include <json.hpp>

#include "speck/clifford.hpp"
#include "speck/errors.hpp"
#include "speck/fredholm.hpp"
#include "speck/json_io.hpp"
#include "speck/oscillator.hpp"
#include "speck/repcalc.hpp"
#include "speck/schwartz.hpp"

namespace speck::verify {

namespace {

namespace cl = speck::clifford;
namespace fr = speck::fredholm;
namespace osc = speck::oscillator;
namespace sw = speck::schwartz;

using Rng = std::mt19937_64;

class Sink {
 public:
  explicit Sink(Report& r) : r_(r) {}

  void le(std::string id, double value, double threshold) {
    add(std::move(id), value, threshold, Relation::le, value <= threshold);
  }
  void ge(std::string id, double value, double threshold) {
    add(std::move(id), value, threshold, Relation::ge, value >= threshold);
  }
  void eq(std::string id, double value, double expected) {
    add(std::move(id), value, expected, Relation::eq, value == expected);
  }

 private:
  void add(std::string id, double value, double threshold, Relation rel,
           bool pass) {
    // NaN never passes.
    if (std::isnan(value)) pass = false;
    r_.checks.push_back({std::move(id), value, threshold, rel, pass});
  }
  Report& r_;
};

// Dense work grows like (2 N)^{2 dim}; two dimensions get a small cutoff.
int cutoff_or(const Params& p, int one_dim_default) {
  return p.cutoff.value_or(p.dim == 2 ? 24 : one_dim_default);
}

Rng criterion_rng(const Params& p, int criterion) {
  std::seed_seq seq{static_cast<std::uint32_t>(p.seed),
                    static_cast<std::uint32_t>(p.seed >> 32),
                    static_cast<std::uint32_t>(criterion)};
  return Rng(seq);
}

double max_abs(const Matrix& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

std::vector<int> all_signs(int n, int code) {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = (code >> i & 1) ? -1 : 1;
  return s;
}

cl::CliffordElement random_element(const cl::CliffordSignature& sig, Rng& rng) {
  std::normal_distribution<double> normal;
  cl::CliffordElement::Coefficients c;
  for (std::uint32_t m = 0; m < sig.basis_size(); ++m)
    c[cl::Monomial(m)] = Complex(normal(rng), normal(rng));
  return cl::CliffordElement(sig, std::move(c));
}

// --- 1. Clifford products, adjoints, gradings, C*-identity -------------

void criterion_clifford(const Params& p, Sink& out) {
  Rng rng = criterion_rng(p, 1);
  double product_mismatch = 0, adjoint_mismatch = 0, grading_mismatch = 0;
  double real_mismatch = 0;
  const Complex c(1.0, 2.0);
  for (int n = 0; n <= 5; ++n) {
    for (int code = 0; code < (1 << n); ++code) {
      const cl::CliffordSignature sig(all_signs(n, code),
                                      std::vector<int>(static_cast<std::size_t>(n), 1));
      const auto rep = repcalc::signature_rep(sig);
      const auto imgs = rep.monomial_images();
      const auto size = static_cast<std::uint32_t>(sig.basis_size());
      for (std::uint32_t a = 0; a < size; ++a) {
        // x -> image(x) applied to the vacuum is injective, so one column
        // decides equality of the two elements.
        for (std::uint32_t b = 0; b < size; ++b) {
          const auto mp = cl::multiply(sig, cl::Monomial(a), cl::Monomial(b));
          const Vector lhs = imgs[a] * imgs[b].col(0);
          const Vector rhs = double(mp.sign) * imgs[mp.monomial.mask()].col(0);
          if ((lhs - rhs).cwiseAbs().maxCoeff() != 0.0) ++product_mismatch;
        }
        const auto x = cl::CliffordElement::monomial(sig, cl::Monomial(a), c);
        if (max_abs(rep.image(cl::adjoint(x)) - rep.image(x).adjoint()) != 0.0)
          ++adjoint_mismatch;
        if (max_abs(rep.image(cl::grading(x)) -
                    rep.parity * rep.image(x) * rep.parity) != 0.0)
          ++grading_mismatch;
      }
      // Real involution: a conjugate-linear *-automorphism fixing each
      // generator up to kappa, for every kappa.
      if (n > 4) continue;
      for (int kcode = 0; kcode < (1 << n); ++kcode) {
        const cl::CliffordSignature ks(sig.squares, all_signs(n, kcode));
        for (std::uint32_t a = 0; a < size; ++a) {
          const auto x = cl::CliffordElement::monomial(ks, cl::Monomial(a), c);
          const auto rx = cl::real_involution(x);
          if (cl::real_involution(rx).distance(x) != 0.0) ++real_mismatch;
          if (cl::real_involution(cl::adjoint(x)).distance(cl::adjoint(rx)) != 0.0)
            ++real_mismatch;
          for (std::uint32_t b = 0; b < size; ++b) {
            const auto y = cl::CliffordElement::monomial(ks, cl::Monomial(b), c);
            if (cl::real_involution(x * y).distance(rx * cl::real_involution(y)) != 0.0)
              ++real_mismatch;
          }
        }
        for (int i = 0; i < n; ++i) {
          const auto g = cl::CliffordElement::generator(ks, i);
          if (cl::real_involution(g).distance(double(ks.kappa[static_cast<std::size_t>(i)]) * g) != 0.0)
            ++real_mismatch;
        }
      }
    }
  }
  out.eq("clifford.product_mismatches", product_mismatch, 0);
  out.eq("clifford.adjoint_mismatches", adjoint_mismatch, 0);
  out.eq("clifford.grading_mismatches", grading_mismatch, 0);
  out.eq("clifford.real_involution_mismatches", real_mismatch, 0);

  std::uniform_int_distribution<int> gens(1, 5), coin(0, 1);
  double cstar = 0.0, homomorphism = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gens(rng);
    std::vector<int> sq(static_cast<std::size_t>(n)), kp(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      sq[static_cast<std::size_t>(i)] = coin(rng) ? 1 : -1;
      kp[static_cast<std::size_t>(i)] = coin(rng) ? 1 : -1;
    }
    const cl::CliffordSignature sig(sq, kp);
    auto x = random_element(sig, rng);
    x = Complex(1.0 / cl::norm(x)) * x;
    const double nx = cl::norm(x);
    cstar = std::max(cstar, std::abs(cl::norm(cl::adjoint(x) * x) - nx * nx));
    const auto y = random_element(sig, rng);
    const auto rep = repcalc::signature_rep(sig);
    homomorphism = std::max(
        homomorphism, max_abs(rep.image(x * y) - rep.image(x) * rep.image(y)) /
                          std::max(1.0, cl::norm(y)));
  }
  out.le("clifford.cstar_identity", cstar, 1e-12 * p.tol_scale);
  out.le("clifford.random_product_vs_rep", homomorphism, 1e-12 * p.tol_scale);
}

// --- 2. Exterior representation --------------------------------------------

void criterion_exterior(const Params& p, Sink& out) {
  Rng rng = criterion_rng(p, 2);
  std::uniform_int_distribution<int> dims(1, 4);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = dims(rng);
    std::vector<double> v(static_cast<std::size_t>(n)), w(v.size());
    for (auto& a : v) a = normal(rng);
    for (auto& a : w) a = normal(rng);
    const RealMatrix g = repcalc::gamma(v, w);
    const double expected = RealVector::Map(v.data(), n).squaredNorm() -
                            RealVector::Map(w.data(), n).squaredNorm();
    const RealMatrix diff = g * g - expected * RealMatrix::Identity(g.rows(), g.cols());
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  }
  out.le("exterior.gamma_square", worst, 1e-12 * p.tol_scale);
  for (int n = 1; n <= 4; ++n) {
    const auto imgs = repcalc::exterior_rep(n).monomial_images();
    out.eq("exterior.span_rank.n" + std::to_string(n), span_rank(imgs),
           std::pow(4.0, n));
  }
}

// --- 3. Periodicity certificates --------------------------------------------

void criterion_periodicity(const Params& p, Sink& out) {
  const double tol = 1e-12 * p.tol_scale;
  auto cert = [&](int a, int b) {
    return repcalc::certify(repcalc::matrix_model(a, b), a, b);
  };
  const auto c2 = cert(2, 0);
  out.eq("periodicity.cl20.relations_exact", c2.relations_exact, 1);
  out.le("periodicity.cl20.odd_residual", c2.odd_residual, tol);
  out.le("periodicity.cl20.adjoint_residual", c2.adjoint_residual, tol);
  out.eq("periodicity.cl20.span_rank", c2.span_rank, 4);
  const auto c8 = cert(8, 0);
  out.eq("periodicity.cl80.relations_exact", c8.relations_exact, 1);
  out.le("periodicity.cl80.odd_residual", c8.odd_residual, tol);
  out.le("periodicity.cl80.adjoint_residual", c8.adjoint_residual, tol);
  out.eq("periodicity.cl80.span_rank", c8.span_rank, 256);
  out.le("periodicity.cl80.real_residual", c8.real_residual.value_or(INFINITY), tol);
  for (int n = 1; n <= 4; ++n) {
    const auto c = cert(n, n);
    const std::string id = "periodicity.cl" + std::to_string(n) + std::to_string(n);
    out.eq(id + ".relations_exact", c.relations_exact, 1);
    out.eq(id + ".span_rank", c.span_rank, c.target_rank);
  }
}

// --- 4. Comultiplication -----------------------------------------------------

void criterion_comultiplication(const Params& p, Sink& out) {
  const double tol = p.tol_scale;
  const auto u = sw::SFunction::u();
  const auto v = sw::SFunction::v();
  const sw::Grid grid;  // 201 x 201 on [-4, 4]
  const sw::BiFunction du_closed(
      [](double x, double y) { return Complex(std::exp(-x * x - y * y)); }, {0, 0});
  const sw::BiFunction dv_closed(
      [](double x, double y) { return Complex((x + y) * std::exp(-x * x - y * y)); },
      {1, 0});
  out.le("schwartz.delta_u_closed_form", sw::grid_distance(sw::comultiply(u), du_closed, grid),
         1e-12 * tol);
  out.le("schwartz.delta_v_closed_form", sw::grid_distance(sw::comultiply(v), dv_closed, grid),
         1e-12 * tol);
  const std::pair<const char*, std::pair<sw::SFunction, sw::SFunction>> pairs[] = {
      {"uu", {u, u}}, {"uv", {u, v}}, {"vu", {v, u}}, {"vv", {v, v}}};
  for (const auto& [name, fg] : pairs)
    out.le(std::string("schwartz.multiplicativity.") + name,
           sw::check_multiplicativity(fg.first, fg.second, grid), 1e-10 * tol);
  const sw::Grid cube{-4.0, 4.0, 41};
  for (const auto& [name, f] : {std::pair{"u", u}, std::pair{"v", v}}) {
    out.le(std::string("schwartz.counit.") + name, sw::counit_residual(f, grid), 1e-10 * tol);
    out.le(std::string("schwartz.coassociativity.") + name,
           sw::coassociativity_residual(f, cube), 1e-10 * tol);
    out.le(std::string("schwartz.tensor_form.") + name,
           sw::grid_distance(sw::comultiply(f),
                             sw::evaluate_tensor(sw::comultiply_tensor(f)), grid),
           1e-12 * tol);
  }
}

// --- 5. Oscillator spectrum and identities ------------------------------------

std::vector<double> expected_spectrum(int dim, std::size_t count) {
  // Energies sum_i (2 k_i + 1) + 2 |mask| - dim, enumerated directly.
  std::vector<double> e;
  const int levels = 12;
  std::vector<int> k(static_cast<std::size_t>(dim), 0);
  while (true) {
    double base = 0;
    for (int x : k) base += 2 * x + 1;
    for (int mask = 0; mask < (1 << dim); ++mask)
      e.push_back(base + 2 * std::popcount(static_cast<unsigned>(mask)) - dim);
    std::size_t i = 0;
    while (i < k.size() && ++k[i] == levels) k[i++] = 0;
    if (i == k.size()) break;
  }
  std::sort(e.begin(), e.end());
  e.resize(std::min(count, e.size()));
  return e;
}

void criterion_oscillator(const Params& p, Sink& out) {
  const double tol = p.tol_scale;
  const osc::Truncation t{p.dim, cutoff_or(p, 64), p.margin};
  const auto spec = osc::oscillator_spectrum(t, 6);
  const auto expected = expected_spectrum(p.dim, 6);
  double worst = 0.0;
  for (std::size_t i = 0; i < 6; ++i) worst = std::max(worst, std::abs(spec[i] - expected[i]));
  out.le("oscillator.low_spectrum", worst, 1e-8 * tol);
  const double zero_count = static_cast<double>(
      std::count_if(spec.begin(), spec.end(), [&](double x) { return std::abs(x) <= 1e-8 * tol; }));
  out.eq("oscillator.kernel_dimension", zero_count, 1);
  out.ge("oscillator.ground_state_overlap", osc::ground_state_overlap(t), 1.0 - 1e-10 * tol);
  const auto sq = osc::square_identity_residual(t);
  out.le("oscillator.square_identity", sq.residual, 1e-10 * tol);
  out.le("oscillator.square_identity_number_rep", sq.number_rep_residual, 1e-10 * tol);
  out.le("oscillator.commutator_n_c2", sq.comm_n_c2, 1e-10 * tol);
  out.le("oscillator.commutator_n_d2", sq.comm_n_d2, 1e-10 * tol);
  const auto lad = osc::ladder_check({1, t.cutoff, t.margin});
  out.le("oscillator.ladder_h_rl_i", lad.h_minus_rl_minus_i, 1e-10 * tol);
  out.le("oscillator.ladder_h_lr_i", lad.h_minus_lr_plus_i, 1e-10 * tol);
  out.le("oscillator.hermite_eigen_law", lad.eigen_law, 1e-10 * tol);
}

// --- 6. Mehler factorization ----------------------------------------------------

void criterion_mehler(const Params& p, Sink& out) {
  const int n = p.cutoff.value_or(64);
  const osc::Truncation coarse{1, n, p.margin}, fine{1, 2 * n, p.margin};
  for (double s : {0.25, 0.5, 1.0})
    for (auto order : {osc::MehlerOrder::c_outer, osc::MehlerOrder::d_outer}) {
      const double a = osc::mehler_residual(coarse, s, 16, order);
      const double b = osc::mehler_residual(fine, s, 16, order);
      std::ostringstream id;
      id << "mehler.refinement_ratio.s" << s
         << (order == osc::MehlerOrder::c_outer ? ".c_outer" : ".d_outer");
      out.ge(id.str(), a / b, 10.0);
    }
}

// --- 7. Commutator decay -------------------------------------------------------

void criterion_commutator(const Params& p, Sink& out) {
  const osc::Truncation t{1, p.cutoff.value_or(128), p.margin};
  const std::vector<double> grid{1, 2, 4, 8};
  const auto rows = osc::commutator_decay(sw::SFunction::u(), grid, t);
  out.le("commutator.t8_over_t1", rows[3].norm / rows[0].norm, 0.3);
  bool decreasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i)
    decreasing = decreasing && rows[i].norm < rows[i - 1].norm;
  out.eq("commutator.strictly_decreasing", decreasing, 1);
}

// --- 8. Dirac-dual-Dirac --------------------------------------------------------

void criterion_ddd(const Params& p, Sink& out, Report& report) {
  const osc::Truncation t{p.dim, cutoff_or(p, 128), p.margin};
  const auto grid = bott::doubling_grid(p.tmax);
  report.table = bott::residual_table(grid, t, 16, p.parallel);
  const auto& rows = report.table;
  auto at = [&](double tp) {
    return *std::find_if(rows.begin(), rows.end(), [tp](const auto& r) { return r.t == tp; });
  };
  const double hi = std::min(8.0, grid.back());
  const auto r2 = at(2.0), rh = at(hi);
  const std::string suffix = "t" + std::to_string(static_cast<int>(hi)) + "_over_t2";
  out.le("ddd.u." + suffix, rh.residual_u / r2.residual_u, 0.5);
  out.le("ddd.v." + suffix, rh.residual_v / r2.residual_v, 0.5);
  bool mono_u = true, mono_v = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i - 1].t < 2.0) continue;
    mono_u = mono_u && rows[i].residual_u <= rows[i - 1].residual_u;
    mono_v = mono_v && rows[i].residual_v <= rows[i - 1].residual_v;
  }
  out.eq("ddd.u.nonincreasing_from_t2", mono_u, 1);
  out.eq("ddd.v.nonincreasing_from_t2", mono_v, 1);
  out.le("ddd.delta_compatibility", bott::delta_compatibility(sw::SFunction::v(), 2.0, t),
         1e-12 * p.tol_scale);
  const Matrix a = bott::alpha(sw::SFunction::u(), sw::SFunction::u(), 2.0, t);
  const Matrix b = osc::scaled_calculus(osc::Kind::dirac, sw::SFunction::u(), 2.0, t) *
                   osc::scaled_calculus(osc::Kind::clifford, sw::SFunction::u(), 2.0, t);
  out.le("ddd.alpha_definition", max_abs(a - b), 1e-12 * p.tol_scale);
}

// --- 9. Bott class ----------------------------------------------------------------

void criterion_bott_class(const Params& p, Sink& out) {
  for (auto [dim, cutoff] : {std::pair{1, 64}, std::pair{2, 24}}) {
    const auto a = bott::bott_class({dim, cutoff, p.margin});
    const auto b = bott::bott_class({dim, 2 * cutoff, p.margin});
    const std::string id = "bott.class.n" + std::to_string(dim);
    out.eq(id + ".N" + std::to_string(cutoff), double(a.cls.scalar()), 1);
    out.eq(id + ".N" + std::to_string(2 * cutoff), double(b.cls.scalar()), 1);
    out.eq(id + ".kernel_dimension", a.even_kernel + a.odd_kernel, 1);
    out.le(id + ".window_leakage", std::max(a.leakage, b.leakage), 1e-10 * p.tol_scale);
    double excess = 0.0;
    for (const auto& row : a.scaling) excess = std::max(excess, row.norm - row.bound);
    out.le(id + ".scaling_path_bound", excess, 1e-12 * p.tol_scale);
  }
}

// --- 10. Fredholm index ---------------------------------------------------------

fr::FredholmMap random_block(Rng& rng, int m, int k, int rank) {
  const Matrix f = fr::random_matrix(rng, m, rank) * fr::random_matrix(rng, rank, k);
  return fr::FredholmMap::scalar(f);
}

Matrix odd_selfadjoint(Rng& rng, int even, int odd, int rank, double min_sv) {
  // T = U diag(s) V^* with singular values in [min_sv, min_sv + 1].
  std::uniform_real_distribution<double> sv(min_sv, min_sv + 1.0);
  const Matrix u = fr::random_matrix(rng, odd, odd).householderQr().householderQ();
  const Matrix v = fr::random_matrix(rng, even, even).householderQr().householderQ();
  Matrix s = Matrix::Zero(odd, even);
  for (int i = 0; i < rank; ++i) s(i, i) = sv(rng);
  const Matrix t = u * s * v.adjoint();
  Matrix f = Matrix::Zero(even + odd, even + odd);
  f.topRightCorner(even, odd) = t.adjoint();
  f.bottomLeftCorner(odd, even) = t;
  return f;
}

void criterion_fredholm(const Params& p, Sink& out) {
  Rng rng = criterion_rng(p, 10);
  const double tol = p.tol_scale;
  std::uniform_int_distribution<int> shape(1, 6);
  double index_mismatch = 0, oracle_mismatch = 0, taming_failures = 0;
  double additivity = 0, adjoint_fail = 0;
  fr::FredholmMap previous = fr::FredholmMap::scalar(Matrix::Identity(1, 1));
  for (int trial = 0; trial < 200; ++trial) {
    const int m = shape(rng), k = shape(rng);
    std::uniform_int_distribution<int> ranks(0, std::min(m, k));
    const auto f = random_block(rng, m, k, ranks(rng));
    const auto r = fr::index(f);
    if (r.index.scalar() != k - m) ++index_mismatch;
    // Rank-nullity through an independent SVD.
    Eigen::JacobiSVD<Matrix> svd(f.blocks[0]);
    const auto& s = svd.singularValues();
    const int rank = static_cast<int>(std::count_if(
        s.begin(), s.end(), [&](double x) { return x > kRankTolerance * s(0); }));
    if (r.kernel_dims[0] != k - rank || r.cokernel_dims[0] != m - rank) ++oracle_mismatch;
    if (!fr::taming_independence(f, 10, rng)) ++taming_failures;
    const auto sum = fr::index(fr::direct_sum(f, previous)).index;
    if (!(sum == r.index + fr::index(previous).index)) ++additivity;
    if (!(fr::graded_index(fr::FredholmCycle::from_map(fr::adjoint(f))).index ==
          -fr::graded_index(fr::FredholmCycle::from_map(f)).index))
      ++adjoint_fail;
    previous = f;
  }
  out.eq("fredholm.index_equals_k_minus_m", index_mismatch, 0);
  out.eq("fredholm.rank_nullity_oracle", oracle_mismatch, 0);
  out.eq("fredholm.taming_independence", taming_failures, 0);
  out.eq("fredholm.additivity", additivity, 0);
  out.eq("fredholm.adjoint_negates", adjoint_fail, 0);

  double invertible = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = shape(rng);
    if (fr::index(fr::FredholmMap::scalar(fr::random_matrix(rng, n, n))).index.scalar() != 0)
      ++invertible;
    const Matrix f = odd_selfadjoint(rng, n, n, n, 0.5);
    if (fr::graded_index({fr::BaseRing::complex(), n, n, {f}}).index.scalar() != 0)
      ++invertible;
  }
  out.eq("fredholm.invertible_index_zero", invertible, 0);

  // Paths t -> U(t) F U(t)^* with U(t) = exp(i t H), H even Hermitian: the
  // spectrum, hence the gap, is constant along the path.
  double path_changes = 0, min_gap = INFINITY;
  for (int trial = 0; trial < 10; ++trial) {
    const int e = shape(rng), o = shape(rng);
    std::uniform_int_distribution<int> ranks(0, std::min(e, o));
    const Matrix f0 = odd_selfadjoint(rng, e, o, ranks(rng), 0.5);
    Matrix h = Matrix::Zero(e + o, e + o);
    const Matrix he = fr::random_matrix(rng, e, e), ho = fr::random_matrix(rng, o, o);
    h.topLeftCorner(e, e) = he + he.adjoint();
    h.bottomRightCorner(o, o) = ho + ho.adjoint();
    const auto hs = hermitian_spectrum(h);
    auto path = [&](double t) {
      const Matrix u = functional_calculus(hs, [t](double x) {
        return std::exp(Complex(0.0, t * x));
      });
      Matrix f = u * f0 * u.adjoint();
      f.topLeftCorner(e, e).setZero();
      f.bottomRightCorner(o, o).setZero();
      return Matrix(0.5 * (f + f.adjoint()));
    };
    const auto samples = fr::sample_path(path, e, o, 20);
    for (const auto& s : samples) {
      if (s.index != samples.front().index) ++path_changes;
      min_gap = std::min(min_gap, s.gap);
    }
    if (samples.front().index != e - o) ++path_changes;
    // Inverse cycle and rotation path.
    const fr::FredholmCycle c{fr::BaseRing::complex(), e, o, {f0}};
    if (fr::graded_index(fr::inverse_cycle(c)).index.scalar() != -(e - o)) ++path_changes;
  }
  out.eq("fredholm.path_index_changes", path_changes, 0);
  out.ge("fredholm.path_min_gap", min_gap, 0.5);

  double rotation = 0.0;
  {
    const Matrix f = odd_selfadjoint(rng, 3, 2, 2, 0.5);
    const Matrix fu = fr::essentially_unitarize({fr::BaseRing::complex(), 3, 2, {f}}, 0.5)
                          .cycle.operators[0];
    for (int i = 1; i <= 20; ++i) {
      const double t = i / 20.0;
      rotation = std::max(rotation, std::sin(M_PI * t / 2) -
                                        min_singular_value(fr::rotation_path(fu, t)));
    }
  }
  out.le("fredholm.rotation_path_invertible", rotation, 1e-12 * tol);

  // Cayley transform on a graded Real space.
  double cay_unitary = 0, cay_graded = 0, cay_real = 0, cay_a0 = 0, cay_inverse = 0;
  double retraction = 0, retraction_unitary = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<int> grading{1, 1, 1, -1, -1, -1};
    RealForm rf{{1, 0, 2, 4, 3, 5}, {1, 1, 1, 1, 1, -1}};
    GradedMatrix space(Matrix::Zero(6, 6), grading, rf);
    space.validate();
    Matrix d = odd_selfadjoint(rng, 3, 3, 3, 0.1);
    d = 0.5 * (d + rf.conjugate(d));
    const GradedMatrix dg(d, grading, rf);
    const Matrix u = fr::cayley(dg);
    const auto defects = fr::cayley_defects(dg, u);
    cay_unitary = std::max(cay_unitary, defects.unitary);
    cay_graded = std::max(cay_graded, defects.graded);
    cay_real = std::max(cay_real, defects.real);
    cay_a0 = std::max(cay_a0, defects.shifted_a0);
    cay_inverse = std::max(cay_inverse, max_abs(fr::inverse_cayley(u) - d));

    Matrix x = fr::project_a0(space, fr::random_matrix(rng, 6, 6));
    x *= 0.5 / std::max(1e-300, op_norm(x));
    const Matrix a = Matrix::Identity(6, 6) + x;
    for (double t : {0.0, 0.5, 1.0}) {
      const Matrix r = fr::unitary_retraction(a, t);
      retraction = std::max(retraction, fr::a0_defect(space, r - Matrix::Identity(6, 6)));
      if (t == 1.0)
        retraction_unitary = std::max(
            retraction_unitary, max_abs(r.adjoint() * r - Matrix::Identity(6, 6)));
    }
  }
  out.le("fredholm.cayley_unitary", cay_unitary, 1e-12 * tol);
  out.le("fredholm.cayley_graded", cay_graded, 1e-12 * tol);
  out.le("fredholm.cayley_real", cay_real, 1e-12 * tol);
  out.le("fredholm.cayley_shift_in_a0", cay_a0, 1e-12 * tol);
  out.le("fredholm.inverse_cayley", cay_inverse, 1e-12 * tol);
  out.le("fredholm.retraction_a0", retraction, 1e-10 * tol);
  out.le("fredholm.retraction_unitary", retraction_unitary, 1e-10 * tol);

  // Bundled fixtures.
  namespace fs = std::filesystem;
  if (p.fixtures_dir.empty() || !fs::is_directory(p.fixtures_dir)) return;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(p.fixtures_dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    const auto in = json_io::parse_fredholm(json_io::read_file(file.string()));
    if (!in.expected_index) continue;
    const fr::K0Class got = std::visit(
        [](const auto& v) {
          if constexpr (std::is_same_v<std::decay_t<decltype(v)>, fr::FredholmMap>)
            return fr::index(v).index;
          else
            return fr::graded_index(v).index;
        },
        in.value);
    out.eq("fredholm.fixture." + file.stem().string(), got.values == *in.expected_index, 1);
  }
}

// --- 11. Spectral-class decay ------------------------------------------------------

void criterion_spectral(const Params& p, Sink& out) {
  Rng rng = criterion_rng(p, 11);
  double excess = 0.0, class_mismatch = 0, u_explicit = 0.0;
  const std::vector<double> s_grid{1.0, 0.5, 0.25};
  for (auto [e, o, rank] : {std::tuple{3, 2, 2}, std::tuple{4, 4, 3}, std::tuple{2, 5, 1},
                            std::tuple{5, 5, 5}, std::tuple{6, 3, 2}}) {
    const Matrix d = odd_selfadjoint(rng, e, o, rank, 0.3);
    const fr::FredholmCycle c{fr::BaseRing::complex(), e, o, {d}};
    const auto sc = fr::spectral_class(c.graded(0), sw::SFunction::u(), s_grid);
    for (const auto& row : sc.table) excess = std::max(excess, row.norm - row.bound);
    if (sc.cls.scalar() != e - o) ++class_mismatch;
  }
  // Gap-1 example: the table equals e^{-1/s^2}.
  {
    Matrix d = Matrix::Zero(3, 3);
    d(0, 2) = d(2, 0) = 1.0;
    const auto sc = fr::spectral_class(GradedMatrix(d, {1, 1, -1}), sw::SFunction::u(), s_grid);
    for (const auto& row : sc.table)
      u_explicit = std::max(u_explicit, std::abs(row.norm - std::exp(-1.0 / (row.s * row.s))));
  }
  out.le("spectral.decay_within_bound", excess, 1e-12 * p.tol_scale);
  out.eq("spectral.class_mismatches", class_mismatch, 0);
  out.le("spectral.gap_one_table", u_explicit, 1e-12 * p.tol_scale);
}

nlohmann::json params_json(const Params& p) {
  return {{"dim", p.dim},
          {"cutoff", p.cutoff ? nlohmann::json(*p.cutoff) : nlohmann::json(nullptr)},
          {"margin", p.margin},
          {"tmax", p.tmax},
          {"seed", p.seed},
          {"tol_scale", p.tol_scale},
          {"parallel", p.parallel}};
}

}  // namespace

void Params::validate() const {
  if (dim < 1 || dim > 2) throw UsageError("--dim must be 1 or 2");
  if (cutoff && (*cutoff < 16 || *cutoff > 512))
    throw UsageError("--cutoff must lie in [16, 512]");
  if (margin < 2 || margin > 16) throw UsageError("--margin must lie in [2, 16]");
  if (cutoff && dim == 2 && *cutoff > 32)
    throw UsageError("--cutoff must be <= 32 when --dim is 2");
  if (cutoff && margin >= *cutoff / 2) throw UsageError("--margin must be below cutoff/2");
  if (!(tmax >= 4.0) || tmax > 1024.0) throw UsageError("--tmax must lie in [4, 1024]");
  if (!(tol_scale > 0.0) || tol_scale > 1e6)
    throw UsageError("--tol-scale must lie in (0, 1e6]");
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::le: return "<=";
    case Relation::ge: return ">=";
    case Relation::eq: return "==";
  }
  return "?";
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"clifford", "schwartz", "oscillator",
                                              "fredholm", "bott", "all"};
  return names;
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "clifford") return {1, 2, 3};
  if (suite == "schwartz") return {4};
  if (suite == "oscillator") return {5, 6, 7};
  if (suite == "bott") return {8, 9};
  if (suite == "fredholm") return {10, 11};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  throw UsageError("unknown suite '" + suite + "'");
}

double runtime_limit(int criterion) {
  static constexpr double limits[] = {5, 10, 10, 10, 20, 60, 60, 120, 30, 20, 5};
  if (criterion < 1 || criterion > kCriteria) throw UsageError("no such criterion");
  return limits[criterion - 1];
}

Report run_criterion(int criterion, const Params& params) {
  params.validate();
  Report r{"criterion" + std::to_string(criterion), params, {}, {}, 0.0};
  Sink out(r);
  const auto start = std::chrono::steady_clock::now();
  switch (criterion) {
    case 1: criterion_clifford(params, out); break;
    case 2: criterion_exterior(params, out); break;
    case 3: criterion_periodicity(params, out); break;
    case 4: criterion_comultiplication(params, out); break;
    case 5: criterion_oscillator(params, out); break;
    case 6: criterion_mehler(params, out); break;
    case 7: criterion_commutator(params, out); break;
    case 8: criterion_ddd(params, out, r); break;
    case 9: criterion_bott_class(params, out); break;
    case 10: criterion_fredholm(params, out); break;
    case 11: criterion_spectral(params, out); break;
    default: throw UsageError("no such criterion");
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Report run_suite(const std::string& suite, const Params& params) {
  const auto criteria = suite_criteria(suite);
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  std::vector<Report> parts;
  if (params.parallel) {
    std::vector<std::future<Report>> jobs;
    for (int c : criteria)
      jobs.push_back(std::async(std::launch::async, run_criterion, c, params));
    for (auto& j : jobs) parts.push_back(j.get());
  } else {
    for (int c : criteria) parts.push_back(run_criterion(c, params));
  }
  Report r{suite, params, {}, {}, 0.0};
  for (auto& part : parts) {
    r.checks.insert(r.checks.end(), part.checks.begin(), part.checks.end());
    if (!part.table.empty()) r.table = std::move(part.table);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string report_json(const Report& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"id", c.id},
                      {"value", c.value},
                      {"threshold", c.threshold},
                      {"relation", to_string(c.relation)},
                      {"pass", c.pass}});
  nlohmann::json j{{"suite", r.suite},
                   {"seed", r.params.seed},
                   {"params", params_json(r.params)},
                   {"checks", checks},
                   {"passed", r.passed()},
                   {"duration_s", r.seconds}};
  if (!r.table.empty()) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.table)
      rows.push_back({{"t", row.t}, {"residual_u", row.residual_u}, {"residual_v", row.residual_v}});
    j["table"] = rows;
  }
  return j.dump(2);
}

std::string checks_csv(const Report& r) {
  std::ostringstream out;
  out.precision(17);
  out << "id,value,threshold,relation,pass\n";
  for (const auto& c : r.checks)
    out << c.id << ',' << c.value << ',' << c.threshold << ',' << to_string(c.relation)
        << ',' << (c.pass ? "true" : "false") << '\n';
  return out.str();
}

std::string table_csv(const std::vector<bott::TableRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "t,residual_u,residual_v\n";
  for (const auto& row : rows)
    out << row.t << ',' << row.residual_u << ',' << row.residual_v << '\n';
  return out.str();
}

}  // namespace speck::verify
