#pragma once

// Bott map, the dual-Dirac asymptotic morphism alpha_t and the
// Dirac-dual-Dirac comparison alpha_t((1 (x) beta) Delta f) ~ f(t^{-1} B)
// on the truncated oscillator.

#include <vector>

#include "speck/fredholm.hpp"
#include "speck/oscillator.hpp"
#include "speck/repcalc.hpp"
#include "speck/schwartz.hpp"

namespace speck::bott {

using oscillator::Truncation;
using schwartz::SFunction;

/// beta(f) = f(C) on the truncated space.
Matrix bott_map(const SFunction& f, const Truncation& t);

/// alpha_t(f (x) h) = f(t^{-1} D) h(t^{-1} C). Throws DomainError for
/// tparam < 1.
Matrix alpha(const SFunction& f, const SFunction& h, double tparam,
             const Truncation& t);
/// alpha_t applied term by term to an element of the algebraic tensor
/// product.
Matrix alpha_tensor(const std::vector<schwartz::ElementaryTensor>& terms,
                    double tparam, const Truncation& t);
/// gamma_t(f) = f(t^{-1} B).
Matrix gamma_t(const SFunction& f, double tparam, const Truncation& t);

/// alpha_t((1 (x) beta) Delta f) written out by hand:
/// u -> u(D/t) u(C/t),
/// v -> u(D/t) (C/t) e^{-C^2/t^2} + (D/t) e^{-D^2/t^2} u(C/t).
/// Throws UnsupportedError for other functions.
Matrix dirac_dual_dirac_lhs(const SFunction& f, double tparam,
                            const Truncation& t);

struct ResidualRow {
  double t;
  /// Norm on the span of the lowest `low_energy` eigenvectors of B^2.
  double low_energy;
  /// Norm on the interior indices.
  double interior;
};
/// Residual of alpha_t((1 (x) beta) Delta f) against f(t^{-1} B), with the
/// left side assembled from schwartz::comultiply_tensor.
ResidualRow dirac_dual_dirac_residual(const SFunction& f, double tparam,
                                      const Truncation& t,
                                      int low_energy = 16);

/// max |hand-written left side - comultiply_tensor left side|.
double delta_compatibility(const SFunction& f, double tparam,
                           const Truncation& t);

struct TableRow {
  double t;
  double residual_u;
  double residual_v;
};
/// Low-energy residuals for u and v at each t. With `parallel` the t values
/// run concurrently.
std::vector<TableRow> residual_table(const std::vector<double>& t_grid,
                                     const Truncation& t, int low_energy = 16,
                                     bool parallel = false);

/// 1, 2, 4, ... up to and including tmax (tmax >= 1).
std::vector<double> doubling_grid(double tmax);

struct BottClass {
  fredholm::K0Class cls;
  int even_kernel = 0;
  int odd_kernel = 0;
  /// Energy bound of the window and its dimension.
  double window_energy = 0.0;
  int window_dim = 0;
  /// ||(1 - P_W) B P_W||: how far B moves the window out of itself.
  double leakage = 0.0;
  /// Smallest nonzero |eigenvalue| of B on the window.
  double gap = 0.0;
  /// ||u(s^{-1} B) - P_0|| along the scaling path.
  std::vector<fredholm::SpectralRow> scaling;
};
/// Graded kernel class of B computed by fredholm::spectral_class on the
/// B^2 spectral window of energy min(cutoff - margin, 20).
BottClass bott_class(const Truncation& t);

struct PeriodicityReport {
  std::vector<repcalc::ModelCertificate> certificates;
  bool passed = false;
};
/// Certificates for Cl(2,0), Cl(8,0) and Cl(n,n), n = 1..4.
PeriodicityReport periodicity_report(double tol = 1e-12);

}  // namespace speck::bott
