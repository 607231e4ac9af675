// Acceptance runner: one PASS/FAIL line per criterion, with every failing
// check and the runtime budget spelled out.
//
//   speck_acceptance [--criterion K]

#include <cstring>
#include <iomanip>
#include <iostream>
#include <string>

#include "speck/verify.hpp"

namespace {

const char* kTitles[] = {
    "Clifford products, adjoints, gradings vs exterior oracle; C*-identity",
    "exterior representation: gamma(v,w)^2 and monomial span rank",
    "periodicity certificates Cl(2,0), Cl(8,0), Cl(n,n)",
    "comultiplication closed forms, multiplicativity, counit, coassociativity",
    "oscillator spectrum, kernel, B^2 = C^2 + D^2 + N, ladder identities",
    "Mehler residual shrinks >= 10x from N=64 to N=128",
    "commutator [u(D/t), u(C/t)] decay",
    "Dirac-dual-Dirac residual decay for u and v",
    "Bott class equals 1 for n = 1, 2 under cutoff doubling",
    "Fredholm index, tamings, paths, Cayley transform, retraction",
    "spectral-class decay bound",
};

bool run(int k) {
  speck::verify::Params params;
  params.fixtures_dir = SPECK_FIXTURE_DIR;
  const auto report = speck::verify::run_criterion(k, params);
  const double limit = speck::verify::runtime_limit(k);
  const bool in_time = report.seconds < limit;
  const bool ok = report.passed() && in_time;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << k << ": " << kTitles[k - 1]
            << " (" << std::fixed << std::setprecision(2) << report.seconds << " s, limit "
            << std::setprecision(0) << limit << " s)\n";
  std::cout << std::defaultfloat << std::setprecision(6);
  for (const auto& c : report.checks)
    std::cout << "    " << (c.pass ? "ok  " : "FAIL") << ' ' << c.id << " = " << c.value << ' '
              << speck::verify::to_string(c.relation) << ' ' << c.threshold << '\n';
  if (!in_time) std::cout << "    FAIL runtime budget exceeded\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::stoi(argv[++i]);
    } else {
      std::cerr << "usage: speck_acceptance [--criterion K]\n";
      return 2;
    }
  }
  if (only < 0 || only > speck::verify::kCriteria) {
    std::cerr << "criterion must lie in 1.." << speck::verify::kCriteria << '\n';
    return 2;
  }
  bool ok = true;
  for (int k = 1; k <= speck::verify::kCriteria; ++k)
    if (only == 0 || only == k) ok = run(k) && ok;
  return ok ? 0 : 1;
}
