#pragma once

// Verification suites. Each suite is a fixed list of numbered criteria; each
// criterion produces named checks (measured value, threshold, relation).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "speck/bott.hpp"

namespace speck::verify {

/// Parameters outside their documented bounds.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Params {
  int dim = 1;
  /// Suite default when unset: 64 for the oscillator checks, 128 for the
  /// commutator decay and the Dirac-dual-Dirac table.
  std::optional<int> cutoff;
  int margin = 4;
  double tmax = 16.0;
  std::uint64_t seed = 20240917;
  /// Multiplies every absolute tolerance; ratio thresholds are unaffected.
  double tol_scale = 1.0;
  bool parallel = false;
  /// Directory of Fredholm JSON fixtures; empty or missing skips them.
  std::string fixtures_dir;

  /// Throws UsageError.
  void validate() const;
};

enum class Relation { le, ge, eq };
const char* to_string(Relation r);

struct Check {
  std::string id;
  double value = 0.0;
  double threshold = 0.0;
  Relation relation = Relation::le;
  bool pass = false;
};

struct Report {
  std::string suite;
  Params params;
  std::vector<Check> checks;
  /// Dirac-dual-Dirac residuals, filled by the bott suite.
  std::vector<bott::TableRow> table;
  double seconds = 0.0;

  bool passed() const;
};

inline constexpr int kCriteria = 11;

/// clifford, schwartz, oscillator, fredholm, bott, all.
const std::vector<std::string>& suite_names();
/// Criteria run by a suite; throws UsageError for unknown names.
std::vector<int> suite_criteria(const std::string& suite);
/// Wall-clock budget of a criterion in seconds.
double runtime_limit(int criterion);

/// One criterion on its own; the table is filled for criterion 8.
Report run_criterion(int criterion, const Params& params);
Report run_suite(const std::string& suite, const Params& params);

std::string report_json(const Report& r);
/// id,value,threshold,relation,pass
std::string checks_csv(const Report& r);
/// t,residual_u,residual_v
std::string table_csv(const std::vector<bott::TableRow>& rows);

}  // namespace speck::verify
