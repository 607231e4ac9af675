// speck: verification harness and index calculator.
//
//   speck verify <suite> [--dim N] [--cutoff N] [--margin N] [--tmax T]
//                [--seed S] [--tol-scale X] [--format csv|json] [--parallel]
//   speck index <file.json | ->
//
// Exit codes: 0 pass, 1 check failure, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <variant>

#include <CLI11.hpp>

#include "speck/errors.hpp"
#include "speck/fredholm.hpp"
#include "speck/json_io.hpp"
#include "speck/verify.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

int run_verify(const std::string& suite, const speck::verify::Params& params,
               const std::string& format, const std::string& summary_path) {
  const auto report = speck::verify::run_suite(suite, params);
  const std::string summary = speck::verify::report_json(report);
  if (format == "json") {
    std::cout << summary << '\n';
  } else {
    std::cout << (report.table.empty() ? speck::verify::checks_csv(report)
                                       : speck::verify::table_csv(report.table));
    if (!summary_path.empty()) {
      std::ofstream(summary_path) << summary << '\n';
    } else {
      std::cerr << summary << '\n';
    }
  }
  return report.passed() ? kPass : kFail;
}

int run_index(const std::string& path) {
  const std::string text =
      path == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {})
                  : speck::json_io::read_file(path);
  const auto input = speck::json_io::parse_fredholm(text);
  std::vector<long> values;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, speck::fredholm::FredholmMap>) {
          const auto r = speck::fredholm::index(v);
          values = r.index.values;
          std::cout << speck::json_io::to_json(r) << '\n';
        } else {
          const auto r = speck::fredholm::graded_index(v);
          values = r.index.values;
          std::cout << speck::json_io::to_json(r) << '\n';
        }
      },
      input.value);
  if (input.expected_index && *input.expected_index != values) {
    std::cerr << "index differs from expected_index\n";
    return kFail;
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral K-theory verification harness"};
  app.require_subcommand(1);

  speck::verify::Params params;
  params.fixtures_dir = SPECK_FIXTURE_DIR;
  std::string suite, format = "json", summary_path;
  int cutoff = 0;

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite to run")
      ->required()
      ->check(CLI::IsMember(speck::verify::suite_names()));
  verify->add_option("--dim", params.dim, "Dimension of V = R^n (1 or 2)");
  verify->add_option("--cutoff", cutoff, "Hermite levels per coordinate");
  verify->add_option("--margin", params.margin, "Boundary levels excluded from interior norms");
  verify->add_option("--tmax", params.tmax, "Largest t of the residual table");
  verify->add_option("--seed", params.seed, "Seed for all random draws");
  verify->add_option("--tol-scale", params.tol_scale, "Multiplier for absolute tolerances");
  verify->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  verify->add_flag("--parallel", params.parallel, "Run independent checks concurrently");
  verify->add_option("--fixtures", params.fixtures_dir, "Directory of Fredholm JSON fixtures");
  verify->add_option("--summary", summary_path,
                     "With --format csv, write the JSON summary here instead of stderr");

  std::string input_path;
  auto* index = app.add_subcommand("index", "Print the K0 class of a Fredholm map or cycle");
  index->add_option("input", input_path, "JSON file, or - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (verify->parsed()) {
      if (cutoff != 0) params.cutoff = cutoff;
      return run_verify(suite, params, format, summary_path);
    }
    return run_index(input_path);
  } catch (const speck::verify::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const speck::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
