#include "pawspec/cli.hpp"

#include "pawspec/format.hpp"
#include "pawspec/json_io.hpp"
#include "pawspec/spectrum.hpp"
#include "pawspec/wreath.hpp"
#include "pawspec/xplab.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace pawspec {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TreePA load_element(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot open element file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("element file '" + path + "' is not JSON: " + e.what());
  }
  return tree_from_json(j);
}

std::uint64_t effective_seed(std::uint64_t seed)
{
  const char* env = std::getenv("PAWSPEC_SEED");
  if (env == nullptr || *env == '\0')
    return seed;
  std::string_view text(env);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw UsageError("PAWSPEC_SEED is not an unsigned integer: '" + std::string(text) + "'");
  return v;
}

void write_stats_json(std::ostream& out, const TrialStats& s)
{
  nlohmann::json j{{"d", s.d},           {"n", s.n},           {"trials", s.trials},
                   {"seed", s.seed},     {"mean_xi", s.mean_xi}, {"stderr", s.stderr_xi},
                   {"mean_integrals", s.mean_integrals}};
  out << j.dump() << '\n';
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Partial automorphisms of regular rooted trees and the spectra of their action matrices",
               "pawspec"};
  app.require_subcommand(1);

  int d = 2;
  int n = 1;
  int n_max = 8;
  std::uint64_t seed = 1;
  std::uint64_t trials = 10'000;
  std::uint64_t sample_count = 1;
  unsigned workers = 0;
  std::string element_path;
  std::string enumerate_format;
  std::string matrix_format;
  std::string spectrum_format;
  std::string montecarlo_format;
  std::string converge_format;
  std::string suite;

  auto* count = app.add_subcommand("count", "Print N_n = |P_n|");
  count->add_option("--d", d, "Tree degree")->required()->check(CLI::Range(1, 64));
  count->add_option("--n", n, "Tree level")->required()->check(CLI::NonNegativeNumber);

  auto* enumerate = app.add_subcommand("enumerate", "List every element of P_n, one JSON object per line");
  enumerate->add_option("--d", d)->required()->check(CLI::Range(1, 6));
  enumerate->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
  enumerate->add_option("--out", enumerate_format, "Output format")->default_val("json")->check(CLI::IsMember({"json"}));

  auto* sample = app.add_subcommand("sample", "Draw uniform elements of P_n, one JSON object per line");
  sample->add_option("--d", d)->required()->check(CLI::Range(1, 64));
  sample->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
  sample->add_option("--seed", seed)->required();
  sample->add_option("--count", sample_count)->default_val(1)->check(CLI::PositiveNumber);

  auto* matrix = app.add_subcommand("matrix", "Export the action matrix of an element");
  matrix->add_option("--element", element_path, "Element JSON file")->required();
  matrix->add_option("--out", matrix_format)->default_val("coords")->check(CLI::IsMember({"coords"}));

  auto* spectrum = app.add_subcommand("spectrum", "Exact spectrum (json) or eigenvalue measure (csv)");
  spectrum->add_option("--element", element_path, "Element JSON file")->required();
  spectrum->add_option("--out", spectrum_format)->default_val("json")->check(CLI::IsMember({"json", "csv"}));

  auto* exact = app.add_subcommand("exact", "Exact E xi_n by exhaustive enumeration");
  exact->add_option("--d", d)->required()->check(CLI::Range(1, 6));
  exact->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);

  auto* montecarlo = app.add_subcommand("montecarlo", "Monte Carlo estimate of E xi_n");
  montecarlo->add_option("--d", d)->required()->check(CLI::Range(1, 64));
  montecarlo->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
  montecarlo->add_option("--trials", trials)->required()->check(CLI::PositiveNumber);
  montecarlo->add_option("--seed", seed)->required();
  montecarlo->add_option("--out", montecarlo_format)->default_val("csv")->check(CLI::IsMember({"csv", "json"}));
  montecarlo->add_option("--workers", workers, "Worker threads, 0 = all cores")->default_val(0);

  auto* converge = app.add_subcommand("converge", "Monte Carlo E xi_n for n = 1..nmax with ratio checks");
  converge->add_option("--d", d)->required()->check(CLI::Range(1, 64));
  converge->add_option("--nmax", n_max)->required()->check(CLI::PositiveNumber);
  converge->add_option("--trials", trials)->required()->check(CLI::PositiveNumber);
  converge->add_option("--seed", seed)->required();
  converge->add_option("--out", converge_format)->default_val("csv")->check(CLI::IsMember({"csv"}));
  converge->add_option("--workers", workers, "Worker threads, 0 = all cores")->default_val(0);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (count->parsed()) {
      out << count_elements(d, n) << '\n';
    } else if (enumerate->parsed()) {
      for (const auto& y : enumerate_tree(d, n))
        out << to_json(y).dump() << '\n';
    } else if (sample->parsed()) {
      const CountTable table(d, n);
      const auto s = effective_seed(seed);
      for (std::uint64_t k = 0; k < sample_count; ++k) {
        auto rng = trial_rng(s, k);
        out << to_json(sample_uniform_tree(table, n, rng)).dump() << '\n';
      }
    } else if (matrix->parsed()) {
      write_coords(out, action_matrix(load_element(element_path)));
    } else if (spectrum->parsed()) {
      const auto summary = structural_spectrum(load_element(element_path));
      if (spectrum_format == "csv")
        write_measure_csv(out, measure_from_summary(summary));
      else
        out << to_json(summary).dump() << '\n';
    } else if (exact->parsed()) {
      const auto t = exact_expected_xi(d, n);
      nlohmann::json j{{"d", t.d},
                       {"n", t.n},
                       {"N_n", t.count.str()},
                       {"R_n", t.rank_sum.str()},
                       {"expected_xi", t.expected_xi.str()},
                       {"expected_xi_decimal", static_cast<double>(t.expected_xi)}};
      out << j.dump() << '\n';
    } else if (montecarlo->parsed()) {
      const auto stats = monte_carlo_xi(d, n, trials, effective_seed(seed), workers);
      if (montecarlo_format == "json") {
        write_stats_json(out, stats);
      } else {
        write_csv_header(out);
        write_csv_row(out, ConvergenceRow{stats, {}, {}, {}});
      }
    } else if (converge->parsed()) {
      const auto rows = convergence_table(d, n_max, trials, effective_seed(seed), workers);
      write_csv_header(out);
      for (const auto& row : rows)
        write_csv_row(out, row);
    } else if (verify->parsed()) {
      const auto result = run_suite(suite);
      for (const auto& line : result.lines)
        out << line << '\n';
      out << "suite " << result.name << ": " << (result.ok ? "passed" : "FAILED") << '\n';
      return result.ok ? kExitOk : kExitVerifyFailed;
    }
  } catch (const InvariantViolation& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerifyFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

} // namespace pawspec
