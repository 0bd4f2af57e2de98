#pragma once

// Experiments on the fraction ξ_n(y) = rk(y)/d^n of nonzero eigenvalues of a
// uniformly random y ∈ P_n: exact values by enumeration, the per-top rank
// sums R_n(a), the rank-sum inequality, and seeded Monte Carlo.

#include "pawspec/bigint.hpp"
#include "pawspec/iscore.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pawspec {

struct ExactTable {
  int d = 0;
  int n = 0;
  BigCount count;     // N_n
  BigCount rank_sum;  // R_n = Σ rk(y) over P_n
  BigRational expected_xi;
};

/// Exhaustive; throws std::length_error when N_n > 10⁶.
ExactTable exact_expected_xi(int d, int n);

struct TopRankSum {
  PartialBijection top;
  BigCount direct;      // Σ rk(y) over y with top a, by enumeration
  BigCount by_cycles;   // Σ_i c_i N_{n-1}^{rank(a)-c_i} Σ_{y_1..y_ci} rk(y_1⋯y_ci)
  BigCount unweighted;  // Σ_i c_i Σ_{y_1..y_ci} rk(y_1⋯y_ci), no multiplicity factor
};

/// Thrown when two independent computations of the same quantity disagree.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// One entry per a ∈ IS_d in enumeration order. Throws InvariantViolation if
/// direct != by_cycles for some a or the entries do not sum to R_n.
std::vector<TopRankSum> exact_Rn_by_top(int d, int n);

struct Lemma1Row {
  PartialBijection top;
  BigCount rank_sum;  // R_n(a)
  BigRational bound;  // R_{n-1} (N_{n-1}/d)^{rank(a)-1} rank(a)
  bool holds = false;
};

struct Lemma1Report {
  int d = 0;
  int n = 0;
  std::vector<Lemma1Row> rows;

  std::size_t violations() const;
};

/// Checks R_n(a) <= R_{n-1}(N_{n-1}/d)^{rank(a)-1} rank(a) exactly; n >= 2.
Lemma1Report check_lemma1(int d, int n);

struct TrialStats {
  int d = 0;
  int n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double mean_xi = 0.0;
  double stderr_xi = 0.0;  // sample sd / √trials
  std::map<std::string, double> mean_integrals;
};

/// Up to this many leaves the full structural spectrum feeds every
/// built-in test function; above it only ξ and ∫|z|² = ξ are recorded.
inline constexpr std::uint64_t kMaxSpectrumLeaves = 4096;

/// Deterministic in (seed, trials) for any worker count; workers == 0 uses
/// the hardware concurrency.
TrialStats monte_carlo_xi(int d, int n, std::uint64_t trials, std::uint64_t seed,
                          unsigned workers = 0);

struct ConvergenceRow {
  TrialStats stats;
  std::optional<double> ratio;        // mean_xi(n) / mean_xi(n-1)
  std::optional<double> ratio_bound;  // 1/d + 3·combined stderr
  std::optional<bool> pass;
};

/// Rows n = 1..n_max; trial seeds are shared across rows.
std::vector<ConvergenceRow> convergence_table(int d, int n_max, std::uint64_t trials,
                                              std::uint64_t seed, unsigned workers = 0);

/// Delta-method standard error of a ratio of two independent means.
double ratio_stderr(double num, double num_se, double den, double den_se);

struct SuiteResult {
  std::string name;
  bool ok = true;
  std::vector<std::string> lines;
};

/// Named verification suites: axioms, spectrum, lemma1, counts.
/// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name);
const std::vector<std::string>& suite_names();

/// d,n,trials,seed,mean_xi,stderr,ratio,ratio_bound,pass
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const ConvergenceRow& row);

} // namespace pawspec
