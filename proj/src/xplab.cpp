#include "pawspec/xplab.hpp"

#include "pawspec/format.hpp"
#include "pawspec/spectrum.hpp"
#include "pawspec/wreath.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <ostream>
#include <thread>

namespace pawspec {

namespace {

BigCount power_of(int base, int exp)
{
  BigCount r = 1;
  for (int k = 0; k < exp; ++k)
    r *= base;
  return r;
}

inline constexpr std::uint64_t kMaxCycleTuples = 50'000'000;

// Σ over all c-tuples of rk(y_1⋯y_c), built from prefix products.
class CycleProductSums {
public:
  explicit CycleProductSums(std::vector<TreePA> elements)
    : elements_(std::move(elements))
  {}

  const BigCount& get(std::size_t c)
  {
    auto it = cache_.find(c);
    if (it != cache_.end())
      return it->second;
    BigCount tuples = 1;
    for (std::size_t k = 0; k < c; ++k)
      tuples *= elements_.size();
    if (tuples > kMaxCycleTuples)
      throw std::length_error("cycle product sum over too many tuples");
    BigCount total = 0;
    for (const auto& y : elements_)
      accumulate(y, c - 1, total);
    return cache_.emplace(c, std::move(total)).first->second;
  }

private:
  void accumulate(const TreePA& prefix, std::size_t remaining, BigCount& total) const
  {
    if (remaining == 0) {
      total += ultimate_rank_recursive(prefix);
      return;
    }
    for (const auto& y : elements_)
      accumulate(compose_tree(prefix, y), remaining - 1, total);
  }

  std::vector<TreePA> elements_;
  std::map<std::size_t, BigCount> cache_;
};

struct TrialOutcome {
  double xi = 0.0;
  std::vector<double> integrals;
};

} // namespace

ExactTable exact_expected_xi(int d, int n)
{
  const auto elements = enumerate_tree(d, n);
  ExactTable t;
  t.d = d;
  t.n = n;
  t.count = elements.size();
  t.rank_sum = 0;
  for (const auto& y : elements)
    t.rank_sum += ultimate_rank_recursive(y);
  t.expected_xi = BigRational(t.rank_sum, power_of(d, n) * t.count);
  return t;
}

std::vector<TopRankSum> exact_Rn_by_top(int d, int n)
{
  if (n < 1)
    throw std::invalid_argument("exact_Rn_by_top: n must be >= 1");
  const CountTable counts(d, n);
  const BigCount& below = counts.count(n - 1);

  std::map<PartialBijection, BigCount> direct;
  BigCount total = 0;
  for (const auto& y : enumerate_tree(d, n)) {
    const auto rk = ultimate_rank_recursive(y);
    direct[y.top()] += rk;
    total += rk;
  }

  CycleProductSums sums(enumerate_tree(d, n - 1));
  std::vector<TopRankSum> out;
  BigCount by_cycles_total = 0;
  for_each_partial_bijection(d, [&](const PartialBijection& a) {
    TopRankSum row{a, direct[a], 0, 0};
    for (const auto& cycle : decompose_cycles_chains(a).cycles) {
      const auto c = cycle.size();
      const auto& s = sums.get(c);
      row.unweighted += c * s;
      row.by_cycles += c * s * boost::multiprecision::pow(below, static_cast<unsigned>(a.rank() - c));
    }
    if (row.direct != row.by_cycles)
      throw InvariantViolation("R_n(a) mismatch for a = " + a.to_text() + ": enumeration " + row.direct.str() +
                               ", cycle formula " + row.by_cycles.str());
    by_cycles_total += row.by_cycles;
    out.push_back(std::move(row));
  });
  if (by_cycles_total != total)
    throw InvariantViolation("Σ_a R_n(a) = " + by_cycles_total.str() + " differs from R_n = " + total.str());
  return out;
}

std::size_t Lemma1Report::violations() const
{
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const Lemma1Row& r) { return !r.holds; }));
}

Lemma1Report check_lemma1(int d, int n)
{
  if (n < 2)
    throw std::invalid_argument("check_lemma1: n must be >= 2");
  const auto previous = exact_expected_xi(d, n - 1);
  Lemma1Report report{d, n, {}};
  for (auto& row : exact_Rn_by_top(d, n)) {
    const int r = row.top.rank();
    BigRational bound = 0;
    if (r > 0)
      bound = BigRational(previous.rank_sum * boost::multiprecision::pow(previous.count, static_cast<unsigned>(r - 1)) * r,
                          power_of(d, r - 1));
    const bool holds = BigRational(row.direct) <= bound;
    report.rows.push_back({std::move(row.top), std::move(row.direct), std::move(bound), holds});
  }
  return report;
}

TrialStats monte_carlo_xi(int d, int n, std::uint64_t trials, std::uint64_t seed, unsigned workers)
{
  if (trials < 1)
    throw std::invalid_argument("monte_carlo_xi: trials must be >= 1");
  if (d < 1 || n < 0)
    throw std::invalid_argument("monte_carlo_xi: need d >= 1 and n >= 0");

  const CountTable table(d, n);
  const double leaves = std::pow(static_cast<double>(d), n);
  const bool full_spectrum = leaves <= static_cast<double>(kMaxSpectrumLeaves);
  const auto& fns = builtin_test_functions();
  const std::uint64_t stream = (static_cast<std::uint64_t>(d) << 32) | static_cast<std::uint64_t>(n);

  std::vector<TrialOutcome> outcomes(trials);
  auto run = [&](std::uint64_t t) {
    auto rng = trial_rng(seed, t, stream);
    const auto y = sample_uniform_tree(table, n, rng);
    TrialOutcome& o = outcomes[t];
    o.xi = static_cast<double>(ultimate_rank_recursive(y)) / leaves;
    if (full_spectrum) {
      const auto measure = measure_from_summary(structural_spectrum(y));
      for (const auto& fn : fns)
        o.integrals.push_back(integrate(fn.f, measure).real());
    }
  };

  if (workers == 0)
    workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));
  if (workers == 1) {
    for (std::uint64_t t = 0; t < trials; ++t)
      run(t);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::uint64_t t = w; t < trials; t += workers)
            run(t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool)
      th.join();
    for (auto& e : errors)
      if (e)
        std::rethrow_exception(e);
  }

  // Reduce in trial order so the result is independent of scheduling.
  TrialStats s{d, n, trials, seed, 0.0, 0.0, {}};
  double sum = 0.0;
  std::vector<double> integral_sums(full_spectrum ? fns.size() : 0, 0.0);
  for (const auto& o : outcomes) {
    sum += o.xi;
    for (std::size_t k = 0; k < integral_sums.size(); ++k)
      integral_sums[k] += o.integrals[k];
  }
  const double count = static_cast<double>(trials);
  s.mean_xi = sum / count;
  if (trials > 1) {
    double sq = 0.0;
    for (const auto& o : outcomes)
      sq += (o.xi - s.mean_xi) * (o.xi - s.mean_xi);
    s.stderr_xi = std::sqrt(sq / (count - 1.0) / count);
  }
  if (full_spectrum) {
    for (std::size_t k = 0; k < fns.size(); ++k)
      s.mean_integrals[fns[k].name] = integral_sums[k] / count;
  } else {
    s.mean_integrals["one"] = 1.0;
    s.mean_integrals["abs2"] = s.mean_xi;
  }
  return s;
}

double ratio_stderr(double num, double num_se, double den, double den_se)
{
  if (den == 0.0)
    return std::numeric_limits<double>::infinity();
  const double ratio = num / den;
  const double rel_den = den_se / den;
  if (num == 0.0)
    return num_se / std::abs(den);
  const double rel_num = num_se / num;
  return std::abs(ratio) * std::sqrt(rel_num * rel_num + rel_den * rel_den);
}

std::vector<ConvergenceRow> convergence_table(int d, int n_max, std::uint64_t trials, std::uint64_t seed,
                                              unsigned workers)
{
  if (n_max < 1)
    throw std::invalid_argument("convergence_table: n_max must be >= 1");
  std::vector<ConvergenceRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    ConvergenceRow row{monte_carlo_xi(d, n, trials, seed, workers), {}, {}, {}};
    if (!rows.empty()) {
      const auto& prev = rows.back().stats;
      if (prev.mean_xi > 0.0) {
        const double ratio = row.stats.mean_xi / prev.mean_xi;
        const double se = ratio_stderr(row.stats.mean_xi, row.stats.stderr_xi, prev.mean_xi, prev.stderr_xi);
        row.ratio = ratio;
        row.ratio_bound = 1.0 / d + 3.0 * se;
        row.pass = ratio <= *row.ratio_bound;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv_header(std::ostream& os)
{
  os << "d,n,trials,seed,mean_xi,stderr,ratio,ratio_bound,pass\n";
}

void write_csv_row(std::ostream& os, const ConvergenceRow& row)
{
  const auto& s = row.stats;
  os << s.d << ',' << s.n << ',' << s.trials << ',' << s.seed << ',' << format_double(s.mean_xi) << ','
     << format_double(s.stderr_xi) << ',';
  if (row.ratio)
    os << format_double(*row.ratio);
  os << ',';
  if (row.ratio_bound)
    os << format_double(*row.ratio_bound);
  os << ',';
  if (row.pass)
    os << (*row.pass ? "true" : "false");
  os << '\n';
}

} // namespace pawspec
