#include "pawspec/spectrum.hpp"
#include "pawspec/wreath.hpp"
#include "pawspec/xplab.hpp"

#include <stdexcept>

namespace pawspec {

namespace {

void check(SuiteResult& r, bool ok, const std::string& what)
{
  r.lines.push_back((ok ? "ok   " : "FAIL ") + what);
  r.ok = r.ok && ok;
}

SuiteResult axioms_suite()
{
  SuiteResult r{"axioms", true, {}};
  for (int d = 1; d <= 3; ++d) {
    const auto all = enumerate_all(d);
    bool regular = true, assoc = true, commute = true;
    for (const auto& f : all) {
      const auto fi = inverse(f);
      regular = regular && compose(compose(f, fi), f) == f && compose(compose(fi, f), fi) == fi;
    }
    for (const auto& f : all)
      for (const auto& g : all)
        for (const auto& h : all)
          assoc = assoc && compose(compose(f, g), h) == compose(f, compose(g, h));
    for (const auto& e1 : all)
      for (const auto& e2 : all)
        if (e1.is_idempotent() && e2.is_idempotent())
          commute = commute && compose(e1, e2) == compose(e2, e1);
    const auto tag = " on IS_" + std::to_string(d) + " (" + std::to_string(all.size()) + " elements)";
    check(r, regular, "regularity f f^-1 f = f" + tag);
    check(r, assoc, "associativity" + tag);
    check(r, commute, "idempotents commute" + tag);
  }

  const auto p2 = enumerate_tree(2, 2);
  bool regular = true;
  for (const auto& y : p2)
    regular = regular && compose_tree(compose_tree(y, inverse_tree(y)), y) == y;
  check(r, regular, "y y^-1 y = y on all of P_2 (d=2)");

  Rng rng(20240601);
  const CountTable table(2, 3);
  bool assoc = true, functor = true;
  for (int k = 0; k < 10'000; ++k) {
    const auto x = sample_uniform_tree(table, 3, rng);
    const auto y = sample_uniform_tree(table, 3, rng);
    const auto z = sample_uniform_tree(table, 3, rng);
    const auto xy = compose_tree(x, y);
    assoc = assoc && compose_tree(xy, z) == compose_tree(x, compose_tree(y, z));
    functor = functor && action_matrix(xy) == multiply(action_matrix(x), action_matrix(y));
  }
  check(r, assoc, "associativity on 10^4 random triples in P_3 (d=2)");
  check(r, functor, "A_{yz} = A_y A_z on 10^4 random pairs in P_3 (d=2)");
  return r;
}

SuiteResult spectrum_suite()
{
  SuiteResult r{"spectrum", true, {}};
  bool poly = true, counts = true;
  for (const auto& y : enumerate_tree(2, 2)) {
    poly = poly && verify_spectrum(y);
    const auto s = structural_spectrum(y);
    const auto rk = ultimate_rank_recursive(y);
    counts = counts && s.nonzero_count() == rk && survivor_indices(y).size() == rk;
  }
  check(r, poly, "char poly equals lambda^z prod(lambda^c - 1) on all 127 elements of P_2 (d=2)");
  check(r, counts, "nonzero eigenvalues = |survivors| = rk on all of P_2 (d=2)");
  return r;
}

SuiteResult lemma1_suite()
{
  SuiteResult r{"lemma1", true, {}};
  const std::pair<int, int> cases[] = {{1, 2}, {1, 3}, {2, 2}};
  for (const auto& [d, n] : cases) {
    const auto tag = " (d=" + std::to_string(d) + ", n=" + std::to_string(n) + ")";
    try {
      const auto rows = exact_Rn_by_top(d, n);
      check(r, true, "R_n(a) by enumeration equals the cycle formula for all " + std::to_string(rows.size()) +
                         " tops" + tag);
    } catch (const InvariantViolation& e) {
      check(r, false, std::string(e.what()) + tag);
      continue;
    }
    const auto report = check_lemma1(d, n);
    for (const auto& row : report.rows)
      if (!row.holds)
        r.lines.push_back("     violated at a = " + row.top.to_text() + ": R_n(a) = " + row.rank_sum.str() +
                          " > bound " + row.bound.str());
    check(r, report.violations() == 0,
          "R_n(a) <= R_{n-1} (N_{n-1}/d)^{rank a - 1} rank a for every a" + tag + ": " +
              std::to_string(report.violations()) + " violations");
  }
  return r;
}

SuiteResult counts_suite()
{
  SuiteResult r{"counts", true, {}};
  for (int d = 1; d <= 4; ++d) {
    const auto listed = enumerate_all(d).size();
    check(r, count_isd(d) == listed, "|IS_" + std::to_string(d) + "| = " + std::to_string(listed));
  }
  const std::pair<int, int> cases[] = {{1, 0}, {1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 1}, {2, 2}, {3, 1}};
  for (const auto& [d, n] : cases) {
    const auto counted = count_elements(d, n);
    const auto listed = enumerate_tree(d, n).size();
    check(r, counted == listed,
          "N_" + std::to_string(n) + " (d=" + std::to_string(d) + ") = " + counted.str() + ", enumerated " +
              std::to_string(listed));
  }
  return r;
}

} // namespace

const std::vector<std::string>& suite_names()
{
  static const std::vector<std::string> names{"axioms", "spectrum", "lemma1", "counts"};
  return names;
}

SuiteResult run_suite(const std::string& name)
{
  if (name == "axioms")
    return axioms_suite();
  if (name == "spectrum")
    return spectrum_suite();
  if (name == "lemma1")
    return lemma1_suite();
  if (name == "counts")
    return counts_suite();
  throw std::invalid_argument("unknown suite '" + name + "'");
}

} // namespace pawspec
