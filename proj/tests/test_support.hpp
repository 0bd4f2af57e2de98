#pragma once

#include "pawspec/iscore.hpp"
#include "pawspec/json_io.hpp"
#include "pawspec/wreath.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <map>
#include <string>
#include <vector>

namespace pawspec::test {

// Binary tree, level 2: the top swaps the two subtrees, the left subtree is
// carried over identically, the right subtree only keeps its root.
inline TreePA example_element()
{
  return TreePA::node(parse_partial_bijection("d=2: 1>2; 2>1"),
                      std::map<int, TreePA>{{1, TreePA::identity(2, 1)}, {2, TreePA::empty(2, 1)}});
}

inline std::string key(const TreePA& y) { return to_json(y).dump(); }

struct ChiSquare {
  double statistic = 0.0;
  double critical = 0.0;
  bool passes() const { return statistic <= critical; }
};

/// Goodness of fit of `counts` (one per class, zero-filled) against uniform.
inline ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& counts, double alpha)
{
  double total = 0.0;
  for (auto c : counts)
    total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  ChiSquare r;
  for (auto c : counts) {
    const double diff = static_cast<double>(c) - expected;
    r.statistic += diff * diff / expected;
  }
  const boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  r.critical = boost::math::quantile(boost::math::complement(dist, alpha));
  return r;
}

/// |IS_d| by filtering every map {1..d} -> {0..d} for injectivity.
inline std::uint64_t brute_force_isd_count(int d)
{
  std::uint64_t total = 0;
  std::vector<int> t(d, 0);
  for (;;) {
    std::vector<bool> hit(d + 1, false);
    bool injective = true;
    for (int v : t) {
      if (v == 0)
        continue;
      injective = injective && !hit[v];
      hit[v] = true;
    }
    total += injective;
    int k = 0;
    while (k < d && ++t[k] > d)
      t[k++] = 0;
    if (k == d)
      return total;
  }
}

} // namespace pawspec::test
