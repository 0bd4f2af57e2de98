#include "pawspec/spectrum.hpp"

#include "pawspec/format.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pawspec {

bool ActionMatrix::is_partial_injection() const
{
  std::vector<bool> row_used(dim + 1, false);
  std::vector<bool> col_used(dim + 1, false);
  for (const auto& [i, j] : entries) {
    if (i < 1 || i > dim || j < 1 || j > dim || row_used[i] || col_used[j])
      return false;
    row_used[i] = col_used[j] = true;
  }
  return true;
}

ActionMatrix action_matrix(const TreePA& y)
{
  std::uint64_t dim = 1;
  for (int k = 0; k < y.level(); ++k) {
    dim *= static_cast<std::uint64_t>(y.degree());
    if (dim > kMaxActionMatrixDim)
      throw std::length_error("action matrix: d^n exceeds " + std::to_string(kMaxActionMatrixDim));
  }
  const auto action = leaf_action(y);
  ActionMatrix m{dim, {}};
  for (std::uint64_t i = 0; i < dim; ++i)
    if (action[i] != kUndefinedLeaf)
      m.entries.emplace_back(i + 1, static_cast<std::uint64_t>(action[i]) + 1);
  return m;
}

ActionMatrix multiply(const ActionMatrix& lhs, const ActionMatrix& rhs)
{
  if (lhs.dim != rhs.dim)
    throw std::invalid_argument("multiply: dimension mismatch");
  std::multimap<std::uint64_t, std::uint64_t> rhs_rows(rhs.entries.begin(), rhs.entries.end());
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> sums;
  for (const auto& [i, j] : lhs.entries) {
    const auto [lo, hi] = rhs_rows.equal_range(j);
    for (auto it = lo; it != hi; ++it)
      ++sums[{i, it->second}];
  }
  ActionMatrix out{lhs.dim, {}};
  for (const auto& [ij, count] : sums) {
    if (count != 1)
      throw std::domain_error("multiply: product is not a 0/1 matrix");
    out.entries.push_back(ij);
  }
  return out;
}

std::uint64_t SpectralSummary::nonzero_count() const
{
  return std::accumulate(cycle_lengths.begin(), cycle_lengths.end(), std::uint64_t{0});
}

SpectralSummary structural_spectrum(const TreePA& y)
{
  const auto action = leaf_action(y);
  const auto survivors = survivor_indices(y);
  SpectralSummary s;
  s.dim = action.size();
  s.zero_mult = s.dim - survivors.size();
  std::vector<char> seen(action.size(), 0);
  for (auto v : survivors) {
    if (seen[v])
      continue;
    std::uint64_t length = 0;
    for (auto cur = v; !seen[cur]; cur = static_cast<std::uint64_t>(action[cur])) {
      seen[cur] = 1;
      ++length;
    }
    s.cycle_lengths.push_back(length);
  }
  std::sort(s.cycle_lengths.begin(), s.cycle_lengths.end());
  return s;
}

IntMatrix to_dense(const ActionMatrix& m)
{
  IntMatrix a(m.dim, std::vector<BigCount>(m.dim, 0));
  for (const auto& [i, j] : m.entries)
    a[i - 1][j - 1] += 1;
  return a;
}

IntPolynomial char_poly_exact(const IntMatrix& a)
{
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n)
      throw std::invalid_argument("char_poly_exact: matrix is not square");

  IntPolynomial coeff(n + 1, 0);
  coeff[n] = 1;
  IntMatrix prev(n, std::vector<BigCount>(n, 0));  // M_{k-1}
  IntMatrix cur(n, std::vector<BigCount>(n, 0));
  IntMatrix am(n, std::vector<BigCount>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        BigCount acc = 0;
        for (std::size_t l = 0; l < n; ++l)
          if (a[i][l] != 0 && prev[l][j] != 0)
            acc += a[i][l] * prev[l][j];
        cur[i][j] = std::move(acc);
      }
      cur[i][i] += coeff[n - k + 1];
    }
    // c_{n-k} = -tr(A M_k) / k
    BigCount trace = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (a[i][l] != 0 && cur[l][i] != 0)
          trace += a[i][l] * cur[l][i];
    if (trace % k != 0)
      throw std::logic_error("char_poly_exact: inexact division");
    coeff[n - k] = -trace / k;
    std::swap(prev, cur);
  }
  return coeff;
}

IntPolynomial char_poly_exact(const ActionMatrix& m)
{
  if (m.dim > kMaxCharPolyDim)
    throw std::length_error("char_poly_exact: dimension " + std::to_string(m.dim) + " exceeds " +
                            std::to_string(kMaxCharPolyDim));
  return char_poly_exact(to_dense(m));
}

IntPolynomial expected_char_poly(const SpectralSummary& s)
{
  IntPolynomial p(s.zero_mult + 1, 0);
  p[s.zero_mult] = 1;
  for (auto c : s.cycle_lengths) {
    IntPolynomial next(p.size() + c, 0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      next[k + c] += p[k];
      next[k] -= p[k];
    }
    p = std::move(next);
  }
  return p;
}

bool verify_spectrum(const TreePA& y)
{
  const auto m = action_matrix(y);
  if (m.dim > kMaxCharPolyDim)
    throw std::length_error("verify_spectrum: d^n exceeds " + std::to_string(kMaxCharPolyDim));
  return char_poly_exact(m) == expected_char_poly(structural_spectrum(y));
}

std::complex<double> SpectralPoint::value() const
{
  if (c == 0)
    return {0.0, 0.0};
  // Quarter turns are returned exactly.
  if ((4 * k) % c == 0) {
    switch ((4 * k / c) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
  }
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(c);
  return {std::cos(theta), std::sin(theta)};
}

double EmpiricalMeasure::total_weight() const
{
  double total = 0.0;
  for (const auto& atom : atoms)
    total += atom.weight;
  return total;
}

EmpiricalMeasure measure_from_summary(const SpectralSummary& s)
{
  if (s.dim == 0)
    throw std::invalid_argument("measure_from_summary: zero dimension");
  std::map<SpectralPoint, std::uint64_t> mult;
  if (s.zero_mult > 0)
    mult[SpectralPoint{0, 0}] = s.zero_mult;
  for (auto c : s.cycle_lengths) {
    for (std::uint64_t k = 0; k < c; ++k) {
      const auto g = std::gcd(k, c);
      ++mult[SpectralPoint{k / g, c / g}];
    }
  }
  EmpiricalMeasure m;
  for (const auto& [point, count] : mult)
    m.atoms.push_back({point, static_cast<double>(count) / static_cast<double>(s.dim)});
  return m;
}

std::complex<double> integrate(const TestFunction& f, const EmpiricalMeasure& m)
{
  std::complex<double> total{0.0, 0.0};
  for (const auto& atom : m.atoms)
    total += atom.weight * f(atom.point.value());
  return total;
}

const std::vector<NamedTestFunction>& builtin_test_functions()
{
  using C = std::complex<double>;
  static const std::vector<NamedTestFunction> fns{
      {"one", [](C) { return C{1.0, 0.0}; }},
      {"re", [](C z) { return C{z.real(), 0.0}; }},
      {"im", [](C z) { return C{z.imag(), 0.0}; }},
      {"abs2", [](C z) { return C{std::norm(z), 0.0}; }},
      {"re_z2", [](C z) { return C{(z * z).real(), 0.0}; }},
      {"im_z2", [](C z) { return C{(z * z).imag(), 0.0}; }},
  };
  return fns;
}

TestFunction power_function(int k)
{
  if (k < 0)
    throw std::invalid_argument("power_function: negative exponent");
  return [k](std::complex<double> z) {
    std::complex<double> r{1.0, 0.0};
    for (int i = 0; i < k; ++i)
      r *= z;
    return r;
  };
}

void write_coords(std::ostream& os, const ActionMatrix& m)
{
  os << m.dim << ' ' << m.dim << ' ' << m.entries.size() << '\n';
  for (const auto& [i, j] : m.entries)
    os << i << ' ' << j << '\n';
}

ActionMatrix read_coords(std::istream& is)
{
  std::uint64_t rows = 0, cols = 0, count = 0;
  if (!(is >> rows >> cols >> count) || rows != cols)
    throw std::invalid_argument("coords: bad header");
  ActionMatrix m{rows, {}};
  for (std::uint64_t e = 0; e < count; ++e) {
    std::uint64_t i = 0, j = 0;
    if (!(is >> i >> j))
      throw std::invalid_argument("coords: truncated entry list");
    m.entries.emplace_back(i, j);
  }
  std::sort(m.entries.begin(), m.entries.end());
  if (!m.is_partial_injection())
    throw std::invalid_argument("coords: not a partial permutation matrix");
  return m;
}

void write_measure_csv(std::ostream& os, const EmpiricalMeasure& m)
{
  os << "re,im,weight\n";
  for (const auto& atom : m.atoms) {
    const auto z = atom.point.value();
    os << format_double(z.real()) << ',' << format_double(z.imag()) << ',' << format_double(atom.weight) << '\n';
  }
}

} // namespace pawspec
