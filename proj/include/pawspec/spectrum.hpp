#pragma once

// Spectra of leaf-action matrices. A_y is a partial permutation matrix, so
// its spectrum is exact: the c-th roots of unity for every cycle of length c
// in the leaf action restricted to the survivors, and 0 for everything else.

#include "pawspec/bigint.hpp"
#include "pawspec/wreath.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace pawspec {

struct ActionMatrix {
  std::uint64_t dim = 0;
  /// 1-based (row, col), sorted by row.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries;

  /// At most one entry per row and per column, all within 1..dim.
  bool is_partial_injection() const;
  friend bool operator==(const ActionMatrix&, const ActionMatrix&) = default;
};

inline constexpr std::uint64_t kMaxActionMatrixDim = std::uint64_t{1} << 16;

/// Entry (i, j) iff y maps leaf i to leaf j. Throws std::length_error if d^n > 2¹⁶.
ActionMatrix action_matrix(const TreePA& y);

/// Boolean-integer product; entries stay 0/1 for partial injections.
ActionMatrix multiply(const ActionMatrix& lhs, const ActionMatrix& rhs);

struct SpectralSummary {
  std::uint64_t dim = 0;
  std::uint64_t zero_mult = 0;
  /// Sorted ascending.
  std::vector<std::uint64_t> cycle_lengths;

  std::uint64_t nonzero_count() const;
  friend bool operator==(const SpectralSummary&, const SpectralSummary&) = default;
};

SpectralSummary structural_spectrum(const TreePA& y);

/// Coefficients low to high, so poly[k] multiplies λ^k.
using IntPolynomial = std::vector<BigCount>;
using IntMatrix = std::vector<std::vector<BigCount>>;

inline constexpr std::uint64_t kMaxCharPolyDim = 64;

IntMatrix to_dense(const ActionMatrix& m);

/// det(λI - M) by Faddeev–LeVerrier with exact divisions.
IntPolynomial char_poly_exact(const IntMatrix& m);
/// Throws std::length_error if dim > 64.
IntPolynomial char_poly_exact(const ActionMatrix& m);

/// λ^zero_mult · Π (λ^c - 1).
IntPolynomial expected_char_poly(const SpectralSummary& s);

bool verify_spectrum(const TreePA& y);

/// e^{2πi k / c} with k/c in lowest terms; c == 0 encodes the point 0.
struct SpectralPoint {
  std::uint64_t k = 0;
  std::uint64_t c = 0;

  std::complex<double> value() const;
  friend auto operator<=>(const SpectralPoint&, const SpectralPoint&) = default;
};

struct Atom {
  SpectralPoint point;
  double weight = 0.0;
};

struct EmpiricalMeasure {
  /// Sorted by point, zero first.
  std::vector<Atom> atoms;

  double total_weight() const;
};

EmpiricalMeasure measure_from_summary(const SpectralSummary& s);

using TestFunction = std::function<std::complex<double>(std::complex<double>)>;

std::complex<double> integrate(const TestFunction& f, const EmpiricalMeasure& m);

struct NamedTestFunction {
  std::string name;
  TestFunction f;
};

/// 1, Re z, Im z, |z|², Re z², Im z².
const std::vector<NamedTestFunction>& builtin_test_functions();
TestFunction power_function(int k);

void write_coords(std::ostream& os, const ActionMatrix& m);
ActionMatrix read_coords(std::istream& is);
void write_measure_csv(std::ostream& os, const EmpiricalMeasure& m);

} // namespace pawspec
