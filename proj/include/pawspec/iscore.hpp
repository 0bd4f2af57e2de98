#pragma once

// The symmetric inverse semigroup IS_d of partial bijections of {1..d}.
//
// Composition is applied left to right throughout: compose(f, g) maps
// x to g(f(x)) on dom(f) ∩ f⁻¹(dom g).

#include "pawspec/bigint.hpp"
#include "pawspec/random.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pawspec {

class PartialBijection {
public:
  /// The empty map of degree d.
  explicit PartialBijection(int degree);

  /// Builds from 1-based targets; targets[x-1] == 0 means x ∉ dom.
  /// Throws std::invalid_argument on out-of-range or non-injective input.
  PartialBijection(int degree, std::vector<int> targets);

  static PartialBijection identity(int degree);
  static PartialBijection empty(int degree) { return PartialBijection(degree); }
  /// Identity restricted to the given points.
  static PartialBijection partial_identity(int degree, const std::vector<int>& points);

  int degree() const { return static_cast<int>(targets_.size()); }

  std::optional<int> operator()(int x) const;
  bool defined_at(int x) const { return x >= 1 && x <= degree() && targets_[x - 1] != 0; }
  bool in_image(int y) const;

  std::vector<int> domain() const;
  std::vector<int> image() const;
  int rank() const;

  bool is_idempotent() const;
  bool is_total() const { return rank() == degree(); }

  /// 1-based targets with 0 for undefined points.
  const std::vector<int>& targets() const { return targets_; }

  /// "1>2;2>1" with the given separator between arrows.
  std::string arrows(std::string_view sep = ";") const;
  /// "d=3: 1>2; 2>1"
  std::string to_text() const;

  friend bool operator==(const PartialBijection&, const PartialBijection&) = default;
  friend auto operator<=>(const PartialBijection&, const PartialBijection&) = default;

private:
  std::vector<int> targets_;
};

struct CycleChainDecomposition {
  std::vector<std::vector<int>> cycles;
  std::vector<std::vector<int>> chains;
};

PartialBijection compose(const PartialBijection& f, const PartialBijection& g);
PartialBijection inverse(const PartialBijection& f);
inline int rank(const PartialBijection& f) { return f.rank(); }

/// Cycles start at their least element; chains start outside the image.
/// Both lists are ordered by their first element.
CycleChainDecomposition decompose_cycles_chains(const PartialBijection& f);

/// Total bijection agreeing with f on dom(f). Points outside dom(f) are
/// matched to points outside im(f) in ascending order.
PartialBijection extend_to_permutation(const PartialBijection& f);

/// |IS_d| = Σ_i C(d,i)² i!.
BigCount count_isd(int degree);

/// Rank-class weights C(d,i)² i! · base^i for i = 0..d.
std::vector<BigCount> rank_class_weights(int degree, const BigCount& base);

inline constexpr int kMaxEnumerateDegree = 6;

/// Visits every element of IS_d once, rank-major then lexicographic by
/// (domain, image, bijection). Throws std::length_error for d > 6.
void for_each_partial_bijection(int degree, const std::function<void(const PartialBijection&)>& visit);
std::vector<PartialBijection> enumerate_all(int degree);

/// Uniform element of IS_d.
PartialBijection sample_uniform_isd(int degree, Rng& rng);

/// Uniform bijection between a uniform i-subset and a uniform i-subset.
PartialBijection sample_with_rank(int degree, int rank, Rng& rng);

/// Parses "d=3: 1>2; 2>1".
PartialBijection parse_partial_bijection(std::string_view text);
/// Parses an arrow list "1>2;2>1" for a known degree. Empty string is the empty map.
PartialBijection parse_arrows(int degree, std::string_view arrows);

} // namespace pawspec
