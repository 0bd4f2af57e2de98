#pragma once

// The n-th partial wreath power P_n of IS_d, read as partial automorphisms
// of the d-regular n-level rooted tree. An element is a top partial
// bijection a together with a level n-1 element for every x ∈ dom(a).

#include "pawspec/bigint.hpp"
#include "pawspec/iscore.hpp"
#include "pawspec/random.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace pawspec {

/// Digits (x_1..x_n), each in 1..d. Leaf index is 1 + Σ (x_k - 1) d^(n-k).
using LeafPath = std::vector<int>;

namespace detail {
struct TreeAccess;
}

class TreePA {
public:
  /// The unique level-0 element (root only).
  static TreePA root(int degree);
  /// Throws std::invalid_argument unless children keys equal dom(top) and
  /// every child has level `level - 1` and the same degree.
  static TreePA node(PartialBijection top, const std::map<int, TreePA>& children);
  /// Same, children listed in ascending domain order.
  static TreePA node(PartialBijection top, std::vector<TreePA> children);

  static TreePA identity(int degree, int level);
  /// Top empty: the domain is the root alone.
  static TreePA empty(int degree, int level);

  int degree() const { return degree_; }
  int level() const { return level_; }
  /// Only meaningful for level >= 1.
  const PartialBijection& top() const { return top_; }
  /// Throws std::out_of_range if x ∉ dom(top).
  const TreePA& child(int x) const;

  /// Every vertex in the domain at every level (a full automorphism).
  bool is_total() const;
  bool is_idempotent() const;

  friend bool operator==(const TreePA& lhs, const TreePA& rhs);

private:
  friend struct detail::TreeAccess;

  TreePA(int degree, int level, PartialBijection top, std::vector<std::shared_ptr<const TreePA>> children);

  int degree_;
  int level_;
  PartialBijection top_;
  // Indexed by point - 1; null off the domain of top_.
  std::vector<std::shared_ptr<const TreePA>> children_;
};

/// (f, a)·(g, b) = (f g^a, ab); shape mismatch throws std::invalid_argument.
TreePA compose_tree(const TreePA& y, const TreePA& z);
/// Reverses the top and the children recursively.
TreePA inverse_tree(const TreePA& y);

/// Throws std::invalid_argument if the path length differs from the level
/// or a digit is out of range.
std::optional<LeafPath> apply_to_path(const TreePA& y, const LeafPath& path);

std::uint64_t leaf_count(int degree, int level);
/// 0-based leaf index of a path.
std::uint64_t leaf_index(int degree, const LeafPath& path);
LeafPath leaf_path(int degree, int level, std::uint64_t index);

inline constexpr std::int64_t kUndefinedLeaf = -1;
inline constexpr std::uint64_t kMaxLeafActionSize = std::uint64_t{1} << 24;

/// Leaf action as 0-based indices, kUndefinedLeaf off the domain.
std::vector<std::int64_t> leaf_action(const TreePA& y);

/// Number of leaves in the domain; recursive, never materialises the leaves.
std::uint64_t leaf_rank(const TreePA& y);

/// Leaves in dom y^m for every m >= 1, as 0-based sorted indices.
std::vector<std::uint64_t> survivor_indices(const TreePA& y);
std::vector<LeafPath> survivor_set(const TreePA& y);

/// rk via cycles of the top and products of children along each cycle.
std::uint64_t ultimate_rank_recursive(const TreePA& y);

struct IdempotentAutomorphism {
  TreePA idempotent;
  TreePA automorphism;
};

/// y = e·σ with e the identity on dom(y) and σ a full automorphism.
IdempotentAutomorphism decompose_idempotent_automorphism(const TreePA& y);

/// N_0..N_max for one degree, plus the per-level rank-class weights used by
/// the exact sampler.
class CountTable {
public:
  CountTable(int degree, int max_level);

  int degree() const { return degree_; }
  int max_level() const { return static_cast<int>(counts_.size()) - 1; }
  const BigCount& count(int level) const { return counts_.at(level); }
  /// C(d,i)² i! N_{level-1}^i for i = 0..d; level >= 1.
  const std::vector<BigCount>& weights(int level) const { return weights_.at(level - 1); }

private:
  int degree_;
  std::vector<BigCount> counts_;
  std::vector<std::vector<BigCount>> weights_;
};

BigCount count_elements(int degree, int level);

inline constexpr std::uint64_t kMaxEnumerateTree = 1'000'000;

/// Every element of P_n once, top-major (IS_d enumeration order) then
/// children lexicographic. Throws std::length_error if N_n > 10⁶.
std::vector<TreePA> enumerate_tree(int degree, int level);

/// Exactly uniform element of P_n; table must reach `level`.
TreePA sample_uniform_tree(const CountTable& table, int level, Rng& rng);
TreePA sample_uniform_tree(int degree, int level, Rng& rng);

} // namespace pawspec
