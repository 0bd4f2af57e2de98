#include "pawspec/wreath.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pawspec {

using TreePtr = std::shared_ptr<const TreePA>;

namespace detail {

struct TreeAccess {
  static TreePA make(int degree, int level, PartialBijection top, std::vector<TreePtr> children)
  {
    return TreePA(degree, level, std::move(top), std::move(children));
  }

  static const std::vector<TreePtr>& children(const TreePA& y) { return y.children_; }
};

} // namespace detail

using detail::TreeAccess;

namespace {

TreePtr share(TreePA y) { return std::make_shared<const TreePA>(std::move(y)); }

void check_same_shape(const TreePA& y, const TreePA& z, const char* op)
{
  if (y.degree() != z.degree() || y.level() != z.level())
    throw std::invalid_argument(std::string(op) + ": shape mismatch (d=" + std::to_string(y.degree()) +
                                ",n=" + std::to_string(y.level()) + ") vs (d=" + std::to_string(z.degree()) +
                                ",n=" + std::to_string(z.level()) + ")");
}

std::uint64_t checked_leaf_count(int degree, int level)
{
  std::uint64_t total = 1;
  for (int k = 0; k < level; ++k) {
    if (total > kMaxLeafActionSize / static_cast<std::uint64_t>(degree))
      throw std::length_error("leaf action: d^n = " + std::to_string(degree) + "^" + std::to_string(level) +
                              " too large");
    total *= static_cast<std::uint64_t>(degree);
  }
  return total;
}

void fill_leaf_action(const TreePA& y, std::uint64_t in_offset, std::uint64_t out_offset, std::uint64_t block,
                      std::vector<std::int64_t>& out)
{
  if (y.level() == 0) {
    out[in_offset] = static_cast<std::int64_t>(out_offset);
    return;
  }
  const std::uint64_t sub = block / static_cast<std::uint64_t>(y.degree());
  for (int x : y.top().domain()) {
    const int ax = *y.top()(x);
    fill_leaf_action(y.child(x), in_offset + static_cast<std::uint64_t>(x - 1) * sub,
                     out_offset + static_cast<std::uint64_t>(ax - 1) * sub, sub, out);
  }
}

} // namespace

TreePA::TreePA(int degree, int level, PartialBijection top, std::vector<TreePtr> children)
  : degree_(degree), level_(level), top_(std::move(top)), children_(std::move(children))
{}

TreePA TreePA::root(int degree)
{
  if (degree < 1)
    throw std::invalid_argument("tree degree must be >= 1");
  return TreePA(degree, 0, PartialBijection(degree), {});
}

TreePA TreePA::node(PartialBijection top, const std::map<int, TreePA>& children)
{
  const auto dom = top.domain();
  if (children.size() != dom.size())
    throw std::invalid_argument("children keys must equal dom(top)");
  std::vector<TreePA> ordered;
  ordered.reserve(dom.size());
  for (int x : dom) {
    const auto it = children.find(x);
    if (it == children.end())
      throw std::invalid_argument("missing child for domain point " + std::to_string(x));
    ordered.push_back(it->second);
  }
  return node(std::move(top), std::move(ordered));
}

TreePA TreePA::node(PartialBijection top, std::vector<TreePA> children)
{
  const int d = top.degree();
  const auto dom = top.domain();
  if (children.size() != dom.size())
    throw std::invalid_argument("need one child per domain point: " + std::to_string(dom.size()) + " expected, " +
                                std::to_string(children.size()) + " given");
  if (dom.empty())
    throw std::invalid_argument("node with empty top has no level; use TreePA::empty");
  const int level = children.front().level() + 1;
  std::vector<TreePtr> slots(d);
  for (std::size_t k = 0; k < dom.size(); ++k) {
    if (children[k].degree() != d || children[k].level() != level - 1)
      throw std::invalid_argument("children must share degree and level");
    slots[dom[k] - 1] = share(std::move(children[k]));
  }
  return TreePA(d, level, std::move(top), std::move(slots));
}

TreePA TreePA::identity(int degree, int level)
{
  if (level < 0)
    throw std::invalid_argument("level must be >= 0");
  if (level == 0)
    return root(degree);
  const auto sub = share(identity(degree, level - 1));
  return TreePA(degree, level, PartialBijection::identity(degree), std::vector<TreePtr>(degree, sub));
}

TreePA TreePA::empty(int degree, int level)
{
  if (level < 0)
    throw std::invalid_argument("level must be >= 0");
  if (level == 0)
    return root(degree);
  return TreePA(degree, level, PartialBijection(degree), std::vector<TreePtr>(degree));
}

const TreePA& TreePA::child(int x) const
{
  if (level_ == 0 || !top_.defined_at(x))
    throw std::out_of_range("no child at point " + std::to_string(x));
  return *children_[x - 1];
}

bool TreePA::is_total() const
{
  if (level_ == 0)
    return true;
  if (!top_.is_total())
    return false;
  return std::all_of(children_.begin(), children_.end(), [](const TreePtr& c) { return c->is_total(); });
}

bool TreePA::is_idempotent() const
{
  if (level_ == 0)
    return true;
  if (!top_.is_idempotent())
    return false;
  for (int x : top_.domain())
    if (!child(x).is_idempotent())
      return false;
  return true;
}

bool operator==(const TreePA& lhs, const TreePA& rhs)
{
  if (lhs.degree_ != rhs.degree_ || lhs.level_ != rhs.level_ || lhs.top_ != rhs.top_)
    return false;
  for (std::size_t k = 0; k < lhs.children_.size(); ++k) {
    const auto& a = lhs.children_[k];
    const auto& b = rhs.children_[k];
    if (a == b)
      continue;
    if (!a || !b || !(*a == *b))
      return false;
  }
  return true;
}

TreePA compose_tree(const TreePA& y, const TreePA& z)
{
  check_same_shape(y, z, "compose_tree");
  if (y.level() == 0)
    return y;
  const auto& a = y.top();
  auto top = compose(a, z.top());
  std::vector<TreePtr> children(y.degree());
  for (int x : top.domain())
    children[x - 1] = share(compose_tree(y.child(x), z.child(*a(x))));
  return TreeAccess::make(y.degree(), y.level(), std::move(top), std::move(children));
}

TreePA inverse_tree(const TreePA& y)
{
  if (y.level() == 0)
    return y;
  const auto& a = y.top();
  std::vector<TreePtr> children(y.degree());
  for (int x : a.domain())
    children[*a(x) - 1] = share(inverse_tree(y.child(x)));
  return TreeAccess::make(y.degree(), y.level(), inverse(a), std::move(children));
}

std::optional<LeafPath> apply_to_path(const TreePA& y, const LeafPath& path)
{
  if (static_cast<int>(path.size()) != y.level())
    throw std::invalid_argument("path length " + std::to_string(path.size()) + " differs from level " +
                                std::to_string(y.level()));
  for (int x : path)
    if (x < 1 || x > y.degree())
      throw std::invalid_argument("path digit " + std::to_string(x) + " outside 1.." + std::to_string(y.degree()));
  LeafPath out(path.size());
  const TreePA* cur = &y;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto image = cur->top()(path[k]);
    if (!image)
      return std::nullopt;
    out[k] = *image;
    cur = &cur->child(path[k]);
  }
  return out;
}

std::uint64_t leaf_count(int degree, int level)
{
  std::uint64_t total = 1;
  for (int k = 0; k < level; ++k)
    total *= static_cast<std::uint64_t>(degree);
  return total;
}

std::uint64_t leaf_index(int degree, const LeafPath& path)
{
  std::uint64_t idx = 0;
  for (int x : path) {
    if (x < 1 || x > degree)
      throw std::invalid_argument("path digit outside 1..d");
    idx = idx * static_cast<std::uint64_t>(degree) + static_cast<std::uint64_t>(x - 1);
  }
  return idx;
}

LeafPath leaf_path(int degree, int level, std::uint64_t index)
{
  LeafPath path(level);
  for (int k = level - 1; k >= 0; --k) {
    path[k] = static_cast<int>(index % static_cast<std::uint64_t>(degree)) + 1;
    index /= static_cast<std::uint64_t>(degree);
  }
  if (index != 0)
    throw std::out_of_range("leaf index exceeds d^n");
  return path;
}

std::vector<std::int64_t> leaf_action(const TreePA& y)
{
  const auto size = checked_leaf_count(y.degree(), y.level());
  std::vector<std::int64_t> out(size, kUndefinedLeaf);
  fill_leaf_action(y, 0, 0, size, out);
  return out;
}

std::uint64_t leaf_rank(const TreePA& y)
{
  if (y.level() == 0)
    return 1;
  std::uint64_t total = 0;
  for (int x : y.top().domain())
    total += leaf_rank(y.child(x));
  return total;
}

std::vector<std::uint64_t> survivor_indices(const TreePA& y)
{
  const auto action = leaf_action(y);
  // D_1 is the leaf domain; D_{m+1} keeps v ∈ D_1 with y(v) ∈ D_m.
  std::vector<char> alive(action.size());
  for (std::size_t v = 0; v < action.size(); ++v)
    alive[v] = action[v] != kUndefinedLeaf;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < action.size(); ++v) {
      if (alive[v] && !alive[static_cast<std::size_t>(action[v])]) {
        alive[v] = 0;
        changed = true;
      }
    }
  }
  std::vector<std::uint64_t> out;
  for (std::size_t v = 0; v < alive.size(); ++v)
    if (alive[v])
      out.push_back(v);
  return out;
}

std::vector<LeafPath> survivor_set(const TreePA& y)
{
  std::vector<LeafPath> out;
  for (auto v : survivor_indices(y))
    out.push_back(leaf_path(y.degree(), y.level(), v));
  return out;
}

std::uint64_t ultimate_rank_recursive(const TreePA& y)
{
  if (y.level() == 0)
    return 1;
  std::uint64_t total = 0;
  for (const auto& cycle : decompose_cycles_chains(y.top()).cycles) {
    if (cycle.size() == 1) {
      total += ultimate_rank_recursive(y.child(cycle.front()));
      continue;
    }
    TreePA product = y.child(cycle.front());
    for (std::size_t k = 1; k < cycle.size(); ++k)
      product = compose_tree(product, y.child(cycle[k]));
    total += cycle.size() * ultimate_rank_recursive(product);
  }
  return total;
}

IdempotentAutomorphism decompose_idempotent_automorphism(const TreePA& y)
{
  if (y.level() == 0)
    return {y, y};
  const int d = y.degree();
  const auto& a = y.top();
  std::vector<TreePtr> e_children(d);
  std::vector<TreePtr> s_children(d);
  TreePtr off_domain;
  for (int x = 1; x <= d; ++x) {
    if (a.defined_at(x)) {
      auto [e, s] = decompose_idempotent_automorphism(y.child(x));
      e_children[x - 1] = share(std::move(e));
      s_children[x - 1] = share(std::move(s));
    } else {
      if (!off_domain)
        off_domain = share(TreePA::identity(d, y.level() - 1));
      s_children[x - 1] = off_domain;
    }
  }
  return {TreeAccess::make(d, y.level(), PartialBijection::partial_identity(d, a.domain()), std::move(e_children)),
          TreeAccess::make(d, y.level(), extend_to_permutation(a), std::move(s_children))};
}

CountTable::CountTable(int degree, int max_level)
  : degree_(degree)
{
  if (degree < 1 || max_level < 0)
    throw std::invalid_argument("count table needs d >= 1 and n >= 0");
  counts_.push_back(1);
  for (int k = 1; k <= max_level; ++k) {
    weights_.push_back(rank_class_weights(degree, counts_.back()));
    BigCount total = 0;
    for (const auto& w : weights_.back())
      total += w;
    counts_.push_back(std::move(total));
  }
}

BigCount count_elements(int degree, int level)
{
  return CountTable(degree, level).count(level);
}

std::vector<TreePA> enumerate_tree(int degree, int level)
{
  if (count_elements(degree, level) > kMaxEnumerateTree)
    throw std::length_error("enumerate_tree: more than " + std::to_string(kMaxEnumerateTree) + " elements");
  if (level == 0)
    return {TreePA::root(degree)};
  std::vector<TreePtr> sub;
  for (auto& s : enumerate_tree(degree, level - 1))
    sub.push_back(share(std::move(s)));

  std::vector<TreePA> out;
  for_each_partial_bijection(degree, [&](const PartialBijection& a) {
    const auto dom = a.domain();
    std::vector<std::size_t> pick(dom.size(), 0);
    for (;;) {
      std::vector<TreePtr> children(degree);
      for (std::size_t k = 0; k < dom.size(); ++k)
        children[dom[k] - 1] = sub[pick[k]];
      out.push_back(TreeAccess::make(degree, level, a, std::move(children)));
      // Odometer, last domain point fastest.
      std::size_t k = dom.size();
      while (k > 0 && ++pick[k - 1] == sub.size())
        pick[--k] = 0;
      if (k == 0)
        break;
    }
  });
  return out;
}

TreePA sample_uniform_tree(const CountTable& table, int level, Rng& rng)
{
  if (level < 0 || level > table.max_level())
    throw std::invalid_argument("sample_uniform_tree: level outside count table");
  const int d = table.degree();
  if (level == 0)
    return TreePA::root(d);
  const auto r = draw_weighted(rng, table.weights(level));
  auto top = sample_with_rank(d, static_cast<int>(r), rng);
  std::vector<TreePtr> children(d);
  for (int x : top.domain())
    children[x - 1] = share(sample_uniform_tree(table, level - 1, rng));
  return TreeAccess::make(d, level, std::move(top), std::move(children));
}

TreePA sample_uniform_tree(int degree, int level, Rng& rng)
{
  return sample_uniform_tree(CountTable(degree, level), level, rng);
}

} // namespace pawspec
