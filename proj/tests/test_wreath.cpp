#include "test_support.hpp"

#include <doctest.h>

#include <set>
#include <unordered_map>

using namespace pawspec;
using test::example_element;

namespace {

// Random (d, n) with d in 1..max_d and n in 1..max_n, plus an element.
struct RandomTrees {
  explicit RandomTrees(std::uint64_t seed, int max_d, int max_n)
    : rng(seed), max_d(max_d), max_n(max_n)
  {
    for (int d = 1; d <= max_d; ++d)
      tables.emplace_back(d, max_n);
  }

  std::pair<int, int> shape()
  {
    const int d = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_d)));
    const int n = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_n)));
    return {d, n};
  }

  TreePA draw(int d, int n) { return sample_uniform_tree(tables[d - 1], n, rng); }

  Rng rng;
  int max_d;
  int max_n;
  std::vector<CountTable> tables;
};

LeafPath random_path(Rng& rng, int d, int n)
{
  LeafPath p(n);
  for (auto& x : p)
    x = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(d)));
  return p;
}

} // namespace

TEST_CASE("node construction checks its shape")
{
  const auto id1 = TreePA::identity(2, 1);
  const auto swap = parse_partial_bijection("d=2: 1>2; 2>1");
  CHECK_THROWS_AS(TreePA::node(swap, std::map<int, TreePA>{{1, id1}}), std::invalid_argument);
  CHECK_THROWS_AS(TreePA::node(swap, std::map<int, TreePA>{{1, id1}, {3, id1}}), std::invalid_argument);
  CHECK_THROWS_AS(TreePA::node(swap, std::map<int, TreePA>{{1, id1}, {2, TreePA::root(2)}}), std::invalid_argument);
  CHECK_THROWS_AS(TreePA::node(swap, std::map<int, TreePA>{{1, id1}, {2, TreePA::identity(3, 1)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(example_element().child(3), std::out_of_range);
  CHECK_THROWS_AS(TreePA::empty(2, 2).child(1), std::out_of_range);

  const auto y = example_element();
  CHECK(y.level() == 2);
  CHECK(y.child(1) == TreePA::identity(2, 1));
  CHECK(y.child(2) == TreePA::empty(2, 1));
}

TEST_CASE("compose_tree")
{
  const auto p2 = enumerate_tree(2, 2);
  for (const auto& y : p2) {
    CHECK(compose_tree(TreePA::identity(2, 2), y) == y);
    CHECK(compose_tree(y, TreePA::identity(2, 2)) == y);
  }

  SUBCASE("the example element squares to an empty leaf action")
  {
    const auto yy = compose_tree(example_element(), example_element());
    const auto action = leaf_action(yy);
    CHECK(std::all_of(action.begin(), action.end(), [](auto v) { return v == kUndefinedLeaf; }));
  }

  SUBCASE("top domain of a product")
  {
    RandomTrees gen(23, 3, 4);
    for (int k = 0; k < 10'000; ++k) {
      const auto [d, n] = gen.shape();
      const auto y = gen.draw(d, n);
      const auto z = gen.draw(d, n);
      std::vector<int> expected;
      for (int x = 1; x <= d; ++x) {
        const auto ax = y.top()(x);
        if (ax && z.top().defined_at(*ax))
          expected.push_back(x);
      }
      REQUIRE(compose_tree(y, z).top().domain() == expected);
    }
  }

  CHECK_THROWS_AS(compose_tree(TreePA::identity(2, 2), TreePA::identity(2, 1)), std::invalid_argument);
  CHECK_THROWS_AS(compose_tree(TreePA::identity(2, 1), TreePA::identity(3, 1)), std::invalid_argument);
}

TEST_CASE("apply_to_path")
{
  const auto id = TreePA::identity(3, 2);
  for (std::uint64_t v = 0; v < 9; ++v) {
    const auto p = leaf_path(3, 2, v);
    CHECK(apply_to_path(id, p) == p);
  }

  const auto y = example_element();
  CHECK(apply_to_path(y, {1, 1}) == LeafPath{2, 1});
  CHECK(apply_to_path(y, {1, 2}) == LeafPath{2, 2});
  CHECK_FALSE(apply_to_path(y, {2, 1}).has_value());
  CHECK_FALSE(apply_to_path(y, {2, 2}).has_value());
  CHECK_THROWS_AS(apply_to_path(y, {1}), std::invalid_argument);
  CHECK_THROWS_AS(apply_to_path(y, {1, 3}), std::invalid_argument);

  SUBCASE("functoriality on random triples")
  {
    RandomTrees gen(29, 3, 4);
    for (int k = 0; k < 10'000; ++k) {
      const auto [d, n] = gen.shape();
      const auto a = gen.draw(d, n);
      const auto b = gen.draw(d, n);
      const auto p = random_path(gen.rng, d, n);
      const auto first = apply_to_path(a, p);
      const auto expected = first ? apply_to_path(b, *first) : std::nullopt;
      REQUIRE(apply_to_path(compose_tree(a, b), p) == expected);
    }
  }
}

TEST_CASE("leaf indexing is 1-based lexicographic")
{
  // v_j with j = 1 + Σ (x_k - 1) d^(n-k)
  CHECK(leaf_index(2, {1, 1}) + 1 == 1);
  CHECK(leaf_index(2, {2, 1}) + 1 == 3);
  CHECK(leaf_index(3, {2, 3, 1}) + 1 == 1 + 1 * 9 + 2 * 3 + 0);
  for (std::uint64_t v = 0; v < 81; ++v)
    CHECK(leaf_index(3, leaf_path(3, 4, v)) == v);
  CHECK_THROWS_AS(leaf_path(2, 2, 4), std::out_of_range);
}

TEST_CASE("count_elements")
{
  for (int d = 1; d <= 4; ++d)
    CHECK(count_elements(d, 0) == 1);
  for (int n = 0; n <= 5; ++n) {
    CHECK(count_elements(1, n) == n + 1);
    CHECK(enumerate_tree(1, n).size() == static_cast<std::size_t>(n + 1));
  }
  CHECK(count_elements(2, 1) == 7);
  CHECK(count_elements(2, 2) == 127);
  CHECK(count_elements(3, 1) == 34);
  CHECK(count_elements(2, 3) == 32767);

  SUBCASE("count table recursion")
  {
    for (int d = 2; d <= 4; ++d) {
      const CountTable t(d, 5);
      for (int k = 1; k <= 5; ++k) {
        CHECK(t.count(k) > t.count(k - 1));
        BigCount sum = 0;
        for (int i = 0; i <= d; ++i) {
          const auto c = binomial(d, i);
          sum += c * c * factorial(i) * boost::multiprecision::pow(t.count(k - 1), i);
        }
        CHECK(sum == t.count(k));
      }
    }
  }
}

TEST_CASE("enumerate_tree")
{
  CHECK(enumerate_tree(2, 1).size() == 7);
  CHECK(enumerate_tree(2, 2).size() == 127);
  CHECK(enumerate_tree(1, 3).size() == 4);
  CHECK(enumerate_tree(3, 1).size() == 34);

  const auto p2 = enumerate_tree(2, 2);
  std::set<std::string> keys;
  for (const auto& y : p2)
    keys.insert(test::key(y));
  CHECK(keys.size() == p2.size());
  CHECK(p2.front() == TreePA::empty(2, 2));

  CHECK_THROWS_AS(enumerate_tree(2, 4), std::length_error);
}

TEST_CASE("sample_uniform_tree")
{
  SUBCASE("d = 1, n = 1 is a fair coin")
  {
    Rng rng(31);
    int full = 0;
    for (int k = 0; k < 20'000; ++k)
      full += sample_uniform_tree(1, 1, rng) == TreePA::identity(1, 1);
    CHECK(std::abs(full - 10'000) < 354);
  }

  auto chi_square_over = [](int d, int n, std::uint64_t seed, double& empty_top_fraction) {
    const auto all = enumerate_tree(d, n);
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < all.size(); ++k)
      index.emplace(test::key(all[k]), k);
    std::vector<std::uint64_t> counts(all.size(), 0);
    const CountTable table(d, n);
    Rng rng(seed);
    int empty_top = 0;
    const int draws = 100'000;
    for (int k = 0; k < draws; ++k) {
      const auto y = sample_uniform_tree(table, n, rng);
      const auto it = index.find(test::key(y));
      REQUIRE(it != index.end());
      ++counts[it->second];
      empty_top += y.top().rank() == 0;
    }
    empty_top_fraction = static_cast<double>(empty_top) / draws;
    return test::chi_square_uniform(counts, 0.001);
  };

  SUBCASE("chi-square over P_1, d = 2")
  {
    double empty_top = 0.0;
    const auto chi = chi_square_over(2, 1, 37, empty_top);
    INFO("chi2 = " << chi.statistic << ", critical = " << chi.critical);
    CHECK(chi.passes());
    CHECK(std::abs(empty_top - 1.0 / 7.0) < 0.006);
  }
  SUBCASE("chi-square over P_2, d = 2")
  {
    double empty_top = 0.0;
    const auto chi = chi_square_over(2, 2, 41, empty_top);
    INFO("chi2 = " << chi.statistic << ", critical = " << chi.critical);
    CHECK(chi.passes());
    CHECK(std::abs(empty_top - 1.0 / 127.0) < 0.002);
  }
  CHECK_THROWS_AS([] {
    Rng rng(1);
    return sample_uniform_tree(CountTable(2, 2), 3, rng);
  }(), std::invalid_argument);
}

TEST_CASE("leaf_rank")
{
  CHECK(leaf_rank(TreePA::identity(2, 2)) == 4);
  CHECK(leaf_rank(example_element()) == 2);
  CHECK(leaf_rank(TreePA::empty(3, 3)) == 0);

  RandomTrees gen(43, 3, 5);
  for (int k = 0; k < 1'000; ++k) {
    const auto [d, n] = gen.shape();
    const auto y = gen.draw(d, n);
    const auto action = leaf_action(y);
    const auto defined = std::count_if(action.begin(), action.end(), [](auto v) { return v != kUndefinedLeaf; });
    REQUIRE(leaf_rank(y) == static_cast<std::uint64_t>(defined));
  }
}

TEST_CASE("survivor_set")
{
  CHECK(survivor_set(TreePA::identity(2, 3)).size() == 8);
  CHECK(survivor_set(example_element()).empty());

  SUBCASE("idempotents keep their whole leaf domain")
  {
    for (const auto& y : enumerate_tree(2, 2)) {
      if (!y.is_idempotent())
        continue;
      CHECK(survivor_indices(y).size() == leaf_rank(y));
    }
  }
  SUBCASE("full automorphisms keep every leaf")
  {
    RandomTrees gen(47, 3, 3);
    for (int k = 0; k < 200; ++k) {
      const auto [d, n] = gen.shape();
      const auto sigma = decompose_idempotent_automorphism(gen.draw(d, n)).automorphism;
      CHECK(survivor_indices(sigma).size() == leaf_count(d, n));
    }
  }
}

TEST_CASE("ultimate_rank_recursive")
{
  CHECK(ultimate_rank_recursive(TreePA::identity(2, 3)) == 8);
  CHECK(ultimate_rank_recursive(TreePA::identity(3, 2)) == 9);
  CHECK(ultimate_rank_recursive(example_element()) == 0);

  SUBCASE("level 1 counts points on cycles")
  {
    for (const auto& a : enumerate_all(3)) {
      std::uint64_t on_cycles = 0;
      for (const auto& c : decompose_cycles_chains(a).cycles)
        on_cycles += c.size();
      const auto y = enumerate_tree(3, 1);
      const auto it = std::find_if(y.begin(), y.end(), [&](const TreePA& t) { return t.top() == a; });
      REQUIRE(it != y.end());
      CHECK(ultimate_rank_recursive(*it) == on_cycles);
    }
  }
  SUBCASE("agrees with the survivor fixed point")
  {
    for (const auto& y : enumerate_tree(2, 2))
      CHECK(ultimate_rank_recursive(y) == survivor_indices(y).size());
    Rng rng(53);
    for (const auto& [d, max_n] : {std::pair{2, 6}, std::pair{3, 4}}) {
      const CountTable table(d, max_n);
      for (int n = 1; n <= max_n; ++n)
        for (int k = 0; k < 1'000; ++k) {
          const auto y = sample_uniform_tree(table, n, rng);
          REQUIRE(ultimate_rank_recursive(y) == survivor_indices(y).size());
        }
    }
  }
  SUBCASE("invariant under rotation of a product")
  {
    RandomTrees gen(59, 3, 4);
    for (int k = 0; k < 10'000; ++k) {
      const auto [d, n] = gen.shape();
      const auto u = gen.draw(d, n);
      const auto v = gen.draw(d, n);
      REQUIRE(ultimate_rank_recursive(compose_tree(u, v)) == ultimate_rank_recursive(compose_tree(v, u)));
    }
  }
}

TEST_CASE("inverse_tree satisfies y y^-1 y = y on P_2")
{
  for (const auto& y : enumerate_tree(2, 2)) {
    const auto yi = inverse_tree(y);
    CHECK(compose_tree(compose_tree(y, yi), y) == y);
    CHECK(compose_tree(compose_tree(yi, y), yi) == yi);
  }
}

TEST_CASE("decompose_idempotent_automorphism")
{
  SUBCASE("full automorphism")
  {
    const auto sigma = TreePA::node(parse_partial_bijection("d=2: 1>2; 2>1"),
                                    std::map<int, TreePA>{{1, TreePA::identity(2, 1)},
                                                          {2, TreePA::node(parse_partial_bijection("d=2: 1>2; 2>1"),
                                                                           std::map<int, TreePA>{
                                                                               {1, TreePA::root(2)},
                                                                               {2, TreePA::root(2)}})}});
    const auto [e, s] = decompose_idempotent_automorphism(sigma);
    CHECK(e == TreePA::identity(2, 2));
    CHECK(s == sigma);
  }
  SUBCASE("empty top")
  {
    const auto [e, s] = decompose_idempotent_automorphism(TreePA::empty(2, 3));
    CHECK(e == TreePA::empty(2, 3));
    CHECK(s == TreePA::identity(2, 3));
  }
  SUBCASE("random elements")
  {
    RandomTrees gen(61, 3, 4);
    for (int k = 0; k < 10'000; ++k) {
      const auto [d, n] = gen.shape();
      const auto y = gen.draw(d, n);
      const auto [e, s] = decompose_idempotent_automorphism(y);
      REQUIRE(compose_tree(e, s) == y);
      REQUIRE(compose_tree(e, e) == e);
      REQUIRE(e.is_idempotent());
      REQUIRE(s.is_total());
      REQUIRE(leaf_rank(e) == leaf_rank(y));
    }
  }
}

TEST_CASE("leaf ranks over P_k are at most d^k N_k")
{
  for (int k = 0; k <= 2; ++k) {
    BigCount total = 0;
    for (const auto& y : enumerate_tree(2, k))
      total += leaf_rank(y);
    CHECK(total <= BigCount(leaf_count(2, k)) * count_elements(2, k));
  }
}

TEST_CASE("JSON form")
{
  CHECK(to_json(TreePA::root(2)).dump() == R"({"d":2,"n":0})");
  CHECK(to_json(example_element()).dump() ==
        R"({"children":{"1":{"children":{"1":{"d":2,"n":0},"2":{"d":2,"n":0}},"d":2,"n":1,"top":"1>1;2>2"},)"
        R"("2":{"children":{},"d":2,"n":1,"top":""}},"d":2,"n":2,"top":"1>2;2>1"})");

  for (const auto& y : enumerate_tree(2, 2))
    CHECK(tree_from_json(to_json(y)) == y);
  RandomTrees gen(67, 3, 4);
  for (int k = 0; k < 500; ++k) {
    const auto [d, n] = gen.shape();
    const auto y = gen.draw(d, n);
    const auto text = to_json(y).dump();
    CHECK(to_json(tree_from_json(nlohmann::json::parse(text))).dump() == text);
  }

  using nlohmann::json;
  CHECK_THROWS_AS(tree_from_json(json::parse(R"({"d":2})")), std::invalid_argument);
  CHECK_THROWS_AS(tree_from_json(json::parse(R"({"d":2,"n":1,"top":"1>1","children":{}})")), std::invalid_argument);
  CHECK_THROWS_AS(tree_from_json(json::parse(R"({"d":2,"n":1,"top":"1>1","children":{"2":{"d":2,"n":0}}})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(tree_from_json(json::parse(R"({"d":2,"n":2,"top":"1>1","children":{"1":{"d":2,"n":0}}})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(tree_from_json(json::parse(R"({"d":2,"n":0,"top":""})")), std::invalid_argument);
}
