#include "pawspec/iscore.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace pawspec {

namespace {

void check_degree(int degree)
{
  if (degree < 1)
    throw std::invalid_argument("partial bijection degree must be >= 1, got " + std::to_string(degree));
}

std::string_view trim(std::string_view s)
{
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

int parse_int(std::string_view s, std::string_view what)
{
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  return v;
}

// Advances `idx` to the next i-subset of {1..d} in lexicographic order.
bool next_combination(std::vector<int>& idx, int d)
{
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == d - k + i + 1)
    --i;
  if (i < 0)
    return false;
  ++idx[i];
  for (int j = i + 1; j < k; ++j)
    idx[j] = idx[j - 1] + 1;
  return true;
}

std::vector<int> first_combination(int k)
{
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 1);
  return idx;
}

// First k entries of a uniform shuffle of 1..d, in drawn order.
std::vector<int> partial_shuffle(int d, int k, Rng& rng)
{
  std::vector<int> pts(d);
  std::iota(pts.begin(), pts.end(), 1);
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(d - i)));
    std::swap(pts[i], pts[j]);
  }
  pts.resize(k);
  return pts;
}

} // namespace

PartialBijection::PartialBijection(int degree)
{
  check_degree(degree);
  targets_.assign(degree, 0);
}

PartialBijection::PartialBijection(int degree, std::vector<int> targets)
  : targets_(std::move(targets))
{
  check_degree(degree);
  if (static_cast<int>(targets_.size()) != degree)
    throw std::invalid_argument("target list length differs from degree");
  std::vector<bool> hit(degree + 1, false);
  for (int t : targets_) {
    if (t == 0)
      continue;
    if (t < 0 || t > degree)
      throw std::invalid_argument("target " + std::to_string(t) + " outside 1.." + std::to_string(degree));
    if (hit[t])
      throw std::invalid_argument("map is not injective at target " + std::to_string(t));
    hit[t] = true;
  }
}

PartialBijection PartialBijection::identity(int degree)
{
  check_degree(degree);
  std::vector<int> t(degree);
  std::iota(t.begin(), t.end(), 1);
  return PartialBijection(degree, std::move(t));
}

PartialBijection PartialBijection::partial_identity(int degree, const std::vector<int>& points)
{
  check_degree(degree);
  std::vector<int> t(degree, 0);
  for (int x : points) {
    if (x < 1 || x > degree)
      throw std::invalid_argument("point outside 1..d");
    t[x - 1] = x;
  }
  return PartialBijection(degree, std::move(t));
}

std::optional<int> PartialBijection::operator()(int x) const
{
  if (!defined_at(x))
    return std::nullopt;
  return targets_[x - 1];
}

bool PartialBijection::in_image(int y) const
{
  return y >= 1 && std::find(targets_.begin(), targets_.end(), y) != targets_.end();
}

std::vector<int> PartialBijection::domain() const
{
  std::vector<int> out;
  for (int x = 1; x <= degree(); ++x)
    if (targets_[x - 1] != 0)
      out.push_back(x);
  return out;
}

std::vector<int> PartialBijection::image() const
{
  std::vector<int> out;
  for (int t : targets_)
    if (t != 0)
      out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

int PartialBijection::rank() const
{
  return static_cast<int>(std::count_if(targets_.begin(), targets_.end(), [](int t) { return t != 0; }));
}

bool PartialBijection::is_idempotent() const
{
  for (int x = 1; x <= degree(); ++x)
    if (targets_[x - 1] != 0 && targets_[x - 1] != x)
      return false;
  return true;
}

std::string PartialBijection::arrows(std::string_view sep) const
{
  std::string out;
  for (int x = 1; x <= degree(); ++x) {
    if (targets_[x - 1] == 0)
      continue;
    if (!out.empty())
      out += sep;
    out += std::to_string(x) + ">" + std::to_string(targets_[x - 1]);
  }
  return out;
}

std::string PartialBijection::to_text() const
{
  std::string out = "d=" + std::to_string(degree()) + ":";
  const auto a = arrows("; ");
  if (!a.empty())
    out += " " + a;
  return out;
}

PartialBijection compose(const PartialBijection& f, const PartialBijection& g)
{
  if (f.degree() != g.degree())
    throw std::invalid_argument("compose: degree mismatch " + std::to_string(f.degree()) + " vs " +
                                std::to_string(g.degree()));
  std::vector<int> t(f.degree(), 0);
  for (int x = 1; x <= f.degree(); ++x) {
    const int fx = f.targets()[x - 1];
    if (fx != 0)
      t[x - 1] = g.targets()[fx - 1];
  }
  return PartialBijection(f.degree(), std::move(t));
}

PartialBijection inverse(const PartialBijection& f)
{
  std::vector<int> t(f.degree(), 0);
  for (int x = 1; x <= f.degree(); ++x) {
    const int fx = f.targets()[x - 1];
    if (fx != 0)
      t[fx - 1] = x;
  }
  return PartialBijection(f.degree(), std::move(t));
}

CycleChainDecomposition decompose_cycles_chains(const PartialBijection& f)
{
  const int d = f.degree();
  std::vector<bool> has_preimage(d + 1, false);
  for (int t : f.targets())
    if (t != 0)
      has_preimage[t] = true;

  CycleChainDecomposition out;
  std::vector<bool> seen(d + 1, false);
  for (int x = 1; x <= d; ++x) {
    if (has_preimage[x])
      continue;
    std::vector<int> chain;
    for (int cur = x; cur != 0; cur = f.targets()[cur - 1]) {
      chain.push_back(cur);
      seen[cur] = true;
    }
    out.chains.push_back(std::move(chain));
  }
  // Whatever a chain did not reach lies on a cycle.
  for (int x = 1; x <= d; ++x) {
    if (seen[x])
      continue;
    std::vector<int> cycle;
    for (int cur = x; !seen[cur]; cur = f.targets()[cur - 1]) {
      cycle.push_back(cur);
      seen[cur] = true;
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

PartialBijection extend_to_permutation(const PartialBijection& f)
{
  const int d = f.degree();
  std::vector<int> t = f.targets();
  std::vector<bool> hit(d + 1, false);
  for (int v : t)
    if (v != 0)
      hit[v] = true;
  int free_target = 1;
  for (int x = 1; x <= d; ++x) {
    if (t[x - 1] != 0)
      continue;
    while (hit[free_target])
      ++free_target;
    t[x - 1] = free_target;
    hit[free_target] = true;
  }
  return PartialBijection(d, std::move(t));
}

BigCount count_isd(int degree)
{
  BigCount total = 0;
  for (const auto& w : rank_class_weights(degree, 1))
    total += w;
  return total;
}

std::vector<BigCount> rank_class_weights(int degree, const BigCount& base)
{
  check_degree(degree);
  std::vector<BigCount> w;
  w.reserve(degree + 1);
  BigCount power = 1;
  for (int i = 0; i <= degree; ++i) {
    const BigCount c = binomial(degree, i);
    w.push_back(c * c * factorial(i) * power);
    power *= base;
  }
  return w;
}

void for_each_partial_bijection(int degree, const std::function<void(const PartialBijection&)>& visit)
{
  check_degree(degree);
  if (degree > kMaxEnumerateDegree)
    throw std::length_error("enumerate_all: degree " + std::to_string(degree) + " exceeds " +
                            std::to_string(kMaxEnumerateDegree));
  for (int r = 0; r <= degree; ++r) {
    auto dom = first_combination(r);
    do {
      auto img = first_combination(r);
      do {
        auto perm = img;
        do {
          std::vector<int> t(degree, 0);
          for (int k = 0; k < r; ++k)
            t[dom[k] - 1] = perm[k];
          visit(PartialBijection(degree, std::move(t)));
        } while (std::next_permutation(perm.begin(), perm.end()));
      } while (next_combination(img, degree));
    } while (next_combination(dom, degree));
  }
}

std::vector<PartialBijection> enumerate_all(int degree)
{
  std::vector<PartialBijection> out;
  for_each_partial_bijection(degree, [&](const PartialBijection& f) { out.push_back(f); });
  return out;
}

PartialBijection sample_with_rank(int degree, int rank, Rng& rng)
{
  check_degree(degree);
  if (rank < 0 || rank > degree)
    throw std::invalid_argument("rank outside 0..d");
  auto dom = partial_shuffle(degree, rank, rng);
  std::sort(dom.begin(), dom.end());
  const auto img = partial_shuffle(degree, rank, rng);
  std::vector<int> t(degree, 0);
  for (int k = 0; k < rank; ++k)
    t[dom[k] - 1] = img[k];
  return PartialBijection(degree, std::move(t));
}

PartialBijection sample_uniform_isd(int degree, Rng& rng)
{
  const auto r = draw_weighted(rng, rank_class_weights(degree, 1));
  return sample_with_rank(degree, static_cast<int>(r), rng);
}

PartialBijection parse_arrows(int degree, std::string_view arrows)
{
  check_degree(degree);
  std::vector<int> t(degree, 0);
  arrows = trim(arrows);
  while (!arrows.empty()) {
    const auto semi = arrows.find(';');
    const auto item = trim(arrows.substr(0, semi));
    arrows = semi == std::string_view::npos ? std::string_view{} : arrows.substr(semi + 1);
    if (item.empty())
      continue;
    const auto gt = item.find('>');
    if (gt == std::string_view::npos)
      throw std::invalid_argument("arrow '" + std::string(item) + "' lacks '>'");
    const int x = parse_int(item.substr(0, gt), "source");
    const int y = parse_int(item.substr(gt + 1), "target");
    if (x < 1 || x > degree)
      throw std::invalid_argument("source " + std::to_string(x) + " outside 1.." + std::to_string(degree));
    if (y < 1 || y > degree)
      throw std::invalid_argument("target " + std::to_string(y) + " outside 1.." + std::to_string(degree));
    if (t[x - 1] != 0)
      throw std::invalid_argument("point " + std::to_string(x) + " mapped twice");
    t[x - 1] = y;
  }
  return PartialBijection(degree, std::move(t));
}

PartialBijection parse_partial_bijection(std::string_view text)
{
  text = trim(text);
  if (text.substr(0, 2) != "d=")
    throw std::invalid_argument("partial bijection text must start with 'd='");
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("partial bijection text lacks ':'");
  const int degree = parse_int(text.substr(2, colon - 2), "degree");
  return parse_arrows(degree, text.substr(colon + 1));
}

} // namespace pawspec
