#include "pawspec/random.hpp"

#include <bit>
#include <stdexcept>

namespace pawspec {

BigCount binomial(unsigned n, unsigned k)
{
  if (k > n)
    return 0;
  BigCount r = 1;
  for (unsigned i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

BigCount factorial(unsigned n)
{
  BigCount r = 1;
  for (unsigned i = 2; i <= n; ++i)
    r *= i;
  return r;
}

Rng trial_rng(std::uint64_t seed, std::uint64_t trial)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

Rng trial_rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed),   static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial),  static_cast<std::uint32_t>(trial >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound)
{
  if (bound == 0)
    throw std::invalid_argument("uniform_below: empty range");
  if (bound == 1)
    return 0;
  const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound - 1);
  for (;;) {
    const std::uint64_t r = rng() & mask;
    if (r < bound)
      return r;
  }
}

BigCount uniform_below(Rng& rng, const BigCount& bound)
{
  if (bound <= 0)
    throw std::invalid_argument("uniform_below: empty range");
  if (bound == 1)
    return 0;
  const BigCount top = bound - 1;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(top)) + 1;
  const unsigned words = (bits + 63) / 64;
  const BigCount mask = (BigCount(1) << bits) - 1;
  for (;;) {
    BigCount r = 0;
    for (unsigned w = 0; w < words; ++w) {
      r <<= 64;
      r |= rng();
    }
    r &= mask;
    if (r < bound)
      return r;
  }
}

std::size_t draw_weighted(Rng& rng, const std::vector<BigCount>& weights)
{
  BigCount total = 0;
  for (const auto& w : weights)
    total += w;
  BigCount u = uniform_below(rng, total);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i])
      return i;
    u -= weights[i];
  }
  throw std::logic_error("draw_weighted: fell off the cumulative table");
}

} // namespace pawspec
