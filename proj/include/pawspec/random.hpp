#pragma once

#include "pawspec/bigint.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace pawspec {

using Rng = std::mt19937_64;

/// Engine for one Monte Carlo trial; depends only on (seed, trial).
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);
/// Same, with an extra stream id so different experiments never share draws.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream);

/// Uniform integer in [0, bound). Bitwise rejection so the stream is
/// identical across standard libraries. bound must be > 0.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform big integer in [0, bound). bound must be > 0.
BigCount uniform_below(Rng& rng, const BigCount& bound);

/// Index i with prefix(i) <= u < prefix(i+1) for u uniform below the total.
std::size_t draw_weighted(Rng& rng, const std::vector<BigCount>& weights);

} // namespace pawspec
