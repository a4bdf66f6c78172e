#pragma once

#include <cstdint>
#include <random>

namespace fpnp {

/// Seed splitting rule shared by every stochastic corpus: stream `s` of a
/// run seeded with `seed` is driven by
///   mt19937_64(splitmix64(seed + 0x9E3779B97F4A7C15 * (s + 1))).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream);

}  // namespace fpnp
