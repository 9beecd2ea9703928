#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qgen {

using Rng = std::mt19937_64;

/// 64-bit FNV-1a; stable across platforms, used for content hashes and seed derivation.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t basis = 0xcbf29ce484222325ULL);

std::uint64_t splitmix64(std::uint64_t x);

/// Derives an independent per-stage seed from the master seed.
/// stage seed = splitmix64(master ^ fnv1a64(stage)).
std::uint64_t split_seed(std::uint64_t master, std::string_view stage);

}  // namespace qgen
