#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gwl {

using Rng = std::mt19937_64;

// Derives an independent seed for a named consumer from a root seed, so that
// adding a new consumer never perturbs the draws of existing ones.
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream);
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

inline Rng make_rng(std::uint64_t root, std::string_view stream) {
  return Rng(derive_seed(root, stream));
}

// Stream names shared across modules.
namespace streams {
inline constexpr std::string_view kGraphGen = "graph-gen";
inline constexpr std::string_view kNoise = "noise";
inline constexpr std::string_view kEmbedInit = "embed-init";
inline constexpr std::string_view kBatching = "batching";
inline constexpr std::string_view kHoldout = "holdout";
}  // namespace streams

}  // namespace gwl
