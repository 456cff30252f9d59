#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace eventx {

using Rng = std::mt19937_64;

/// Named substreams of one run seed, so each consumer (walk ensemble, shape
/// sampling, synthesis) is reproducible on its own.
namespace stream {
inline constexpr std::uint32_t kWalks = 1;
inline constexpr std::uint32_t kShapes = 2;
inline constexpr std::uint32_t kSynthWalk = 3;
inline constexpr std::uint32_t kSynthPlant = 4;
}  // namespace stream

inline Rng make_rng(std::uint64_t seed, std::uint32_t stream_id, std::uint32_t index = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      stream_id, index};
    return Rng(seq);
}

}  // namespace eventx
