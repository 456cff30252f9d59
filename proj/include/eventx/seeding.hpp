#pragma once

#include <cstddef>
#include <vector>

#include "eventx/core.hpp"
#include "eventx/structure.hpp"

namespace eventx {

/// Window start indices from which candidate sets are grown. Sorted
/// ascending, deduplicated, all in [0, N - m_max].
struct SeedSet {
    std::vector<std::size_t> anchors;
    std::vector<std::size_t> indices;
};

/// Per-start score: sum over dimensions of the structure scores of every
/// table length in [8, m_min] starting at t, for t in [0, N - m_max].
std::vector<double> start_index_scores(const StructureTable& scores, const LengthBounds& bounds);

/// Up to `count` indices, greedily by descending score (ties to the smaller
/// index), each at least min_gap from all previously chosen ones.
std::vector<std::size_t> pick_anchors(const std::vector<double>& start_scores, std::size_t min_gap,
                                      std::size_t count = 2);

/// Each anchor plus anchor +- k * floor(m_max / seeds_per_side) for
/// k = 1..seeds_per_side, clipped to [0, last_start], deduplicated.
SeedSet expand_seeds(const std::vector<std::size_t>& anchors, std::size_t m_max,
                     std::size_t seeds_per_side, std::size_t last_start);

/// Two structure-score anchors and their flanking seeds. Uses
/// cfg.manual_seeds verbatim when any were supplied. Throws ConfigError if
/// the series has fewer than two window positions.
SeedSet generate_seeds(const StructureTable& scores, const ValidatedConfig& cfg);

}  // namespace eventx
