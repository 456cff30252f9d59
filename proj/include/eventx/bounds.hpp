#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "eventx/core.hpp"
#include "eventx/search.hpp"

namespace eventx {

struct SubarrayBounds {
    std::size_t start = 0;  // inclusive
    std::size_t end = 0;    // inclusive
    double sum = 0.0;

    friend bool operator==(const SubarrayBounds&, const SubarrayBounds&) = default;
};

/// Contiguous nonempty run with the largest sum. Ties go to the shortest
/// run, then the leftmost. An all-negative input yields its largest single
/// element. Throws std::invalid_argument on empty input.
SubarrayBounds max_subarray(std::span<const double> scores);

/// The learned feature weights laid out as a J x m_max image.
struct WeightImage {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;         // row-major
    double chance_level = 0.0;          // J * E[blurred]^(|I| - 1)
    std::vector<double> column_scores;  // column sums minus chance_level
};

WeightImage make_weight_image(const ScoredSubset& subset, double blurred_mean);

struct RegionRecovery {
    std::vector<Region> regions;  // sorted by start
    std::size_t start_offset = 0;
    std::size_t end_offset = 0;
    WeightImage image;
    std::vector<std::string> warnings;
};

/// One offset pair from the weight image, applied to every window. Regions
/// are clipped to [0, n).
RegionRecovery recover_regions(const ScoredSubset& subset, double blurred_mean, std::size_t n,
                               const LengthBounds& bounds);

}  // namespace eventx
