#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "eventx/core.hpp"
#include "eventx/rng.hpp"
#include "eventx/structure.hpp"

namespace eventx {

/// Thrown when no shape matches anywhere except around its own origin.
class NoRepeatingStructure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A subsequence used as a feature template.
struct Shape {
    std::size_t dim = 0;
    std::size_t origin = 0;  // start index in the series
    std::vector<double> values;
    double variance = 0.0;

    std::size_t length() const { return values.size(); }
};

/// True when a subsequence is flat enough that distances to it are undefined.
bool is_zero_variance(std::span<const double> values);

/// Draws k distinct indices with probability proportional to weight.
/// Indices with weight < 0 are ineligible. Once the remaining eligible mass
/// is zero, the remaining draws are uniform over the remaining eligible
/// indices. Returns fewer than k indices only if fewer are eligible.
std::vector<std::size_t> weighted_sample_without_replacement(std::span<const double> weights,
                                                             std::size_t k, Rng& rng);

/// ceil(log2(n)), the number of shapes drawn per (dimension, length).
std::size_t shapes_per_length(std::size_t n);

/// Samples shapes_per_length(N) subsequences for each dimension and each
/// length in the table, weighted by structure score. Flat subsequences are
/// never drawn.
std::vector<Shape> sample_shapes(const TimeSeries& ts, const ValidatedConfig& cfg,
                                 const StructureTable& scores);

/// Squared Euclidean distance between the mean-centered shape and
/// subsequence, divided by length and shape variance. Returns +inf for a
/// zero-variance shape. Throws std::invalid_argument on length mismatch.
double shape_distance(std::span<const double> shape, std::span<const double> sub);

/// First index of the subsequence "centered" at position t for length m.
inline std::ptrdiff_t centered_start(std::size_t t, std::size_t m) {
    return static_cast<std::ptrdiff_t>(t) - static_cast<std::ptrdiff_t>(m / 2);
}

/// Binary J x N matrix; row j marks where shape j matches.
struct FeatureBuildStats {
    std::size_t candidates = 0;
    std::size_t zero_variance = 0;
    std::size_t no_second_match = 0;
    std::size_t too_dense = 0;
};

class FeatureMatrix {
public:
    using BuildStats = FeatureBuildStats;

    FeatureMatrix() = default;
    FeatureMatrix(std::size_t n, std::vector<std::vector<std::uint8_t>> rows, std::vector<Shape> shapes,
                  BuildStats stats = {});

    std::size_t num_rows() const { return shapes_.size(); }
    std::size_t length() const { return n_; }

    std::span<const std::uint8_t> row(std::size_t j) const {
        return {data_.data() + j * n_, n_};
    }
    std::uint8_t at(std::size_t j, std::size_t t) const { return data_[j * n_ + t]; }
    const Shape& shape(std::size_t j) const { return shapes_[j]; }
    const std::vector<Shape>& shapes() const { return shapes_; }
    const BuildStats& stats() const { return stats_; }

    std::size_t nonzeros() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> data_;
    std::vector<Shape> shapes_;
    BuildStats stats_;
};

/// The unfiltered match row of one shape over the series dimension.
std::vector<std::uint8_t> match_row(const Shape& shape, std::span<const double> series,
                                    double threshold);

/// Builds the feature matrix, dropping rows with no non-trivial second
/// match or with more than half of their entries set. Rows from all
/// dimensions are stacked in shape order. Throws NoRepeatingStructure when
/// no row survives.
FeatureMatrix build_feature_matrix(const TimeSeries& ts, const std::vector<Shape>& shapes,
                                   const ValidatedConfig& cfg);

/// Symmetric Hamming window of the given length.
std::vector<double> hamming_window(std::size_t length);

/// Real-valued J x N matrix with entries in [0, 1].
class BlurredMatrix {
public:
    BlurredMatrix() = default;
    BlurredMatrix(std::size_t num_rows, std::size_t n, std::vector<double> data);

    std::size_t num_rows() const { return rows_; }
    std::size_t length() const { return n_; }
    std::span<const double> row(std::size_t j) const { return {data_.data() + j * n_, n_}; }
    double at(std::size_t j, std::size_t t) const { return data_[j * n_ + t]; }

    /// Grand mean over all entries.
    double mean_value() const { return mean_; }
    /// Mean of row j.
    double row_mean(std::size_t j) const;

private:
    std::size_t rows_ = 0;
    std::size_t n_ = 0;
    std::vector<double> data_;
    double mean_ = 0.0;
};

/// Blurs one binary row: same-length zero-padded convolution with a Hamming
/// window of length m_min, then each entry divided by the maximum within
/// floor(m_min/2) steps of it.
std::vector<double> blur_row(std::span<const std::uint8_t> row, std::size_t m_min);

BlurredMatrix blur(const FeatureMatrix& fm, std::size_t m_min);

}  // namespace eventx
