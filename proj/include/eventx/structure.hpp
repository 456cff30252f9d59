#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "eventx/core.hpp"
#include "eventx/rng.hpp"

namespace eventx {

/// A set of Gaussian random walks used as the null model for one dimension.
///
/// Walks are stored with unit step variance and scaled on access by
/// sqrt(sigma_sq), so dimensions of one series can share a single sampled
/// set. Immutable after construction.
class WalkEnsemble {
public:
    using WalkSet = std::vector<std::vector<double>>;

    WalkEnsemble(std::shared_ptr<const WalkSet> unit_walks, double sigma_sq);

    /// Ensemble over explicit walks, used as-is (scale 1).
    static WalkEnsemble from_walks(WalkSet walks);

    /// num_walks walks of the given length, starting at 0, unit step variance.
    static std::shared_ptr<const WalkSet> sample_unit_walks(std::size_t num_walks,
                                                            std::size_t length, Rng& rng);

    std::size_t size() const { return walks_->size(); }
    std::size_t length() const { return walks_->empty() ? 0 : walks_->front().size(); }
    double sigma_sq() const { return sigma_sq_; }
    double scale() const { return scale_; }

    std::span<const double> unit_walk(std::size_t i) const { return (*walks_)[i]; }
    double at(std::size_t i, std::size_t t) const { return scale_ * (*walks_)[i][t]; }

private:
    std::shared_ptr<const WalkSet> walks_;
    double sigma_sq_ = 0.0;
    double scale_ = 0.0;
};

/// Mean of squared first differences.
double estimate_step_variance(std::span<const double> x);

/// One ensemble per dimension of ts, all sharing walks drawn from the
/// run seed's walk substream.
std::vector<WalkEnsemble> build_ensembles(const TimeSeries& ts, std::size_t num_walks,
                                          std::uint64_t rng_seed);

/// Minimum over walks of the mean squared difference between the
/// mean-centered subsequence and the mean-centered walk window starting at
/// the same index. Throws std::invalid_argument if sub is shorter than 2 or
/// the walk window [start, start + |sub|) does not exist.
double structure_score(std::span<const double> sub, std::size_t start,
                       const WalkEnsemble& ensemble);

/// Structure scores of every subsequence, per (dimension, length, start).
class StructureTable {
public:
    StructureTable() = default;
    StructureTable(std::size_t n, std::size_t num_dims, std::vector<std::size_t> lengths);

    std::size_t series_length() const { return n_; }
    std::size_t num_dims() const { return num_dims_; }
    const std::vector<std::size_t>& lengths() const { return lengths_; }

    /// Index of `length` in lengths(); throws std::out_of_range if absent.
    std::size_t length_index(std::size_t length) const;

    std::span<const double> scores(std::size_t dim, std::size_t length_idx) const;
    std::span<double> scores(std::size_t dim, std::size_t length_idx);

    /// Score summed over dimensions.
    double summed(std::size_t length_idx, std::size_t start) const;

    std::size_t num_entries() const;

private:
    std::size_t n_ = 0;
    std::size_t num_dims_ = 0;
    std::vector<std::size_t> lengths_;
    std::vector<std::vector<double>> table_;  // [dim * lengths + li][start]
};

/// Scores for every start of every length, one ensemble per dimension.
/// Runs in O(D * walks * |lengths| * N) using prefix sums over the aligned
/// products of series and walk.
StructureTable structure_scores_all(const TimeSeries& ts, const std::vector<std::size_t>& lengths,
                                    const std::vector<WalkEnsemble>& ensembles);

}  // namespace eventx
