#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "eventx/core.hpp"
#include "eventx/featmat.hpp"
#include "eventx/seeding.hpp"

namespace eventx {

/// Score returned for a subset whose selected feature set is empty.
inline constexpr double kNoFeatureScore = -std::numeric_limits<double>::infinity();

/// Noise-model parameters: per-row feature probability over the whole
/// series (blurred row means, floored at 1/(2N), capped at 1 - 1/(2N)), the
/// grand mean of the blurred matrix, and the fraction of ones in the binary
/// matrix.
struct NoiseModel {
    std::vector<double> theta0;
    double mean_value = 0.0;
    // Expected count per selected feature in an average window. The event
    // term counts binary ones, so the noise term is put on the same scale.
    double feature_density = 0.0;
};

NoiseModel make_noise_model(const FeatureMatrix& fm, const BlurredMatrix& blurred);

/// Sliding dot products between one window of the blurred matrix and every
/// window position. Row spectra are computed once; each trace costs one
/// forward transform per active row plus one inverse.
class WindowCorrelator {
public:
    WindowCorrelator(const BlurredMatrix& blurred, std::size_t window_length);
    ~WindowCorrelator();
    WindowCorrelator(const WindowCorrelator&) = delete;
    WindowCorrelator& operator=(const WindowCorrelator&) = delete;

    std::size_t num_windows() const { return num_windows_; }

    /// P[i] = <window(seed), window(i)> for every window position i.
    /// Entries below 1e-10 of the trace maximum are flushed to zero.
    std::vector<double> dot_trace(std::size_t seed) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::size_t num_windows_ = 0;
};

/// Straight-line O(J * W * m_max) trace, for small inputs and testing.
std::vector<double> dot_trace_direct(const BlurredMatrix& blurred, std::size_t window_length,
                                     std::size_t seed);

/// Strict local maxima of P. A plateau counts once, at its leftmost index;
/// a missing neighbor at either end does not disqualify. A constant trace
/// has none.
std::vector<std::size_t> local_maxima(std::span<const double> p);

/// Keeps maxima greedily by descending P (ties to the smaller index) so that
/// no two kept indices are closer than min_spacing. `priority`, when set,
/// is kept first regardless of its value. Result is in time order.
std::vector<std::size_t> enforce_minimum_spacing(std::span<const std::size_t> maxima,
                                                 std::span<const double> p, std::size_t min_spacing,
                                                 std::optional<std::size_t> priority = std::nullopt);

struct CandidateSet {
    std::vector<std::size_t> windows;  // by descending P
    std::vector<double> trace;         // P over all window positions
    bool degenerate = false;           // P had no local maxima
};

/// Candidates for one seed: spaced local maxima of the dot-product trace,
/// always including the seed itself, sorted by descending dot product.
CandidateSet candidate_windows(std::size_t seed, const WindowCorrelator& correlator,
                               const LengthBounds& bounds);

struct ScoredSubset {
    std::vector<std::size_t> windows;
    double score = kNoFeatureScore;
    double odds_event = 0.0;
    double odds_noise = 0.0;
    double odds_next = 0.0;
    /// Per-feature values over the flattened J x m_max window, row-major.
    std::vector<double> theta1;
    std::vector<double> weights;
    std::vector<std::size_t> feature_set;
    std::size_t num_rows = 0;
    std::size_t window_length = 0;
};

/// Running sums of binary and blurred windows for a growing subset, so the
/// greedy prefix scan costs one window addition per step.
class SubsetAccumulator {
public:
    SubsetAccumulator(const FeatureMatrix& fm, const BlurredMatrix& blurred, const NoiseModel& noise,
                      std::size_t window_length);

    void add(std::size_t window_start);
    std::size_t size() const { return windows_.size(); }
    const std::vector<std::size_t>& windows() const { return windows_; }

    /// Scores the current subset against `next_best` (all-zero window when
    /// empty). Fills `out` with the feature weights when given.
    double score(std::optional<std::size_t> next_best, ScoredSubset* out = nullptr) const;

private:
    const FeatureMatrix& fm_;
    const BlurredMatrix& blurred_;
    const NoiseModel& noise_;
    std::size_t window_length_;
    std::vector<std::size_t> windows_;
    std::vector<double> counts_;          // sum of binary windows
    std::vector<double> blurred_counts_;  // sum of blurred windows
    std::vector<double> log_theta0_;
};

/// Log-odds of the windows being event instances rather than noise or the
/// rival exemplified by next_best. Requires at least two windows.
ScoredSubset compute_score(std::span<const std::size_t> windows, std::optional<std::size_t> next_best,
                           const FeatureMatrix& fm, const BlurredMatrix& blurred,
                           const NoiseModel& noise, std::size_t window_length);

struct SeedOutcome {
    std::size_t seed = 0;
    double best_score = kNoFeatureScore;
    std::size_t best_k = 0;
    std::size_t num_candidates = 0;
    std::vector<double> trace;  // only kept when requested
};

struct SearchResult {
    bool found = false;
    ScoredSubset best;
    std::size_t best_seed = 0;
    std::vector<SeedOutcome> per_seed;
    double candidates_ms = 0.0;
    double scoring_ms = 0.0;
};

struct SearchOptions {
    bool keep_traces = false;
};

/// Greedy prefix search over each seed's ranked candidates; returns the best
/// subset across all seeds. Lower seeds win ties. `found` is false when every
/// subset scored kNoFeatureScore.
SearchResult find_instances(const SeedSet& seeds, const FeatureMatrix& fm, const BlurredMatrix& blurred,
                            const LengthBounds& bounds, const NoiseModel& noise,
                            const SearchOptions& options = {});

}  // namespace eventx
