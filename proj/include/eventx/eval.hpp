#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eventx/core.hpp"

namespace eventx {

/// Intersection over union of two inclusive integer intervals.
double iou(const Region& a, const Region& b);

/// Largest one-to-one pairing of predicted and true regions with IOU >= tau.
/// Both lists are sorted internally; pairs are formed greedily in time order.
std::size_t match_count(std::span<const Region> predicted, std::span<const Region> truth, double tau);

enum class MatchMode {
    /// Regions must overlap by IOU >= tau.
    overlap,
    /// Only the number of returned regions matters: the first |truth| count
    /// as correct (for data labeled with one mark per instance).
    count_only,
};

struct MatchReport {
    double tau = 0.0;
    std::size_t match_count = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Precision, recall and F1; empty inputs give 0 rather than NaN.
MatchReport prf1(std::span<const Region> predicted, std::span<const Region> truth, double tau,
                 MatchMode mode = MatchMode::overlap);

/// One report per threshold.
std::vector<MatchReport> f1_sweep(std::span<const Region> predicted, std::span<const Region> truth,
                                  std::span<const double> taus, MatchMode mode = MatchMode::overlap);

/// 0.05, 0.10, ..., 0.95.
std::vector<double> default_tau_grid();

}  // namespace eventx
