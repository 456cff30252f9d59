#include "eventx/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eventx {

SubarrayBounds max_subarray(std::span<const double> scores) {
    if (scores.empty()) throw std::invalid_argument("max_subarray of an empty vector");
    // Kadane's scan. The running sum restarts when the run so far is not
    // positive (a zero-sum prefix is dropped, which keeps the run short), and
    // accumulates forward from its start so that sums are summed in index
    // order.
    SubarrayBounds best{0, 0, scores[0]};
    double run = 0.0;
    std::size_t run_start = 0;
    for (std::size_t e = 0; e < scores.size(); ++e) {
        if (e == 0 || run <= 0.0) {
            run = 0.0;
            run_start = e;
        }
        run += scores[e];
        const std::size_t len = e - run_start + 1;
        const std::size_t best_len = best.end - best.start + 1;
        if (run > best.sum || (run == best.sum && len < best_len)) best = {run_start, e, run};
    }
    return best;
}

WeightImage make_weight_image(const ScoredSubset& subset, double blurred_mean) {
    WeightImage img;
    img.rows = subset.num_rows;
    img.cols = subset.window_length;
    img.values = subset.weights;
    if (img.values.size() != img.rows * img.cols) throw std::invalid_argument("weight vector has wrong size");
    const double k = static_cast<double>(subset.windows.size());
    img.chance_level = static_cast<double>(img.rows) * std::pow(blurred_mean, k - 1.0);
    img.column_scores.assign(img.cols, -img.chance_level);
    for (std::size_t r = 0; r < img.rows; ++r) {
        for (std::size_t c = 0; c < img.cols; ++c) img.column_scores[c] += img.values[r * img.cols + c];
    }
    return img;
}

RegionRecovery recover_regions(const ScoredSubset& subset, double blurred_mean, std::size_t n,
                               const LengthBounds& bounds) {
    if (subset.windows.empty()) throw std::invalid_argument("recover_regions needs a nonempty subset");
    RegionRecovery out;
    out.image = make_weight_image(subset, blurred_mean);
    const auto span = max_subarray(out.image.column_scores);
    out.start_offset = span.start;
    out.end_offset = span.end;

    const std::size_t len = span.end - span.start + 1;
    if (len < bounds.m_min || len > bounds.m_max) {
        out.warnings.push_back("recovered length " + std::to_string(len) + " is outside [" +
                               std::to_string(bounds.m_min) + ", " + std::to_string(bounds.m_max) + "]");
    }
    const auto last = static_cast<std::int64_t>(n) - 1;
    for (std::size_t w : subset.windows) {
        Region r;
        r.start = std::min<std::int64_t>(static_cast<std::int64_t>(w + span.start), last);
        r.end = std::min<std::int64_t>(static_cast<std::int64_t>(w + span.end), last);
        out.regions.push_back(r);
    }
    std::sort(out.regions.begin(), out.regions.end(),
              [](const Region& a, const Region& b) { return a.start < b.start; });
    return out;
}

}  // namespace eventx
