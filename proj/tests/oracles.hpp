#pragma once

// Straight-line reference implementations used to cross-check the library.
// They favour obviousness over speed and share no code with src/.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "eventx/core.hpp"

namespace oracle {

struct Dense {
    std::size_t rows = 0;
    std::size_t n = 0;
    std::vector<double> v;  // row-major
    double at(std::size_t j, std::size_t t) const { return v[j * n + t]; }
};

struct ScoreParts {
    double score = -std::numeric_limits<double>::infinity();
    double odds_event = 0.0;
    double odds_noise = 0.0;
    double odds_next = 0.0;
    std::vector<double> weights;
};

// Log-odds score of a window subset. `noise_per_feature` is the expected
// count per selected feature in an average window.
inline ScoreParts score(const std::vector<std::size_t>& windows, std::optional<std::size_t> next,
                        const Dense& binary, const Dense& blurred, const std::vector<double>& theta0,
                        double noise_per_feature, std::size_t m) {
    const double k = static_cast<double>(windows.size());
    ScoreParts out;
    out.weights.assign(binary.rows * m, 0.0);
    bool any = false;
    double wsum = 0.0;
    for (std::size_t j = 0; j < binary.rows; ++j) {
        for (std::size_t c = 0; c < m; ++c) {
            double count = 0.0, blurred_count = 0.0;
            for (std::size_t w : windows) {
                count += binary.at(j, w + c);
                blurred_count += blurred.at(j, w + c);
            }
            const double theta1 = blurred_count / k;
            if (theta1 <= 0.5) continue;
            const double delta = std::log(theta1) - std::log(theta0[j]);
            if (delta <= 0.0) continue;
            any = true;
            out.weights[j * m + c] = delta;
            wsum += delta;
            out.odds_event += delta * count;
            if (next) out.odds_next += delta * binary.at(j, *next + c);
        }
    }
    out.odds_next *= k;
    out.odds_noise = wsum * noise_per_feature * k;
    if (any) out.score = out.odds_event - std::max(out.odds_noise, out.odds_next);
    return out;
}

inline double iou(const eventx::Region& a, const eventx::Region& b) {
    const std::int64_t lo = std::max(a.start, b.start);
    const std::int64_t hi = std::min(a.end, b.end);
    const double inter = hi >= lo ? static_cast<double>(hi - lo + 1) : 0.0;
    const double uni = static_cast<double>(a.length() + b.length()) - inter;
    return inter / uni;
}

// Maximum one-to-one matching by exhaustive search over assignments.
inline std::size_t best_matching(const std::vector<eventx::Region>& pred,
                                 const std::vector<eventx::Region>& truth, double tau,
                                 std::size_t i = 0, std::uint32_t used = 0) {
    if (i == pred.size()) return 0;
    std::size_t best = best_matching(pred, truth, tau, i + 1, used);
    for (std::size_t t = 0; t < truth.size(); ++t) {
        if (used & (1u << t)) continue;
        if (oracle::iou(pred[i], truth[t]) >= tau) {
            best = std::max(best, 1 + best_matching(pred, truth, tau, i + 1, used | (1u << t)));
        }
    }
    return best;
}

struct Span {
    std::size_t start, end;
    double sum;
};

// All O(n^2) intervals; ties to the shorter, then the leftmost.
inline Span max_subarray(const std::vector<double>& x) {
    Span best{0, 0, -std::numeric_limits<double>::infinity()};
    for (std::size_t s = 0; s < x.size(); ++s) {
        double acc = 0.0;
        for (std::size_t e = s; e < x.size(); ++e) {
            acc += x[e];
            const std::size_t len = e - s + 1, best_len = best.end - best.start + 1;
            if (acc > best.sum || (acc == best.sum && (len < best_len || (len == best_len && s < best.start)))) {
                best = {s, e, acc};
            }
        }
    }
    return best;
}

// Structure score by direct evaluation against explicit walks.
inline double structure_score(const std::vector<double>& sub, std::size_t start,
                              const std::vector<std::vector<double>>& walks) {
    const std::size_t m = sub.size();
    double mu = 0.0;
    for (double v : sub) mu += v;
    mu /= static_cast<double>(m);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& w : walks) {
        double wm = 0.0;
        for (std::size_t i = 0; i < m; ++i) wm += w[start + i];
        wm /= static_cast<double>(m);
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double d = (sub[i] - mu) - (w[start + i] - wm);
            acc += d * d;
        }
        best = std::min(best, acc / static_cast<double>(m));
    }
    return best;
}

inline std::vector<double> random_walk(std::size_t n, std::uint64_t seed, double sigma = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> step(0.0, sigma);
    std::vector<double> x(n);
    double acc = 0.0;
    for (auto& v : x) {
        acc += step(rng);
        v = acc;
    }
    return x;
}

}  // namespace oracle
