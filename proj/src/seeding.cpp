#include "eventx/seeding.hpp"

#include <algorithm>
#include <numeric>

namespace eventx {

std::vector<double> start_index_scores(const StructureTable& scores, const LengthBounds& bounds) {
    const std::size_t n = scores.series_length();
    if (bounds.m_max > n) throw ConfigError("m_max exceeds series length");
    std::vector<double> out(n - bounds.m_max + 1, 0.0);
    for (std::size_t li = 0; li < scores.lengths().size(); ++li) {
        const std::size_t m = scores.lengths()[li];
        if (m < kMinShapeLength || m > bounds.m_min) continue;
        for (std::size_t d = 0; d < scores.num_dims(); ++d) {
            const auto s = scores.scores(d, li);
            for (std::size_t t = 0; t < out.size(); ++t) out[t] += s[t];
        }
    }
    return out;
}

std::vector<std::size_t> pick_anchors(const std::vector<double>& start_scores, std::size_t min_gap,
                                      std::size_t count) {
    std::vector<std::size_t> order(start_scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return start_scores[a] > start_scores[b];
    });
    std::vector<std::size_t> picked;
    for (std::size_t idx : order) {
        if (picked.size() == count) break;
        const bool far = std::all_of(picked.begin(), picked.end(), [&](std::size_t p) {
            return (idx > p ? idx - p : p - idx) >= min_gap;
        });
        if (far) picked.push_back(idx);
    }
    return picked;
}

SeedSet expand_seeds(const std::vector<std::size_t>& anchors, std::size_t m_max,
                     std::size_t seeds_per_side, std::size_t last_start) {
    SeedSet out;
    out.anchors = anchors;
    const auto spacing = static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, m_max / seeds_per_side));
    const auto hi = static_cast<std::ptrdiff_t>(last_start);
    for (std::size_t a : anchors) {
        const auto base = static_cast<std::ptrdiff_t>(a);
        for (std::ptrdiff_t k = -static_cast<std::ptrdiff_t>(seeds_per_side);
             k <= static_cast<std::ptrdiff_t>(seeds_per_side); ++k) {
            out.indices.push_back(static_cast<std::size_t>(std::clamp(base + k * spacing, std::ptrdiff_t{0}, hi)));
        }
    }
    std::sort(out.indices.begin(), out.indices.end());
    out.indices.erase(std::unique(out.indices.begin(), out.indices.end()), out.indices.end());
    return out;
}

SeedSet generate_seeds(const StructureTable& scores, const ValidatedConfig& cfg) {
    const std::size_t n = cfg.n;
    if (n < cfg.bounds.m_max + 1) {
        throw ConfigError("N - m_max < 1: the series has no room for two window positions");
    }
    const std::size_t last_start = n - cfg.bounds.m_max;
    if (!cfg.manual_seeds.empty()) {
        SeedSet out;
        out.anchors = cfg.manual_seeds;
        out.indices = cfg.manual_seeds;
        std::sort(out.indices.begin(), out.indices.end());
        out.indices.erase(std::unique(out.indices.begin(), out.indices.end()), out.indices.end());
        return out;
    }
    const auto start_scores = start_index_scores(scores, cfg.bounds);
    auto anchors = pick_anchors(start_scores, cfg.bounds.m_min, 2);
    return expand_seeds(anchors, cfg.bounds.m_max, cfg.seeds_per_side, last_start);
}

}  // namespace eventx
