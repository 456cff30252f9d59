#include "eventx/extract.hpp"

#include <algorithm>
#include <chrono>

#include "eventx/structure.hpp"

namespace eventx {

namespace {

class StageClock {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
        return ms;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace

ExtractResult extract(const TimeSeries& ts, const ExtractConfig& cfg, const ExtractOptions& options) {
    ExtractResult out;
    out.config = validate_config(ts, cfg);
    const ValidatedConfig& vc = out.config;
    out.notes = vc.notes;
    StageClock clock;

    const auto lengths = powers_of_two_in(kMinShapeLength, vc.bounds.m_max);
    const auto ensembles = build_ensembles(ts, vc.num_walks, vc.rng_seed);
    const StructureTable scores = structure_scores_all(ts, lengths, ensembles);
    out.timings.structure_ms = clock.lap();

    try {
        const auto shapes = sample_shapes(ts, vc, scores);
        out.features = build_feature_matrix(ts, shapes, vc);
    } catch (const NoRepeatingStructure& e) {
        out.timings.feature_matrix_ms = clock.lap();
        out.reason = std::string("no repeating structure: ") + e.what();
        return out;
    }
    out.blurred = blur(out.features, vc.bounds.m_min);
    out.timings.feature_matrix_ms = clock.lap();

    out.seeds = generate_seeds(scores, vc);
    out.timings.seeding_ms = clock.lap();

    const NoiseModel noise = make_noise_model(out.features, out.blurred);
    SearchOptions search_opts;
    search_opts.keep_traces = options.keep_traces;
    out.search = find_instances(out.seeds, out.features, out.blurred, vc.bounds, noise, search_opts);
    // Split the search wall time in proportion to its measured parts.
    const double search_ms = clock.lap();
    const double parts = out.search.candidates_ms + out.search.scoring_ms;
    out.timings.candidates_ms = parts > 0 ? search_ms * out.search.candidates_ms / parts : 0.0;
    out.timings.inference_ms = search_ms - out.timings.candidates_ms;

    if (!out.search.found) {
        out.reason = "no event found: every candidate subset selected an empty feature set";
        return out;
    }

    auto recovery = recover_regions(out.search.best, noise.mean_value, vc.n, vc.bounds);
    out.timings.bounds_ms = clock.lap();

    out.found = true;
    out.score = out.search.best.score;
    out.regions = std::move(recovery.regions);
    out.windows = out.search.best.windows;
    std::sort(out.windows.begin(), out.windows.end());
    out.start_offset = recovery.start_offset;
    out.end_offset = recovery.end_offset;
    out.weights = std::move(recovery.image);
    for (auto& w : recovery.warnings) out.notes.push_back(std::move(w));
    return out;
}

std::vector<std::string> check_invariants(const ExtractResult& r) {
    std::vector<std::string> bad;
    const std::size_t n = r.config.n;
    const auto& fm = r.features;
    for (std::size_t j = 0; j < fm.num_rows(); ++j) {
        const auto row = fm.row(j);
        const auto nnz = static_cast<std::size_t>(std::count(row.begin(), row.end(), std::uint8_t{1}));
        if (nnz < 2) bad.push_back("feature row " + std::to_string(j) + " has fewer than 2 nonzeros");
        if (2 * nnz > n) bad.push_back("feature row " + std::to_string(j) + " is more than half nonzeros");
    }
    const auto& b = r.blurred;
    for (std::size_t j = 0; j < b.num_rows(); ++j) {
        for (double v : b.row(j)) {
            if (!(v >= 0.0 && v <= 1.0)) {
                bad.push_back("blurred row " + std::to_string(j) + " has an entry outside [0, 1]");
                break;
            }
        }
    }
    if (!r.found) return bad;

    for (std::size_t i = 1; i < r.windows.size(); ++i) {
        if (r.windows[i] - r.windows[i - 1] < r.config.bounds.m_min) {
            bad.push_back("windows " + std::to_string(r.windows[i - 1]) + " and " +
                          std::to_string(r.windows[i]) + " are closer than m_min");
        }
    }
    if (r.regions.size() != r.windows.size()) bad.push_back("one region per window expected");
    for (std::size_t i = 0; i < std::min(r.regions.size(), r.windows.size()); ++i) {
        const Region& reg = r.regions[i];
        const auto w = static_cast<std::int64_t>(r.windows[i]);
        const auto m = static_cast<std::int64_t>(r.config.bounds.m_max);
        if (!reg.valid_in(n)) bad.push_back("region " + std::to_string(i) + " is not a valid region");
        if (reg.start < w || reg.end > w + m - 1) {
            bad.push_back("region " + std::to_string(i) + " lies outside its window");
        }
    }
    return bad;
}

}  // namespace eventx
