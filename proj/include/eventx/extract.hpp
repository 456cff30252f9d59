#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eventx/bounds.hpp"
#include "eventx/core.hpp"
#include "eventx/featmat.hpp"
#include "eventx/search.hpp"
#include "eventx/seeding.hpp"

namespace eventx {

/// Wall-clock milliseconds per pipeline stage.
struct StageTimings {
    double structure_ms = 0.0;
    double feature_matrix_ms = 0.0;
    double seeding_ms = 0.0;
    double candidates_ms = 0.0;  // dot-product traces and candidate selection
    double inference_ms = 0.0;   // subset scoring
    double bounds_ms = 0.0;

    double total_ms() const {
        return structure_ms + feature_matrix_ms + seeding_ms + candidates_ms + inference_ms + bounds_ms;
    }
};

struct ExtractResult {
    bool found = false;
    /// Why nothing was found, when found is false.
    std::string reason;

    std::vector<Region> regions;        // sorted by start
    std::vector<std::size_t> windows;   // sorted by start
    double score = kNoFeatureScore;
    std::size_t start_offset = 0;
    std::size_t end_offset = 0;

    ValidatedConfig config;
    FeatureMatrix features;
    BlurredMatrix blurred;
    SeedSet seeds;
    SearchResult search;
    WeightImage weights;
    std::vector<std::string> notes;
    StageTimings timings;
};

struct ExtractOptions {
    bool keep_traces = false;
};

/// Runs the whole pipeline. Throws ConfigError for invalid configuration;
/// a series without repeating structure or without any scoring subset
/// yields found == false.
ExtractResult extract(const TimeSeries& ts, const ExtractConfig& cfg, const ExtractOptions& options = {});

/// Structural invariants every result must satisfy. Returns one message per
/// violation; empty when all hold.
std::vector<std::string> check_invariants(const ExtractResult& result);

}  // namespace eventx
