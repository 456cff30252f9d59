#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "eventx/core.hpp"

namespace eventx {

enum class Pattern { sine_burst, triangle, square, step_ramp, custom };

std::string_view pattern_name(Pattern p);
/// Throws std::invalid_argument for unknown names.
Pattern parse_pattern(std::string_view name);

enum class PlantMode {
    /// pattern added on top of the walk
    additive,
    /// walk replaced by the pattern, anchored at the walk's value at the
    /// instance start
    splice,
};

struct SynthSpec {
    std::size_t n = 1000;
    std::size_t d = 1;
    std::size_t num_instances = 5;
    Pattern pattern = Pattern::sine_burst;
    std::size_t base_length = 60;
    double length_jitter = 0.0;
    /// Peak pattern amplitude relative to sigma * sqrt(base_length), the
    /// walk's typical excursion over one instance (sigma = 1).
    double amplitude_snr = 3.0;
    std::vector<std::size_t> relevant_dims{0};
    /// Minimum number of samples between consecutive instances.
    std::size_t min_gap = 0;
    PlantMode mode = PlantMode::additive;
    std::uint64_t rng_seed = 0;
    /// Exemplar used when pattern == custom; resampled to each length.
    std::vector<double> custom_template;
};

/// Throws ConfigError if the spec is inconsistent.
void validate_spec(const SynthSpec& spec);

/// Pattern sampled at `length` points over [0, 1), peak magnitude 1.
std::vector<double> template_values(Pattern pattern, std::size_t length,
                                    const std::vector<double>& custom = {});

/// The background walk of dimension `dim` exactly as generate() draws it.
std::vector<double> background_walk(std::uint64_t rng_seed, std::size_t dim, std::size_t n);

struct SynthSeries {
    TimeSeries series;
    std::vector<Region> truth;  // sorted by start
};

/// Plants spec.num_instances uniformly scaled copies of the pattern at
/// random non-overlapping positions. Throws ConfigError when placement
/// keeps failing (the series is too short for the requested plants).
SynthSeries generate(const SynthSpec& spec);

}  // namespace eventx
