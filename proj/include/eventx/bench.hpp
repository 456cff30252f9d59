#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "eventx/core.hpp"

namespace eventx::bench {

struct BenchRow {
    std::string experiment;  // "scaling_n" or "sweep_mmax"
    std::string data;        // "random_walk" or "planted"
    std::size_t n = 0;
    std::size_t m_min = 0;
    std::size_t m_max = 0;
    double wall_ms = 0.0;    // best of `repeats`
    bool found = false;
    std::size_t num_regions = 0;
};

/// Univariate random walk, or a walk with five planted sine bursts of
/// length 125, suitable for bounds (100, 150).
TimeSeries bench_series(const std::string& data, std::size_t n, std::uint64_t seed);

/// Best-of-`repeats` wall time of one extraction.
BenchRow time_extraction(const std::string& experiment, const std::string& data, std::size_t n,
                         LengthBounds bounds, std::uint64_t seed, int repeats);

/// N in {2000, 4000, 8000, 16000} at bounds (100, 150).
std::vector<BenchRow> scaling_in_n(const std::vector<std::string>& data_kinds, std::uint64_t seed,
                                   int repeats);

/// N = 5000, m_max in {150, 200, 250, 300} with m_min = m_max - 50.
std::vector<BenchRow> sweep_mmax(const std::string& data, std::uint64_t seed, int repeats);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace eventx::bench
