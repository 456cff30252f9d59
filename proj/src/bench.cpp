#include "eventx/bench.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <ostream>

#include "eventx/extract.hpp"
#include "eventx/synthgen.hpp"

namespace eventx::bench {

TimeSeries bench_series(const std::string& data, std::size_t n, std::uint64_t seed) {
    if (data == "random_walk") return TimeSeries({background_walk(seed, 0, n)});
    if (data == "planted") {
        SynthSpec spec;
        spec.n = n;
        spec.d = 1;
        spec.num_instances = 5;
        spec.base_length = 125;
        spec.length_jitter = 0.1;
        spec.min_gap = 100;
        spec.rng_seed = seed;
        return generate(spec).series;
    }
    throw std::invalid_argument("unknown bench data '" + data + "'");
}

BenchRow time_extraction(const std::string& experiment, const std::string& data, std::size_t n,
                         LengthBounds bounds, std::uint64_t seed, int repeats) {
    const TimeSeries ts = bench_series(data, n, seed);
    ExtractConfig cfg;
    cfg.bounds = bounds;
    cfg.rng_seed = seed;

    BenchRow row{experiment, data, n, bounds.m_min, bounds.m_max};
    row.wall_ms = std::numeric_limits<double>::infinity();
    for (int r = 0; r < std::max(repeats, 1); ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        const ExtractResult res = extract(ts, cfg);
        const auto t1 = std::chrono::steady_clock::now();
        row.wall_ms = std::min(row.wall_ms, std::chrono::duration<double, std::milli>(t1 - t0).count());
        row.found = res.found;
        row.num_regions = res.regions.size();
    }
    return row;
}

std::vector<BenchRow> scaling_in_n(const std::vector<std::string>& data_kinds, std::uint64_t seed,
                                   int repeats) {
    std::vector<BenchRow> rows;
    for (const auto& data : data_kinds) {
        for (std::size_t n : {2000u, 4000u, 8000u, 16000u}) {
            rows.push_back(time_extraction("scaling_n", data, n, {100, 150}, seed, repeats));
        }
    }
    return rows;
}

std::vector<BenchRow> sweep_mmax(const std::string& data, std::uint64_t seed, int repeats) {
    std::vector<BenchRow> rows;
    for (std::size_t m_max : {150u, 200u, 250u, 300u}) {
        rows.push_back(time_extraction("sweep_mmax", data, 5000, {m_max - 50, m_max}, seed, repeats));
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "experiment,data,n,m_min,m_max,wall_ms,found,num_regions\n";
    for (const auto& r : rows) {
        out << r.experiment << ',' << r.data << ',' << r.n << ',' << r.m_min << ',' << r.m_max << ','
            << r.wall_ms << ',' << (r.found ? 1 : 0) << ',' << r.num_regions << '\n';
    }
}

}  // namespace eventx::bench
