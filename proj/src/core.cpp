#include "eventx/core.hpp"

#include <cmath>
#include <sstream>

namespace eventx {

TimeSeries::TimeSeries(std::vector<std::vector<double>> dims, std::vector<std::string> dim_names)
    : dims_(std::move(dims)), dim_names_(std::move(dim_names)) {
    if (dims_.empty()) throw DataError("time series has no dimensions");
    const std::size_t n = dims_.front().size();
    if (n < 2) throw DataError("time series needs at least 2 time steps, got " + std::to_string(n));
    for (std::size_t d = 0; d < dims_.size(); ++d) {
        if (dims_[d].size() != n) {
            throw DataError("dimension " + std::to_string(d) + " has length " +
                            std::to_string(dims_[d].size()) + ", expected " + std::to_string(n));
        }
        for (std::size_t t = 0; t < n; ++t) {
            if (!std::isfinite(dims_[d][t])) {
                throw DataError("non-finite value at time " + std::to_string(t) + ", dimension " +
                                std::to_string(d));
            }
        }
    }
    if (!dim_names_.empty() && dim_names_.size() != dims_.size()) {
        throw DataError("got " + std::to_string(dim_names_.size()) + " dimension names for " +
                        std::to_string(dims_.size()) + " dimensions");
    }
}

LengthBounds resolve_fractional_bounds(std::size_t n, const FractionalBounds& fractions) {
    if (!(fractions.min_frac > 0.0) || !(fractions.max_frac > 0.0) || fractions.min_frac > 1.0 ||
        fractions.max_frac > 1.0) {
        throw ConfigError("length fractions must lie in (0, 1]");
    }
    const auto nd = static_cast<double>(n);
    LengthBounds b;
    b.m_min = static_cast<std::size_t>(std::floor(nd * fractions.min_frac));
    b.m_max = static_cast<std::size_t>(std::floor(nd * fractions.max_frac));
    if (b.m_min < kMinResolvedMmin) b.m_min = kMinResolvedMmin;
    return b;
}

void check_bounds(const LengthBounds& b, std::size_t n) {
    std::ostringstream msg;
    if (b.m_min == 0 || b.m_max == 0) {
        msg << "length bounds must be positive (m_min=" << b.m_min << ", m_max=" << b.m_max << ")";
    } else if (b.m_min > b.m_max) {
        msg << "m_min <= m_max violated (m_min=" << b.m_min << ", m_max=" << b.m_max << ")";
    } else if (2 * b.m_min <= b.m_max) {
        msg << "m_min > m_max/2 violated (m_min=" << b.m_min << ", m_max=" << b.m_max << ")";
    } else if (b.m_max > n) {
        msg << "m_max <= N violated (m_max=" << b.m_max << ", N=" << n << ")";
    } else if (b.m_max < kMinShapeLength) {
        msg << "m_max must be at least the shortest shape length " << kMinShapeLength
            << " (m_max=" << b.m_max << ")";
    } else {
        return;
    }
    throw ConfigError(msg.str());
}

ValidatedConfig validate_config(const TimeSeries& ts, const ExtractConfig& cfg) {
    ValidatedConfig out;
    out.n = ts.length();
    if (out.n < 2 || ts.num_dims() == 0) throw ConfigError("time series is empty");

    if (cfg.bounds) {
        out.bounds = *cfg.bounds;
    } else {
        out.bounds = resolve_fractional_bounds(out.n, cfg.fractions);
        if (2 * out.bounds.m_min <= out.bounds.m_max) {
            const std::size_t nudged = out.bounds.m_max / 2 + 1;
            out.notes.push_back("fractional m_min " + std::to_string(out.bounds.m_min) +
                                " raised to " + std::to_string(nudged) +
                                " to satisfy m_min > m_max/2");
            out.bounds.m_min = nudged;
        }
    }
    check_bounds(out.bounds, out.n);

    if (!(cfg.distance_threshold > 0.0 && cfg.distance_threshold < 1.0)) {
        throw ConfigError("distance_threshold must lie in (0, 1), got " +
                          std::to_string(cfg.distance_threshold));
    }
    if (cfg.num_walks == 0) throw ConfigError("num_walks must be positive");
    if (cfg.seeds_per_side == 0) throw ConfigError("seeds_per_side must be positive");
    for (std::size_t s : cfg.manual_seeds) {
        if (s + out.bounds.m_max > out.n) {
            throw ConfigError("manual seed " + std::to_string(s) + " is not a valid window start (max " +
                              std::to_string(out.n - out.bounds.m_max) + ")");
        }
    }

    out.rng_seed = cfg.rng_seed;
    out.distance_threshold = cfg.distance_threshold;
    out.num_walks = cfg.num_walks;
    out.seeds_per_side = cfg.seeds_per_side;
    out.manual_seeds = cfg.manual_seeds;
    return out;
}

std::vector<std::size_t> powers_of_two_in(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> out;
    for (std::size_t p = 1; p <= hi; p *= 2) {
        if (p >= lo) out.push_back(p);
    }
    return out;
}

}  // namespace eventx
