#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eventx {

/// Raised when a configuration violates one of its invariants.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when input data cannot form a valid TimeSeries.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// D-dimensional real-valued sequence of length N. Stored dimension-major:
/// dim(d) is a contiguous span of N samples.
class TimeSeries {
public:
    TimeSeries() = default;

    /// Throws DataError unless D >= 1, N >= 2, all rows have equal length
    /// and every value is finite.
    explicit TimeSeries(std::vector<std::vector<double>> dims,
                        std::vector<std::string> dim_names = {});

    std::size_t num_dims() const { return dims_.size(); }
    std::size_t length() const { return dims_.empty() ? 0 : dims_.front().size(); }

    std::span<const double> dim(std::size_t d) const { return dims_.at(d); }
    const std::vector<std::string>& dim_names() const { return dim_names_; }

private:
    std::vector<std::vector<double>> dims_;
    std::vector<std::string> dim_names_;
};

/// Inclusive index interval [start, end].
struct Region {
    std::int64_t start = 0;
    std::int64_t end = 0;

    std::int64_t length() const { return end - start + 1; }
    bool valid_in(std::size_t n) const {
        return start >= 0 && start <= end && end < static_cast<std::int64_t>(n);
    }
    friend bool operator==(const Region&, const Region&) = default;
};

struct LengthBounds {
    std::size_t m_min = 0;
    std::size_t m_max = 0;
    friend bool operator==(const LengthBounds&, const LengthBounds&) = default;
};

/// Instance-length bounds expressed as fractions of the series length.
struct FractionalBounds {
    double min_frac = 1.0 / 20.0;
    double max_frac = 1.0 / 10.0;
};

/// Smallest m_min produced when resolving fractional bounds; shorter
/// instances could not contain the shortest shape length.
inline constexpr std::size_t kMinResolvedMmin = 8;

struct ExtractConfig {
    std::optional<LengthBounds> bounds;   // absolute; takes precedence
    FractionalBounds fractions;           // used when bounds is empty
    std::uint64_t rng_seed = 0;
    double distance_threshold = 0.25;
    std::size_t num_walks = 100;
    std::size_t seeds_per_side = 10;
    /// When nonempty, these window starts are the only seeds.
    std::vector<std::size_t> manual_seeds;
};

/// ExtractConfig checked against a particular series. Only validate_config
/// constructs one with a non-default state.
struct ValidatedConfig {
    std::size_t n = 0;
    LengthBounds bounds;
    std::uint64_t rng_seed = 0;
    double distance_threshold = 0.25;
    std::size_t num_walks = 100;
    std::size_t seeds_per_side = 10;
    std::vector<std::size_t> manual_seeds;
    /// Human-readable notes about adjustments made while resolving.
    std::vector<std::string> notes;

    /// Number of sliding windows of length m_max.
    std::size_t num_windows() const { return n - bounds.m_max + 1; }
};

/// floor(n * fraction) for both bounds, with m_min raised to at least
/// kMinResolvedMmin. No validity checks.
LengthBounds resolve_fractional_bounds(std::size_t n, const FractionalBounds& fractions);

/// Throws ConfigError naming the violated constraint.
void check_bounds(const LengthBounds& bounds, std::size_t n);

/// Resolves fractional bounds against the series and checks every invariant.
/// Fractional bounds landing exactly on 2*m_min == m_max (the default
/// fractions do) get m_min nudged up to floor(m_max/2)+1; absolute bounds
/// are never adjusted.
ValidatedConfig validate_config(const TimeSeries& ts, const ExtractConfig& cfg);

/// Powers of two in [lo, hi].
std::vector<std::size_t> powers_of_two_in(std::size_t lo, std::size_t hi);

/// Shape lengths used throughout: powers of two in [8, m_max].
inline constexpr std::size_t kMinShapeLength = 8;

}  // namespace eventx
