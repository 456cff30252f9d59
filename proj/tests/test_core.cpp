#include "doctest.h"

#include <cmath>
#include <limits>

#include "eventx/core.hpp"

using namespace eventx;

namespace {

TimeSeries ramp(std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i);
    return TimeSeries({x});
}

ExtractConfig absolute(std::size_t lo, std::size_t hi) {
    ExtractConfig cfg;
    cfg.bounds = LengthBounds{lo, hi};
    return cfg;
}

}  // namespace

TEST_CASE("time series rejects malformed input") {
    CHECK_THROWS_AS(TimeSeries(std::vector<std::vector<double>>{}), DataError);
    CHECK_THROWS_AS(TimeSeries(std::vector<std::vector<double>>{{1.0}}), DataError);
    CHECK_THROWS_AS(TimeSeries({{1.0, 2.0}, {1.0}}), DataError);
    CHECK_THROWS_AS(TimeSeries({{1.0, std::nan("")}}), DataError);
    CHECK_THROWS_AS(TimeSeries({{1.0, std::numeric_limits<double>::infinity()}}), DataError);
    CHECK_THROWS_AS(TimeSeries({{1.0, 2.0}}, {"a", "b"}), DataError);

    TimeSeries ts({{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}}, {"x", "y"});
    CHECK(ts.num_dims() == 2);
    CHECK(ts.length() == 3);
    CHECK(ts.dim(1)[2] == 6.0);
}

TEST_CASE("region length and validity") {
    Region r{3, 7};
    CHECK(r.length() == 5);
    CHECK(r.valid_in(8));
    CHECK_FALSE(r.valid_in(7));
    CHECK_FALSE((Region{-1, 2}).valid_in(10));
    CHECK_FALSE((Region{5, 4}).valid_in(10));
}

TEST_CASE("fractional bounds resolve by floor") {
    const auto b = resolve_fractional_bounds(1000, {1.0 / 20.0, 1.0 / 10.0});
    CHECK(b.m_min == 50);
    CHECK(b.m_max == 100);
    CHECK(resolve_fractional_bounds(100, {1.0 / 20.0, 1.0 / 10.0}).m_min == kMinResolvedMmin);
    CHECK_THROWS_AS(resolve_fractional_bounds(100, {0.0, 0.1}), ConfigError);
}

TEST_CASE("absolute bounds use the strict half rule") {
    const auto ts = ramp(1000);
    CHECK_THROWS_AS(validate_config(ts, absolute(50, 100)), ConfigError);
    const auto ok = validate_config(ts, absolute(51, 100));
    CHECK(ok.bounds == LengthBounds{51, 100});
    CHECK(ok.notes.empty());

    CHECK_THROWS_AS(validate_config(ts, absolute(120, 100)), ConfigError);
    CHECK_THROWS_AS(validate_config(ramp(50), absolute(100, 100)), ConfigError);
    CHECK_THROWS_AS(validate_config(ts, absolute(0, 0)), ConfigError);
    CHECK_THROWS_AS(validate_config(ts, absolute(4, 6)), ConfigError);
}

TEST_CASE("violations name the constraint") {
    try {
        validate_config(ramp(1000), absolute(50, 100));
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("m_min > m_max/2") != std::string::npos);
    }
}

TEST_CASE("default fractions are nudged onto the valid side") {
    const auto vc = validate_config(ramp(1000), ExtractConfig{});
    CHECK(vc.bounds == LengthBounds{51, 100});
    CHECK(vc.notes.size() == 1);
    CHECK(2 * vc.bounds.m_min > vc.bounds.m_max);
    CHECK(vc.num_windows() == 901);
}

TEST_CASE("other config invariants") {
    const auto ts = ramp(1000);
    ExtractConfig cfg;
    cfg.distance_threshold = 1.0;
    CHECK_THROWS_AS(validate_config(ts, cfg), ConfigError);
    cfg.distance_threshold = 0.0;
    CHECK_THROWS_AS(validate_config(ts, cfg), ConfigError);
    cfg = {};
    cfg.num_walks = 0;
    CHECK_THROWS_AS(validate_config(ts, cfg), ConfigError);
    cfg = {};
    cfg.seeds_per_side = 0;
    CHECK_THROWS_AS(validate_config(ts, cfg), ConfigError);
    cfg = {};
    cfg.manual_seeds = {901};
    CHECK_THROWS_AS(validate_config(ts, cfg), ConfigError);
    cfg.manual_seeds = {900};
    CHECK_NOTHROW(validate_config(ts, cfg));
}

TEST_CASE("validated configs always satisfy the bound invariants") {
    for (std::size_t n : {16u, 40u, 99u, 160u, 1000u, 4321u}) {
        for (double lo : {0.01, 0.05, 0.2, 0.3}) {
            for (double hi : {0.1, 0.4, 0.5, 1.0}) {
                ExtractConfig cfg;
                cfg.fractions = {lo, hi};
                try {
                    const auto vc = validate_config(ramp(n), cfg);
                    CHECK(2 * vc.bounds.m_min > vc.bounds.m_max);
                    CHECK(vc.bounds.m_max <= n);
                    CHECK(vc.bounds.m_min <= vc.bounds.m_max);
                } catch (const ConfigError&) {
                }
            }
        }
    }
}

TEST_CASE("powers of two") {
    CHECK(powers_of_two_in(8, 100) == std::vector<std::size_t>{8, 16, 32, 64});
    CHECK(powers_of_two_in(8, 64) == std::vector<std::size_t>{8, 16, 32, 64});
    CHECK(powers_of_two_in(8, 7).empty());
}
