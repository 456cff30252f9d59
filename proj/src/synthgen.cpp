#include "eventx/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eventx/rng.hpp"

namespace eventx {

std::string_view pattern_name(Pattern p) {
    switch (p) {
        case Pattern::sine_burst: return "sine-burst";
        case Pattern::triangle: return "triangle";
        case Pattern::square: return "square";
        case Pattern::step_ramp: return "step-ramp";
        case Pattern::custom: return "custom";
    }
    return "unknown";
}

Pattern parse_pattern(std::string_view name) {
    for (Pattern p : {Pattern::sine_burst, Pattern::triangle, Pattern::square, Pattern::step_ramp,
                      Pattern::custom}) {
        if (pattern_name(p) == name) return p;
    }
    throw std::invalid_argument("unknown pattern '" + std::string(name) + "'");
}

void validate_spec(const SynthSpec& s) {
    if (s.d == 0) throw ConfigError("synthetic series needs at least one dimension");
    if (s.num_instances < 2) throw ConfigError("num_instances must be at least 2");
    if (s.base_length < 2) throw ConfigError("base_length must be at least 2");
    if (!(s.length_jitter >= 0.0 && s.length_jitter < 0.5)) throw ConfigError("length_jitter must lie in [0, 0.5)");
    if (!(s.amplitude_snr > 0.0)) throw ConfigError("amplitude_snr must be positive");
    if (s.relevant_dims.empty()) throw ConfigError("relevant_dims must not be empty");
    for (std::size_t d : s.relevant_dims) {
        if (d >= s.d) throw ConfigError("relevant dimension " + std::to_string(d) + " out of range");
    }
    const double planted = static_cast<double>(s.num_instances * s.base_length) * (1.0 + s.length_jitter);
    if (!(planted < static_cast<double>(s.n) / 2.0)) {
        throw ConfigError("instances would cover half the series or more; use a larger n");
    }
    if (s.pattern == Pattern::custom && s.custom_template.size() < 2) {
        throw ConfigError("custom pattern needs a template of at least 2 values");
    }
}

std::vector<double> template_values(Pattern pattern, std::size_t length, const std::vector<double>& custom) {
    std::vector<double> out(length);
    const double pi = std::numbers::pi;
    double peak = 0.0;
    for (std::size_t i = 0; i < length; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(length);
        double v = 0.0;
        switch (pattern) {
            case Pattern::sine_burst: v = std::sin(2.0 * pi * 3.0 * u); break;
            case Pattern::triangle: v = 1.0 - 4.0 * std::abs(u - 0.5); break;
            case Pattern::square: v = u < 0.5 ? 1.0 : -1.0; break;
            case Pattern::step_ramp: v = u < 0.6 ? u / 0.6 : -0.5; break;
            case Pattern::custom: {
                if (custom.size() < 2) throw std::invalid_argument("custom template too short");
                const double pos = u * static_cast<double>(custom.size() - 1);
                const auto lo = static_cast<std::size_t>(std::floor(pos));
                const std::size_t hi = std::min(lo + 1, custom.size() - 1);
                const double frac = pos - static_cast<double>(lo);
                v = custom[lo] * (1.0 - frac) + custom[hi] * frac;
                break;
            }
        }
        out[i] = v;
        peak = std::max(peak, std::abs(v));
    }
    if (pattern == Pattern::custom && peak > 0.0) {
        for (double& v : out) v /= peak;
    }
    return out;
}

std::vector<double> background_walk(std::uint64_t rng_seed, std::size_t dim, std::size_t n) {
    Rng rng = make_rng(rng_seed, stream::kSynthWalk, static_cast<std::uint32_t>(dim));
    std::normal_distribution<double> step(0.0, 1.0);
    std::vector<double> w(n);
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        if (t > 0) acc += step(rng);
        w[t] = acc;
    }
    return w;
}

namespace {

bool fits(const std::vector<Region>& placed, const Region& r, std::size_t gap) {
    const auto g = static_cast<std::int64_t>(gap);
    return std::all_of(placed.begin(), placed.end(), [&](const Region& p) {
        return r.start > p.end + g || p.start > r.end + g;
    });
}

std::vector<Region> place_instances(const SynthSpec& spec, Rng& rng) {
    const double base = static_cast<double>(spec.base_length);
    const auto lo = static_cast<std::size_t>(std::lround(base * (1.0 - spec.length_jitter)));
    const auto hi = static_cast<std::size_t>(std::lround(base * (1.0 + spec.length_jitter)));
    std::uniform_int_distribution<std::size_t> length_dist(std::max<std::size_t>(lo, 2), std::max<std::size_t>(hi, 2));

    constexpr int kRestarts = 50;
    constexpr int kTriesPerInstance = 1000;
    for (int restart = 0; restart < kRestarts; ++restart) {
        std::vector<Region> placed;
        bool ok = true;
        for (std::size_t i = 0; i < spec.num_instances && ok; ++i) {
            const std::size_t len = length_dist(rng);
            if (len > spec.n) {
                ok = false;
                break;
            }
            std::uniform_int_distribution<std::size_t> start_dist(0, spec.n - len);
            ok = false;
            for (int tries = 0; tries < kTriesPerInstance; ++tries) {
                const auto s = static_cast<std::int64_t>(start_dist(rng));
                Region r{s, s + static_cast<std::int64_t>(len) - 1};
                if (fits(placed, r, spec.min_gap)) {
                    placed.push_back(r);
                    ok = true;
                    break;
                }
            }
        }
        if (ok) {
            std::sort(placed.begin(), placed.end(), [](const Region& a, const Region& b) { return a.start < b.start; });
            return placed;
        }
    }
    throw ConfigError("could not place " + std::to_string(spec.num_instances) +
                      " instances without overlap; use a larger n or a smaller min_gap");
}

}  // namespace

SynthSeries generate(const SynthSpec& spec) {
    validate_spec(spec);
    std::vector<std::vector<double>> dims(spec.d);
    for (std::size_t d = 0; d < spec.d; ++d) dims[d] = background_walk(spec.rng_seed, d, spec.n);

    Rng rng = make_rng(spec.rng_seed, stream::kSynthPlant);
    auto truth = place_instances(spec, rng);
    const double amplitude = spec.amplitude_snr * std::sqrt(static_cast<double>(spec.base_length));

    for (const Region& r : truth) {
        const auto len = static_cast<std::size_t>(r.length());
        const auto tmpl = template_values(spec.pattern, len, spec.custom_template);
        const auto s = static_cast<std::size_t>(r.start);
        for (std::size_t d : spec.relevant_dims) {
            auto& x = dims[d];
            const double anchor = x[s];
            for (std::size_t i = 0; i < len; ++i) {
                if (spec.mode == PlantMode::additive) {
                    x[s + i] += amplitude * tmpl[i];
                } else {
                    x[s + i] = anchor + amplitude * tmpl[i];
                }
            }
        }
    }
    return {TimeSeries(std::move(dims)), std::move(truth)};
}

}  // namespace eventx
