// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eventx/bench.hpp"
#include "eventx/bounds.hpp"
#include "eventx/eval.hpp"
#include "eventx/extract.hpp"
#include "eventx/io.hpp"
#include "eventx/synthgen.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace eventx;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    return ok;
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

bool close_rel(double got, double want, double scale, double tol) {
    if (got == want) return true;
    if (!std::isfinite(got) || !std::isfinite(want)) return false;
    return std::abs(got - want) <= tol * std::max({std::abs(got), std::abs(want), scale});
}

// Collects invariant violations from every extraction of criteria 1 and 5.
std::vector<std::string> g_violations;

void audit(const ExtractResult& r, const std::string& label) {
    for (auto& msg : check_invariants(r)) g_violations.push_back(label + ": " + msg);
}

SynthSpec protocol_spec(std::uint64_t seed) {
    SynthSpec spec;
    spec.n = 1000;
    spec.d = 3;
    spec.relevant_dims = {0};
    spec.num_instances = 5;
    spec.pattern = Pattern::sine_burst;
    spec.base_length = 60;
    spec.length_jitter = 0.2;
    spec.amplitude_snr = 3.0;
    spec.rng_seed = seed;
    return spec;
}

// Bounds are the 1/20 and 1/10 fractions of N = 1000.
ExtractConfig protocol_config(std::uint64_t seed) {
    ExtractConfig cfg;
    cfg.fractions = FractionalBounds{0.05, 0.10};
    cfg.rng_seed = seed;
    return cfg;
}

struct F1Pair {
    double at_050 = 0.0;
    double at_025 = 0.0;
};

// Mean F1 over 50 series generated from `data_seed`; the extractor uses
// `extract_seed` offsets of the same indices.
F1Pair protocol_run(std::uint64_t data_seed, std::uint64_t extract_seed, const std::string& label) {
    F1Pair sum;
    constexpr int kSeries = 50;
    for (int i = 0; i < kSeries; ++i) {
        auto spec = protocol_spec(data_seed + static_cast<std::uint64_t>(i));
        const auto cfg = protocol_config(extract_seed + static_cast<std::uint64_t>(i));
        // instances keep at least m_min apart, as resolved for N
        spec.min_gap = validate_config(TimeSeries({std::vector<double>(spec.n, 0.0)}), cfg).bounds.m_min;
        const auto synth = generate(spec);
        const auto res = extract(synth.series, cfg);
        audit(res, label + " series " + std::to_string(i));
        sum.at_050 += prf1(res.regions, synth.truth, 0.50).f1;
        sum.at_025 += prf1(res.regions, synth.truth, 0.25).f1;
    }
    return {sum.at_050 / kSeries, sum.at_025 / kSeries};
}

bool criterion_1_and_7(std::function<bool()>& report_7) {
    const auto t0 = Clock::now();
    const std::vector<std::uint64_t> seeds{1000, 2000, 3000};
    bool ok = true;
    std::ostringstream detail;
    for (auto s : seeds) {
        const auto f = protocol_run(s, s, "c1 seed " + std::to_string(s));
        ok = ok && f.at_050 >= 0.70 && f.at_025 >= 0.85;
        detail << "seed " << s << " F1@0.5=" << fmt("%.3f", f.at_050) << " F1@0.25=" << fmt("%.3f", f.at_025)
               << "; ";
    }
    const double secs = seconds_since(t0);
    ok = ok && secs < 120.0;
    detail << "runtime " << fmt("%.1f", secs) << " s (limit 120 s, floors 0.70/0.85)";
    const bool c1 = report(1, "synthetic accuracy", ok, detail.str());

    // Determinism: identical inputs give identical bytes; a changed seed
    // still clears the floors.
    const auto synth = generate([] {
        auto spec = protocol_spec(1000);
        spec.min_gap = 51;
        return spec;
    }());
    const auto a = io::result_to_json(extract(synth.series, protocol_config(1000))).dump(2);
    const auto b = io::result_to_json(extract(synth.series, protocol_config(1000))).dump(2);
    const auto reseeded = protocol_run(1000, 987654, "c7 reseeded");
    const bool ok7 = a == b && reseeded.at_050 >= 0.70 && reseeded.at_025 >= 0.85;
    std::ostringstream d7;
    d7 << "regions.json " << (a == b ? "byte-identical" : "DIFFERS") << " across reruns; extractor seed changed: F1@0.5="
       << fmt("%.3f", reseeded.at_050) << " F1@0.25=" << fmt("%.3f", reseeded.at_025);
    report_7 = [ok7, text = d7.str()] { return report(7, "determinism", ok7, text); };
    return c1;
}

bool criterion_2() {
    Rng rng = make_rng(2024, 99);
    int checked = 0, mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto p = fixtures::tiny_problem(rng);
        const std::size_t w = p.fm.length() - p.m_max + 1;
        std::uniform_int_distribution<std::size_t> pick(0, w - 1), size(2, 5);
        std::vector<std::size_t> windows(size(rng));
        for (auto& x : windows) x = pick(rng);
        const std::optional<std::size_t> next =
            trial % 4 == 0 ? std::nullopt : std::optional<std::size_t>(pick(rng));
        const auto got = compute_score(windows, next, p.fm, p.blurred, p.noise, p.m_max);
        const auto want = oracle::score(windows, next, fixtures::dense(p.fm), fixtures::dense(p.blurred),
                                        p.noise.theta0, p.noise.feature_density, p.m_max);
        const double scale = std::max({want.odds_event, want.odds_noise, want.odds_next});
        bool same = close_rel(got.score, want.score, scale, 1e-9) &&
                    close_rel(got.odds_event, want.odds_event, 0.0, 1e-9) &&
                    close_rel(got.odds_noise, want.odds_noise, 0.0, 1e-9) &&
                    close_rel(got.odds_next, want.odds_next, 0.0, 1e-9) && got.weights.size() == want.weights.size();
        for (std::size_t f = 0; same && f < want.weights.size(); ++f) {
            same = close_rel(got.weights[f], want.weights[f], 0.0, 1e-9);
        }
        ++checked;
        if (!same) ++mismatches;
    }
    return report(2, "score oracle", mismatches == 0,
                  std::to_string(checked - mismatches) + "/" + std::to_string(checked) +
                      " random tiny inputs agree to 1e-9 relative");
}

bool criterion_3() {
    Rng rng = make_rng(3033, 99);
    std::uniform_int_distribution<int> count(0, 6), pos(0, 80), len(0, 25);
    std::uniform_real_distribution<double> tau(0.0, 1.0);
    int agree = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Region> pred(static_cast<std::size_t>(count(rng))), truth(static_cast<std::size_t>(count(rng)));
        for (auto* v : {&pred, &truth}) {
            for (auto& r : *v) {
                r.start = pos(rng);
                r.end = r.start + len(rng);
            }
        }
        const double t = tau(rng);
        if (match_count(pred, truth, t) == oracle::best_matching(pred, truth, t)) ++agree;
    }
    return report(3, "matching oracle", agree == 1000, std::to_string(agree) + "/1000 cases equal brute force");
}

bool criterion_4() {
    Rng rng = make_rng(4044, 99);
    std::uniform_int_distribution<int> len(1, 50);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    std::uniform_int_distribution<int> ival(-5, 5);
    int agree = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> x(static_cast<std::size_t>(len(rng)));
        // half integer-valued so that ties occur
        for (auto& v : x) v = trial % 2 ? static_cast<double>(ival(rng)) : val(rng);
        const auto got = max_subarray(x);
        const auto want = oracle::max_subarray(x);
        if (got.start == want.start && got.end == want.end && got.sum == want.sum) ++agree;
    }
    return report(4, "max subarray oracle", agree == 1000, std::to_string(agree) + "/1000 vectors equal brute force");
}

bool criterion_5() {
    constexpr std::size_t n = 5000;
    std::vector<std::pair<std::string, std::vector<double>>> cases;
    cases.emplace_back("constant", std::vector<double>(n, 3.5));
    cases.emplace_back("random walk", background_walk(55, 0, n));
    std::vector<double> spike(n, 0.0);
    spike[n / 2] = 100.0;
    cases.emplace_back("single spike", spike);

    bool ok = true;
    std::ostringstream detail;
    for (const auto& [name, x] : cases) {
        const auto t0 = Clock::now();
        bool fine = true;
        std::string outcome;
        try {
            ExtractConfig cfg;
            cfg.rng_seed = 5;
            const auto res = extract(TimeSeries({x}), cfg);
            audit(res, "c5 " + name);
            for (const auto& r : res.regions) fine = fine && r.valid_in(n);
            outcome = res.found ? std::to_string(res.regions.size()) + " regions" : "no event found";
        } catch (const std::exception& e) {
            fine = false;
            outcome = std::string("threw: ") + e.what();
        }
        const double secs = seconds_since(t0);
        fine = fine && secs < 5.0;
        ok = ok && fine;
        detail << name << " -> " << outcome << " in " << fmt("%.2f", secs) << " s; ";
    }
    detail << "limit 5 s at N=5000";
    return report(5, "degenerate inputs", ok, detail.str());
}

bool criterion_6() {
    const auto r8 = bench::time_extraction("scaling_n", "random_walk", 8000, {100, 150}, 6, 3);
    const auto r16 = bench::time_extraction("scaling_n", "random_walk", 16000, {100, 150}, 6, 3);
    const double ratio = r16.wall_ms / r8.wall_ms;
    const auto sweep = bench::sweep_mmax("random_walk", 6, 3);
    double lo = sweep.front().wall_ms, hi = lo;
    for (const auto& r : sweep) {
        lo = std::min(lo, r.wall_ms);
        hi = std::max(hi, r.wall_ms);
    }
    const double spread = hi / lo;
    std::ostringstream detail;
    detail << "N=8000 " << fmt("%.0f", r8.wall_ms) << " ms, N=16000 " << fmt("%.0f", r16.wall_ms)
           << " ms, ratio " << fmt("%.2f", ratio) << " (limit 3); m_max sweep ";
    for (const auto& r : sweep) detail << r.m_max << ":" << fmt("%.0f", r.wall_ms) << "ms ";
    detail << "max/min " << fmt("%.2f", spread) << " (limit 2)";
    return report(6, "scaling", ratio <= 3.0 && spread < 2.0, detail.str());
}

}  // namespace

int main() {
    bool all = true;
    std::function<bool()> criterion_7;
    all &= criterion_1_and_7(criterion_7);
    all &= criterion_2();
    all &= criterion_3();
    all &= criterion_4();
    all &= criterion_5();
    all &= criterion_6();
    all &= criterion_7();

    std::ostringstream detail;
    detail << g_violations.size() << " violations over every run of criteria 1 and 5";
    for (std::size_t i = 0; i < std::min<std::size_t>(g_violations.size(), 5); ++i) detail << "; " << g_violations[i];
    all &= report(8, "structural invariants", g_violations.empty(), detail.str());
    return all ? 0 : 1;
}
