// Command-line front end: extract, eval, synth and bench.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eventx/bench.hpp"
#include "eventx/eval.hpp"
#include "eventx/extract.hpp"
#include "eventx/io.hpp"
#include "eventx/synthgen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kConfigError = 2,
    kParseError = 3,
    kNoEventFound = 4,
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw eventx::ConfigError("bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    for (double v : parse_double_list(text)) {
        if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
            throw eventx::ConfigError("seed indices must be non-negative integers");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

// Rewrites `--mode X` / `--mode=X` into a leading subcommand so both spellings
// reach the same handler.
std::vector<std::string> normalize_mode(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string mode;
        if (args[i] == "--mode" && i + 1 < args.size()) {
            mode = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
        } else if (args[i].rfind("--mode=", 0) == 0) {
            mode = args[i].substr(7);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            continue;
        }
        args.insert(args.begin(), mode);
        break;
    }
    std::vector<std::string> out{argv[0]};
    out.insert(out.end(), args.begin(), args.end());
    return out;
}

struct ExtractArgs {
    std::string input;
    std::string out = "regions.json";
    std::string manifest;
    std::size_t mmin = 0;
    std::size_t mmax = 0;
    double min_frac = 1.0 / 20.0;
    double max_frac = 1.0 / 10.0;
    std::uint64_t seed = 0;
    double threshold = 0.25;
    std::size_t walks = 100;
    std::size_t seeds_per_side = 10;
    std::string manual_seeds;
    std::string dump_featmat;
    std::string diagnostics;
    bool verbose = false;
};

int run_extract(const ExtractArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string raw = eventx::io::read_file(a.input);
    std::istringstream in(raw);
    const eventx::TimeSeries ts = eventx::io::read_series_csv(in);
    const double ingest_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    eventx::ExtractConfig cfg;
    if (a.mmin || a.mmax) {
        if (!a.mmin || !a.mmax) throw eventx::ConfigError("--mmin and --mmax must be given together");
        cfg.bounds = eventx::LengthBounds{a.mmin, a.mmax};
    }
    cfg.fractions = {a.min_frac, a.max_frac};
    cfg.rng_seed = a.seed;
    cfg.distance_threshold = a.threshold;
    cfg.num_walks = a.walks;
    cfg.seeds_per_side = a.seeds_per_side;
    if (!a.manual_seeds.empty()) cfg.manual_seeds = parse_index_list(a.manual_seeds);

    eventx::ExtractOptions opts;
    opts.keep_traces = a.verbose;
    const eventx::ExtractResult result = eventx::extract(ts, cfg, opts);

    eventx::io::write_file(a.out, eventx::io::result_to_json(result).dump(2) + "\n");
    if (!a.dump_featmat.empty()) {
        std::ofstream f(a.dump_featmat);
        eventx::io::write_feature_dump(f, result);
    }
    if (!a.diagnostics.empty() || a.verbose) {
        const std::string path = a.diagnostics.empty() ? a.out + ".diagnostics.json" : a.diagnostics;
        eventx::io::write_file(path, eventx::io::diagnostics_to_json(result).dump(2) + "\n");
    }

    json manifest;
    manifest["command"] = "extract";
    manifest["input"] = {{"path", a.input}, {"sha256", eventx::io::sha256_hex(raw)},
                         {"n", ts.length()}, {"d", ts.num_dims()}};
    manifest["config"] = eventx::io::config_to_json(result.config);
    manifest["rng_seed"] = result.config.rng_seed;
    auto timings = eventx::io::timings_to_json(result.timings);
    timings["ingest"] = ingest_ms;
    manifest["timings_ms"] = timings;
    manifest["result"] = {{"found", result.found}, {"num_regions", result.regions.size()},
                          {"score", result.found ? json(result.score) : json(nullptr)},
                          {"output", a.out}};
    const std::string manifest_path = a.manifest.empty() ? a.out + ".manifest.json" : a.manifest;
    eventx::io::write_file(manifest_path, manifest.dump(2) + "\n");

    for (const auto& note : result.notes) std::cerr << "note: " << note << "\n";
    if (!result.found) {
        std::cerr << result.reason << "\n";
        return kNoEventFound;
    }
    std::cout << result.regions.size() << " regions written to " << a.out << "\n";
    return kOk;
}

struct EvalArgs {
    std::string regions;
    std::string truth;
    std::string taus;
    std::string out;
    bool count_only = false;
};

int run_eval(const EvalArgs& a) {
    const auto predicted = eventx::io::read_regions_json(a.regions);
    const auto truth = eventx::io::read_regions_csv(a.truth);
    const auto taus = a.taus.empty() ? eventx::default_tau_grid() : parse_double_list(a.taus);
    for (double t : taus) {
        if (!(t >= 0.0 && t <= 1.0)) throw eventx::ConfigError("tau values must lie in [0, 1]");
    }
    const auto mode = a.count_only ? eventx::MatchMode::count_only : eventx::MatchMode::overlap;
    const auto reports = eventx::f1_sweep(predicted, truth, taus, mode);
    const std::string text = eventx::io::reports_to_json(reports, predicted.size(), truth.size()).dump(2) + "\n";
    if (a.out.empty()) {
        std::cout << text;
    } else {
        eventx::io::write_file(a.out, text);
    }
    return kOk;
}

struct SynthArgs {
    std::string out_dir = "synth";
    std::size_t count = 1;
    eventx::SynthSpec spec;
    std::string pattern = "sine-burst";
    std::string relevant = "0";
    std::string template_csv;
    bool splice = false;
};

int run_synth(SynthArgs a) {
    a.spec.pattern = eventx::parse_pattern(a.pattern);
    a.spec.relevant_dims = parse_index_list(a.relevant);
    a.spec.mode = a.splice ? eventx::PlantMode::splice : eventx::PlantMode::additive;
    if (!a.template_csv.empty()) {
        const auto tmpl = eventx::io::read_series_csv(a.template_csv);
        const auto v = tmpl.dim(0);
        a.spec.custom_template.assign(v.begin(), v.end());
        a.spec.pattern = eventx::Pattern::custom;
    }
    fs::create_directories(a.out_dir);
    json manifest;
    manifest["command"] = "synth";
    manifest["series"] = json::array();
    for (std::size_t i = 0; i < a.count; ++i) {
        eventx::SynthSpec spec = a.spec;
        spec.rng_seed = a.spec.rng_seed + i;
        const auto synth = eventx::generate(spec);
        const std::string stem = (fs::path(a.out_dir) / ("series_" + std::to_string(i))).string();
        {
            std::ofstream f(stem + ".csv");
            eventx::io::write_series_csv(f, synth.series);
        }
        {
            std::ofstream f(stem + ".truth.csv");
            eventx::io::write_regions_csv(f, synth.truth);
        }
        manifest["series"].push_back({{"series", stem + ".csv"}, {"truth", stem + ".truth.csv"},
                                      {"spec", eventx::io::spec_to_json(spec)}});
    }
    eventx::io::write_file((fs::path(a.out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
    std::cout << a.count << " series written to " << a.out_dir << "\n";
    return kOk;
}

struct BenchArgs {
    bool scaling = false;
    std::string out;
    std::uint64_t seed = 0;
    int repeats = 3;
};

int run_bench(const BenchArgs& a) {
    std::vector<eventx::bench::BenchRow> rows;
    if (a.scaling) {
        rows = eventx::bench::scaling_in_n({"random_walk", "planted"}, a.seed, a.repeats);
    }
    for (const auto& data : {"random_walk", "planted"}) {
        auto sweep = eventx::bench::sweep_mmax(data, a.seed, a.repeats);
        rows.insert(rows.end(), sweep.begin(), sweep.end());
    }
    if (a.out.empty()) {
        eventx::bench::write_csv(std::cout, rows);
    } else {
        std::ofstream f(a.out);
        eventx::bench::write_csv(f, rows);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Locate repeated instances of an unknown event in a weakly labeled time series"};
    app.require_subcommand(1);

    ExtractArgs ex;
    auto* extract = app.add_subcommand("extract", "Extract event instances from a CSV series");
    extract->add_option("input", ex.input, "CSV, rows = time steps, columns = dimensions")->required();
    extract->add_option("-o,--out", ex.out, "Output regions JSON")->envname("EVENTX_OUT");
    extract->add_option("--manifest", ex.manifest, "Run manifest path (default <out>.manifest.json)");
    extract->add_option("--mmin", ex.mmin, "Minimum instance length (samples)")->envname("EVENTX_MMIN");
    extract->add_option("--mmax", ex.mmax, "Maximum instance length (samples)")->envname("EVENTX_MMAX");
    extract->add_option("--min-frac", ex.min_frac, "m_min as a fraction of N")->envname("EVENTX_MIN_FRAC");
    extract->add_option("--max-frac", ex.max_frac, "m_max as a fraction of N")->envname("EVENTX_MAX_FRAC");
    extract->add_option("--seed", ex.seed, "RNG seed")->envname("EVENTX_SEED");
    extract->add_option("--threshold", ex.threshold, "Shape match distance threshold")->envname("EVENTX_THRESHOLD");
    extract->add_option("--walks", ex.walks, "Random walks in the null model")->envname("EVENTX_WALKS");
    extract->add_option("--seeds-per-side", ex.seeds_per_side, "Extra seeds on each side of an anchor");
    extract->add_option("--manual-seeds", ex.manual_seeds, "Comma-separated window starts to use as seeds")
        ->envname("EVENTX_MANUAL_SEEDS");
    extract->add_option("--dump-featmat", ex.dump_featmat, "Write dense feature matrices as CSV")
        ->envname("EVENTX_DUMP_FEATMAT");
    extract->add_option("--diagnostics", ex.diagnostics, "Write per-seed diagnostics JSON");
    extract->add_flag("-v,--verbose", ex.verbose, "Keep dot-product traces in the diagnostics");

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Score predicted regions against ground truth");
    eval->add_option("regions", ev.regions, "Regions JSON from extract")->required();
    eval->add_option("truth", ev.truth, "Ground-truth CSV with header start,end")->required();
    eval->add_option("--tau", ev.taus, "Comma-separated IOU thresholds (default 0.05..0.95)")->envname("EVENTX_TAU");
    eval->add_flag("--count-only", ev.count_only, "Count the first |truth| regions as correct");
    eval->add_option("-o,--out", ev.out, "Report JSON path (default stdout)");

    SynthArgs sy;
    auto* synth = app.add_subcommand("synth", "Generate labeled synthetic series");
    synth->add_option("--out-dir", sy.out_dir, "Output directory");
    synth->add_option("--count", sy.count, "Number of series");
    synth->add_option("--n", sy.spec.n, "Series length");
    synth->add_option("--d", sy.spec.d, "Dimensions");
    synth->add_option("--instances", sy.spec.num_instances, "Planted instances per series");
    synth->add_option("--pattern", sy.pattern, "sine-burst | triangle | square | step-ramp");
    synth->add_option("--template-csv", sy.template_csv, "Plant the first column of this CSV instead");
    synth->add_option("--base-length", sy.spec.base_length, "Nominal instance length");
    synth->add_option("--jitter", sy.spec.length_jitter, "Relative length jitter in [0, 0.5)");
    synth->add_option("--snr", sy.spec.amplitude_snr, "Pattern amplitude relative to the walk");
    synth->add_option("--relevant-dims", sy.relevant, "Comma-separated dimensions receiving the pattern");
    synth->add_option("--min-gap", sy.spec.min_gap, "Minimum samples between instances");
    synth->add_flag("--splice", sy.splice, "Replace the walk instead of adding to it");
    synth->add_option("--seed", sy.spec.rng_seed, "RNG seed of the first series")->envname("EVENTX_SEED");

    BenchArgs be;
    auto* bench = app.add_subcommand("bench", "Time extraction on random-walk and planted data");
    bench->add_flag("--scaling", be.scaling, "Include the series-length scaling experiment");
    bench->add_option("-o,--out", be.out, "CSV output (default stdout)");
    bench->add_option("--seed", be.seed, "RNG seed")->envname("EVENTX_SEED");
    bench->add_option("--repeats", be.repeats, "Runs per configuration (best is reported)");

    const auto args = normalize_mode(argc, argv);
    std::vector<const char*> cargs;
    for (const auto& s : args) cargs.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*extract) return run_extract(ex);
        if (*eval) return run_eval(ev);
        if (*synth) return run_synth(sy);
        if (*bench) return run_bench(be);
    } catch (const eventx::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const eventx::io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const eventx::DataError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
