#include "eventx/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace eventx::io {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    // strtod also accepts nan/inf spellings, which ingestion must see so
    // that TimeSeries can reject them.
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

bool parse_int(const std::string& s, std::int64_t& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open " + path);
    return f;
}

}  // namespace

TimeSeries read_series_csv(std::istream& in) {
    std::vector<std::vector<double>> dims;
    std::vector<std::string> names;
    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(trim(line));
        std::vector<double> values(cells.size());
        bool numeric = true;
        for (std::size_t i = 0; i < cells.size(); ++i) numeric = numeric && parse_double(cells[i], values[i]);

        if (first) {
            first = false;
            dims.resize(cells.size());
            if (!numeric) {
                names = cells;
                continue;
            }
        }
        if (cells.size() != dims.size()) {
            throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(dims.size()) +
                             " columns, got " + std::to_string(cells.size()));
        }
        if (!numeric) throw ParseError("line " + std::to_string(lineno) + ": non-numeric value");
        for (std::size_t d = 0; d < values.size(); ++d) dims[d].push_back(values[d]);
    }
    if (dims.empty()) throw ParseError("no data rows");
    return TimeSeries(std::move(dims), std::move(names));
}

TimeSeries read_series_csv(const std::string& path) {
    auto f = open_in(path);
    return read_series_csv(f);
}

void write_series_csv(std::ostream& out, const TimeSeries& ts) {
    const auto& names = ts.dim_names();
    for (std::size_t d = 0; d < ts.num_dims(); ++d) {
        if (d) out << ',';
        out << (names.empty() ? "dim" + std::to_string(d) : names[d]);
    }
    out << '\n';
    out << std::setprecision(17);
    for (std::size_t t = 0; t < ts.length(); ++t) {
        for (std::size_t d = 0; d < ts.num_dims(); ++d) {
            if (d) out << ',';
            out << ts.dim(d)[t];
        }
        out << '\n';
    }
}

std::vector<Region> read_regions_csv(std::istream& in) {
    std::vector<Region> out;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty()) continue;
        const auto cells = split_csv_line(t);
        if (!header_seen) {
            header_seen = true;
            if (cells.size() == 2 && cells[0] == "start" && cells[1] == "end") continue;
            throw ParseError("ground truth must start with the header 'start,end'");
        }
        Region r;
        if (cells.size() != 2 || !parse_int(cells[0], r.start) || !parse_int(cells[1], r.end)) {
            throw ParseError("line " + std::to_string(lineno) + ": expected two integers");
        }
        if (r.start < 0 || r.end < r.start) {
            throw ParseError("line " + std::to_string(lineno) + ": invalid region");
        }
        out.push_back(r);
    }
    return out;
}

std::vector<Region> read_regions_csv(const std::string& path) {
    auto f = open_in(path);
    return read_regions_csv(f);
}

void write_regions_csv(std::ostream& out, const std::vector<Region>& regions) {
    out << "start,end\n";
    for (const Region& r : regions) out << r.start << ',' << r.end << '\n';
}

nlohmann::json result_to_json(const ExtractResult& r) {
    nlohmann::json j;
    j["found"] = r.found;
    if (!r.found) j["reason"] = r.reason;
    j["regions"] = nlohmann::json::array();
    for (const Region& reg : r.regions) j["regions"].push_back({{"start", reg.start}, {"end", reg.end}});
    j["windows"] = r.windows;
    j["bounds"] = {{"m_min", r.config.bounds.m_min}, {"m_max", r.config.bounds.m_max}};
    j["rng_seed"] = r.config.rng_seed;
    if (r.found) {
        j["score"] = r.score;
        j["offsets"] = {{"start", r.start_offset}, {"end", r.end_offset}};
        const auto& best = r.search.best;
        double weight_mass = 0.0;
        for (double w : best.weights) weight_mass += w;
        j["weights"] = {
            {"rows", r.weights.rows},
            {"cols", r.weights.cols},
            {"selected_features", best.feature_set.size()},
            {"total_weight", weight_mass},
            {"chance_level", r.weights.chance_level},
            {"column_scores", r.weights.column_scores},
        };
    }
    j["feature_matrix"] = {
        {"rows", r.features.num_rows()},
        {"candidates", r.features.stats().candidates},
        {"nonzeros", r.features.nonzeros()},
        {"blurred_mean", r.blurred.mean_value()},
    };
    j["notes"] = r.notes;
    return j;
}

std::vector<Region> read_regions_json(std::istream& in) {
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (trim(text).empty()) return {};
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    std::vector<Region> out;
    const auto it = j.find("regions");
    if (it == j.end()) return out;
    if (!it->is_array()) throw ParseError("'regions' must be an array");
    for (const auto& e : *it) {
        if (!e.contains("start") || !e.contains("end") || !e["start"].is_number_integer() ||
            !e["end"].is_number_integer()) {
            throw ParseError("each region needs integer 'start' and 'end'");
        }
        Region r{e["start"].get<std::int64_t>(), e["end"].get<std::int64_t>()};
        if (r.start < 0 || r.end < r.start) throw ParseError("invalid region in JSON");
        out.push_back(r);
    }
    return out;
}

std::vector<Region> read_regions_json(const std::string& path) {
    auto f = open_in(path);
    return read_regions_json(f);
}

nlohmann::json reports_to_json(const std::vector<MatchReport>& reports, std::size_t num_predicted,
                               std::size_t num_truth) {
    nlohmann::json j;
    j["num_predicted"] = num_predicted;
    j["num_truth"] = num_truth;
    j["reports"] = nlohmann::json::array();
    for (const auto& r : reports) {
        j["reports"].push_back({{"tau", r.tau},
                                {"match_count", r.match_count},
                                {"precision", r.precision},
                                {"recall", r.recall},
                                {"f1", r.f1}});
    }
    return j;
}

void write_feature_dump(std::ostream& out, const ExtractResult& r) {
    out << std::setprecision(6);
    for (std::size_t j = 0; j < r.features.num_rows(); ++j) {
        out << "binary_" << j;
        for (auto v : r.features.row(j)) out << ',' << static_cast<int>(v);
        out << '\n';
    }
    for (std::size_t j = 0; j < r.blurred.num_rows(); ++j) {
        out << "blurred_" << j;
        for (double v : r.blurred.row(j)) out << ',' << v;
        out << '\n';
    }
}

nlohmann::json diagnostics_to_json(const ExtractResult& r) {
    nlohmann::json j;
    j["anchors"] = r.seeds.anchors;
    j["seeds"] = nlohmann::json::array();
    for (const auto& s : r.search.per_seed) {
        nlohmann::json e = {{"seed", s.seed}, {"num_candidates", s.num_candidates}, {"best_k", s.best_k}};
        e["best_score"] = std::isfinite(s.best_score) ? nlohmann::json(s.best_score) : nlohmann::json(nullptr);
        if (!s.trace.empty()) e["trace"] = s.trace;
        j["seeds"].push_back(std::move(e));
    }
    j["best_seed"] = r.search.best_seed;
    const auto& st = r.features.stats();
    j["feature_matrix"] = {{"candidates", st.candidates},
                           {"zero_variance", st.zero_variance},
                           {"no_second_match", st.no_second_match},
                           {"too_dense", st.too_dense},
                           {"kept", r.features.num_rows()}};
    return j;
}

nlohmann::json spec_to_json(const SynthSpec& s) {
    return {{"n", s.n},
            {"d", s.d},
            {"num_instances", s.num_instances},
            {"pattern", std::string(pattern_name(s.pattern))},
            {"base_length", s.base_length},
            {"length_jitter", s.length_jitter},
            {"amplitude_snr", s.amplitude_snr},
            {"relevant_dims", s.relevant_dims},
            {"min_gap", s.min_gap},
            {"mode", s.mode == PlantMode::additive ? "additive" : "splice"},
            {"rng_seed", s.rng_seed}};
}

nlohmann::json config_to_json(const ValidatedConfig& c) {
    return {{"n", c.n},
            {"m_min", c.bounds.m_min},
            {"m_max", c.bounds.m_max},
            {"rng_seed", c.rng_seed},
            {"distance_threshold", c.distance_threshold},
            {"num_walks", c.num_walks},
            {"seeds_per_side", c.seeds_per_side},
            {"manual_seeds", c.manual_seeds},
            {"notes", c.notes}};
}

nlohmann::json timings_to_json(const StageTimings& t) {
    return {{"structure_scores", t.structure_ms},
            {"feature_matrix", t.feature_matrix_ms},
            {"seed_generation", t.seeding_ms},
            {"candidate_generation", t.candidates_ms},
            {"inference", t.inference_ms},
            {"instance_bounds", t.bounds_ms},
            {"total", t.total_ms()}};
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

std::string read_file(const std::string& path) {
    auto f = open_in(path);
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << contents;
    if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace eventx::io
