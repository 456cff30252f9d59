#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "eventx/core.hpp"
#include "eventx/eval.hpp"
#include "eventx/extract.hpp"
#include "eventx/synthgen.hpp"

namespace eventx::io {

/// Malformed file contents.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rows are time steps, columns are dimensions. A first row containing any
/// non-numeric cell is taken as a header of dimension names. Throws
/// ParseError on ragged or non-numeric rows and DataError on non-finite
/// values.
TimeSeries read_series_csv(std::istream& in);
TimeSeries read_series_csv(const std::string& path);
void write_series_csv(std::ostream& out, const TimeSeries& ts);

/// Header `start,end`, inclusive integer indices.
std::vector<Region> read_regions_csv(std::istream& in);
std::vector<Region> read_regions_csv(const std::string& path);
void write_regions_csv(std::ostream& out, const std::vector<Region>& regions);

/// The deterministic part of an extraction: regions, windows, score and a
/// summary of the learned weights. Contains no timings.
nlohmann::json result_to_json(const ExtractResult& result);

/// Reads the `regions` array of a result file. An empty (or whitespace-only)
/// document yields no regions.
std::vector<Region> read_regions_json(std::istream& in);
std::vector<Region> read_regions_json(const std::string& path);

nlohmann::json reports_to_json(const std::vector<MatchReport>& reports, std::size_t num_predicted,
                               std::size_t num_truth);

/// Dense CSV of the binary matrix followed by the blurred matrix, one row
/// per feature, first column naming the matrix and row.
void write_feature_dump(std::ostream& out, const ExtractResult& result);

/// Per-seed best scores and, when kept, dot-product traces.
nlohmann::json diagnostics_to_json(const ExtractResult& result);

nlohmann::json spec_to_json(const SynthSpec& spec);
nlohmann::json config_to_json(const ValidatedConfig& cfg);
nlohmann::json timings_to_json(const StageTimings& t);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace eventx::io
