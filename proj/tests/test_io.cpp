#include "doctest.h"

#include <sstream>

#include "eventx/io.hpp"

using namespace eventx;

TEST_CASE("series csv round trip keeps every bit") {
    SynthSpec spec;
    spec.d = 2;
    spec.rng_seed = 3;
    const auto synth = generate(spec);
    std::stringstream buf;
    io::write_series_csv(buf, synth.series);
    const auto back = io::read_series_csv(buf);
    REQUIRE(back.num_dims() == 2);
    REQUIRE(back.length() == 1000);
    for (std::size_t d = 0; d < 2; ++d) {
        CHECK(std::equal(back.dim(d).begin(), back.dim(d).end(), synth.series.dim(d).begin()));
    }
    CHECK(back.dim_names() == std::vector<std::string>{"dim0", "dim1"});
}

TEST_CASE("header detection") {
    std::istringstream with("a, b\n1,2\n3,4\n");
    const auto ts = io::read_series_csv(with);
    CHECK(ts.dim_names() == std::vector<std::string>{"a", "b"});
    CHECK(ts.length() == 2);

    std::istringstream without("1,2\n3,4\n\n5,6\r\n");
    const auto plain = io::read_series_csv(without);
    CHECK(plain.dim_names().empty());
    CHECK(plain.length() == 3);
    CHECK(plain.dim(1)[2] == 6.0);
}

TEST_CASE("malformed series files") {
    std::istringstream ragged("1,2\n3\n");
    CHECK_THROWS_AS(io::read_series_csv(ragged), io::ParseError);
    std::istringstream text("1,2\n3,x\n");
    CHECK_THROWS_AS(io::read_series_csv(text), io::ParseError);
    std::istringstream trailing("1,2\n3,4,\n");
    CHECK_THROWS_AS(io::read_series_csv(trailing), io::ParseError);
    std::istringstream empty("");
    CHECK_THROWS_AS(io::read_series_csv(empty), io::ParseError);
    std::istringstream nan("1,2\nnan,4\n5,6\n");
    CHECK_THROWS_AS(io::read_series_csv(nan), DataError);
    std::istringstream one_row("x\n1\n");
    CHECK_THROWS_AS(io::read_series_csv(one_row), DataError);
    CHECK_THROWS_AS(io::read_series_csv(std::string("/nonexistent/file.csv")), io::ParseError);
}

TEST_CASE("regions csv") {
    const std::vector<Region> regions{{3, 9}, {20, 20}};
    std::stringstream buf;
    io::write_regions_csv(buf, regions);
    CHECK(buf.str() == "start,end\n3,9\n20,20\n");
    CHECK(io::read_regions_csv(buf) == regions);

    std::istringstream no_header("3,9\n");
    CHECK_THROWS_AS(io::read_regions_csv(no_header), io::ParseError);
    std::istringstream reversed("start,end\n9,3\n");
    CHECK_THROWS_AS(io::read_regions_csv(reversed), io::ParseError);
    std::istringstream fractional("start,end\n1.5,3\n");
    CHECK_THROWS_AS(io::read_regions_csv(fractional), io::ParseError);
    std::istringstream header_only("start,end\n");
    CHECK(io::read_regions_csv(header_only).empty());
}

TEST_CASE("regions json") {
    std::istringstream ok(R"({"regions":[{"start":1,"end":4},{"start":10,"end":12}]})");
    CHECK(io::read_regions_json(ok) == std::vector<Region>{{1, 4}, {10, 12}});
    std::istringstream blank("  \n");
    CHECK(io::read_regions_json(blank).empty());
    std::istringstream missing("{}");
    CHECK(io::read_regions_json(missing).empty());
    std::istringstream broken("{\"regions\": [");
    CHECK_THROWS_AS(io::read_regions_json(broken), io::ParseError);
    std::istringstream wrong(R"({"regions":[{"start":"a","end":4}]})");
    CHECK_THROWS_AS(io::read_regions_json(wrong), io::ParseError);
}

TEST_CASE("sha256 known vectors") {
    CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("result json is deterministic and readable") {
    SynthSpec spec;
    spec.rng_seed = 11;
    spec.min_gap = 51;
    const auto synth = generate(spec);
    ExtractConfig cfg;
    cfg.rng_seed = 11;
    const auto a = io::result_to_json(extract(synth.series, cfg)).dump(2);
    const auto b = io::result_to_json(extract(synth.series, cfg)).dump(2);
    CHECK(a == b);
    CHECK(a.find("timing") == std::string::npos);
    std::istringstream in(a);
    const auto regions = io::read_regions_json(in);
    CHECK(regions.size() == nlohmann::json::parse(a)["regions"].size());
}

TEST_CASE("timings json keys") {
    StageTimings t;
    t.structure_ms = 1;
    t.inference_ms = 2;
    const auto j = io::timings_to_json(t);
    for (const char* key : {"structure_scores", "feature_matrix", "seed_generation", "candidate_generation",
                            "inference", "instance_bounds", "total"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["total"].get<double>() == 3.0);
}
