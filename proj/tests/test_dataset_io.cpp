#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "kirigami/dataset_io.hpp"
#include "kirigami/samplers.hpp"

using namespace kirigami;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string header_of(const std::string& bytes) { return bytes.substr(0, bytes.find('\n') + 1); }

void put_f32(std::string& bytes, std::size_t offset, float v) {
    unsigned char b[4];
    std::memcpy(b, &v, 4);  // little-endian host assumed by the test
    for (int k = 0; k < 4; ++k) bytes[offset + k] = static_cast<char>(b[k]);
}

}  // namespace

TEST_CASE("encoded size and header") {
    const SampleSet set = uniform_set(LatticeSpec{}, 60.0, 2, 17);
    const std::string bytes = encode_dataset(set);
    const std::string header = header_of(bytes);
    CHECK(bytes.size() == header.size() + 288);
    CHECK(header == "KGS1 rows=6 cols=6 beta_max=60 count=2 dtype=f32le source=uniform seed=17\n");
}

TEST_CASE("round trip is exact") {
    const LatticeSpec spec;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SampleSet set = generate_dataset(spec, 37.5 + seed, 5, 3, seed);
        const SampleSet back = decode_dataset(encode_dataset(set));
        CHECK(back.beta_max == set.beta_max);
        CHECK(back.seed == seed);
        CHECK(back.source == SampleSource::sweep);
        REQUIRE(back.size() == set.size());
        for (std::size_t k = 0; k < set.size(); ++k) CHECK(back.samples[k] == set.samples[k]);
        CHECK(encode_dataset(back) == encode_dataset(set));
    }

    CutGrid g(6, 6, 90.0);
    g.set(0, 0, 90.0);
    g.set(0, 1, -90.0);
    SampleSet edge;
    edge.beta_max = 90.0;
    edge.samples.push_back(g);
    const SampleSet back = decode_dataset(encode_dataset(edge));
    CHECK(back.samples[0](0, 0) == 90.0);
    CHECK(back.samples[0](0, 1) == -90.0);
}

TEST_CASE("golden file") {
    const fs::path golden = fs::path(KGS_TEST_DATA_DIR) / "golden_small.kgs";
    const SampleSet set = read_dataset(golden);
    CHECK(set.size() == 2);
    CHECK(set.rows() == 6);
    CHECK(set.beta_max == 90.0);
    CHECK(set.source == SampleSource::external);
    CHECK(set.seed == 7);
    CHECK(set.samples[0](0, 0) == 0.0);
    CHECK(set.samples[0](0, 1) == -0.5);
    CHECK(set.samples[0](0, 2) == 90.0);
    CHECK(set.samples[0](0, 4) == 12.25);
    CHECK(set.samples[1](0, 5) == 33.125);
    CHECK(set.samples[1](5, 5) == -12.0);
    CHECK(encode_dataset(set) == slurp(golden));
}

TEST_CASE("file write and read") {
    const fs::path p = fs::temp_directory_path() / "kgs_io_roundtrip.kgs";
    const SampleSet set = generate_dataset(LatticeSpec{}, 90.0, 4, 5, 3);
    write_dataset(set, p);
    CHECK(slurp(p) == encode_dataset(set));
    CHECK(read_dataset(p).samples == set.samples);
    fs::remove(p);
    CHECK_THROWS_AS(read_dataset(p), IoError);
    CHECK_THROWS_AS(write_dataset(set, fs::path("/nonexistent-dir/x.kgs")), IoError);
}

TEST_CASE("malformed files are rejected") {
    const SampleSet set = uniform_set(LatticeSpec{}, 30.0, 2, 1);
    const std::string good = encode_dataset(set);
    const std::size_t hdr = header_of(good).size();

    CHECK_THROWS_AS(decode_dataset(good.substr(0, good.size() - 1)), TruncatedError);
    CHECK_THROWS_AS(decode_dataset(good.substr(0, hdr + 100)), TruncatedError);
    CHECK_THROWS_AS(decode_dataset(good + "x"), TruncatedError);
    CHECK_THROWS_AS(decode_dataset("KGS2" + good.substr(4)), FormatError);
    CHECK_THROWS_AS(decode_dataset(""), FormatError);
    CHECK_THROWS_AS(decode_dataset("KGS1 rows=6 cols=6"), FormatError);

    std::string dtype = good;
    dtype.replace(dtype.find("f32le"), 5, "f64le");
    CHECK_THROWS_AS(decode_dataset(dtype), FormatError);

    std::string no_rows = good;
    no_rows.replace(no_rows.find("rows=6"), 6, "rowz=6");
    CHECK_THROWS_AS(decode_dataset(no_rows), FormatError);

    std::string bad_bm = good;
    bad_bm.replace(bad_bm.find("beta_max=30"), 11, "beta_max=ab");
    CHECK_THROWS_AS(decode_dataset(bad_bm), FormatError);

    std::string out_of_range = good;
    put_f32(out_of_range, hdr + 8, 30.5f);
    CHECK_THROWS_AS(decode_dataset(out_of_range), RangeError);

    std::string nan_value = good;
    put_f32(nan_value, hdr, std::nanf(""));
    CHECK_THROWS_AS(decode_dataset(nan_value), RangeError);

    // Within the slack a value is clamped onto the bound.
    std::string slack = good;
    put_f32(slack, hdr, 30.00005f);
    CHECK(decode_dataset(slack).samples[0](0, 0) == 30.0);

    // All errors share one base class.
    CHECK_THROWS_AS(decode_dataset(out_of_range), DatasetError);
}

TEST_CASE("absolute angle encoding") {
    const LatticeSpec spec;
    const SampleSet set = generate_dataset(spec, 90.0, 3, 10, 4);
    SampleSet absolute = set;
    for (auto& g : absolute.samples) {
        std::vector<double> alpha(g.values().begin(), g.values().end());
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                alpha[i * 6 + j] = wrap_angle(base_angle(spec, i, j) + g(i, j));
        g = CutGrid(6, 6, 90.0, alpha);
    }
    const SampleSet back = decode_dataset(encode_dataset(absolute), AngleEncoding::absolute, spec);
    for (std::size_t k = 0; k < set.size(); ++k)
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                const double d = back.samples[k](i, j) - set.samples[k](i, j);
                CHECK(std::abs(std::remainder(d, 180.0)) < 1e-4);
            }
    CHECK_THROWS_AS(decode_dataset(encode_dataset(absolute), AngleEncoding::absolute, LatticeSpec(4, 4)),
                    FormatError);
}

TEST_CASE("shortest decimal formatting") {
    CHECK(format_double(90.0) == "90");
    CHECK(format_double(0.1) == "0.1");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
