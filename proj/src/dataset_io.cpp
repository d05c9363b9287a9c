#include "kirigami/dataset_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

namespace kirigami {

namespace {

constexpr std::string_view kMagic = "KGS1";

void put_f32le(std::string& out, float v) {
    const auto u = std::bit_cast<std::uint32_t>(v);
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((u >> (8 * b)) & 0xffu));
}

float get_f32le(const char* p) {
    std::uint32_t u = 0;
    for (int b = 0; b < 4; ++b) u |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[b])) << (8 * b);
    return std::bit_cast<float>(u);
}

template <class T>
T parse_number(const std::map<std::string, std::string, std::less<>>& fields, std::string_view key) {
    auto it = fields.find(key);
    if (it == fields.end()) throw FormatError("KGS1 header is missing '" + std::string(key) + "'");
    const std::string& s = it->second;
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw FormatError("KGS1 header field '" + std::string(key) + "' is malformed: " + s);
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string encode_dataset(const SampleSet& set) {
    set.validate();
    std::string out;
    out += kMagic;
    out += " rows=" + std::to_string(set.rows());
    out += " cols=" + std::to_string(set.cols());
    out += " beta_max=" + format_double(set.beta_max);
    out += " count=" + std::to_string(set.size());
    out += " dtype=f32le";
    out += " source=" + std::string(to_string(set.source));
    out += " seed=" + std::to_string(set.seed);
    out += '\n';
    out.reserve(out.size() + set.size() * set.rows() * set.cols() * 4);
    for (const auto& g : set.samples)
        for (double b : g.values()) put_f32le(out, static_cast<float>(b));
    return out;
}

SampleSet decode_dataset(std::string_view bytes, AngleEncoding encoding, const LatticeSpec& spec) {
    const auto eol = bytes.find('\n');
    if (bytes.substr(0, kMagic.size()) != kMagic)
        throw FormatError("not a KGS1 file (bad magic)");
    if (eol == std::string_view::npos) throw FormatError("KGS1 header line is not terminated");

    std::istringstream header{std::string(bytes.substr(0, eol))};
    std::string token;
    header >> token;
    if (token != kMagic) throw FormatError("not a KGS1 file (bad magic)");
    std::map<std::string, std::string, std::less<>> fields;
    while (header >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0) throw FormatError("malformed KGS1 header token: " + token);
        fields[token.substr(0, eq)] = token.substr(eq + 1);
    }

    const auto rows = parse_number<int>(fields, "rows");
    const auto cols = parse_number<int>(fields, "cols");
    const auto beta_max = parse_number<double>(fields, "beta_max");
    const auto count = parse_number<std::uint64_t>(fields, "count");
    const auto seed = parse_number<std::uint64_t>(fields, "seed");
    if (fields.find("dtype") == fields.end() || fields.at("dtype") != "f32le")
        throw FormatError("KGS1 dtype must be f32le");
    if (fields.find("source") == fields.end()) throw FormatError("KGS1 header is missing 'source'");
    SampleSource source;
    try {
        source = parse_source(fields.at("source"));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    if (rows < 1 || cols < 1 || count < 1) throw FormatError("KGS1 dimensions and count must be positive");
    if (!(beta_max > 0.0 && beta_max <= 90.0)) throw FormatError("KGS1 beta_max must lie in (0, 90]");
    if (encoding == AngleEncoding::absolute && (rows != spec.rows() || cols != spec.cols()))
        throw FormatError("absolute-angle file does not match the lattice dimensions");

    const std::uint64_t cells = static_cast<std::uint64_t>(rows) * cols;
    const std::uint64_t expected = count * cells * 4;
    const std::string_view payload = bytes.substr(eol + 1);
    if (payload.size() < expected)
        throw TruncatedError("KGS1 payload truncated: expected " + std::to_string(expected) + " bytes, found " +
                             std::to_string(payload.size()));
    if (payload.size() > expected) throw TruncatedError("KGS1 payload has trailing bytes");

    SampleSet set;
    set.beta_max = beta_max;
    set.source = source;
    set.seed = seed;
    set.samples.reserve(count);
    const char* p = payload.data();
    for (std::uint64_t s = 0; s < count; ++s) {
        std::vector<double> beta(cells);
        for (std::uint64_t k = 0; k < cells; ++k, p += 4) {
            double v = static_cast<double>(get_f32le(p));
            if (!std::isfinite(v)) throw RangeError("KGS1 value is not finite");
            if (encoding == AngleEncoding::absolute) {
                const int i = static_cast<int>(k / cols), j = static_cast<int>(k % cols);
                v = wrap_angle(v - base_angle(spec, i, j));
            }
            if (std::abs(v) > beta_max + kRangeSlack)
                throw RangeError("KGS1 value " + format_double(v) + " exceeds beta_max " + format_double(beta_max));
            beta[k] = std::clamp(v, -beta_max, beta_max);
        }
        set.samples.emplace_back(rows, cols, beta_max, std::move(beta));
    }
    return set;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw IoError("write to '" + path.string() + "' failed");
}

void write_dataset(const SampleSet& set, const std::filesystem::path& path) {
    write_text_file(path, encode_dataset(set));
}

SampleSet read_dataset(const std::filesystem::path& path, AngleEncoding encoding, const LatticeSpec& spec) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return decode_dataset(buf.str(), encoding, spec);
}

}  // namespace kirigami
