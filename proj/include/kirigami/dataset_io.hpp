#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kirigami/samplers.hpp"

namespace kirigami {

// KGS1 file layout:
//   KGS1 rows=<int> cols=<int> beta_max=<decimal> count=<int> dtype=f32le source=<tag> seed=<u64>\n
//   count*rows*cols little-endian float32 values, sample-major, row-major within each sample.

class DatasetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad magic, missing or malformed header fields, unsupported dtype.
class FormatError : public DatasetError {
public:
    using DatasetError::DatasetError;
};

/// Payload shorter (or longer) than the header promises.
class TruncatedError : public DatasetError {
public:
    using DatasetError::DatasetError;
};

/// A value that is not finite or exceeds beta_max by more than kRangeSlack.
class RangeError : public DatasetError {
public:
    using DatasetError::DatasetError;
};

class IoError : public DatasetError {
public:
    using DatasetError::DatasetError;
};

inline constexpr double kRangeSlack = 1e-4;

/// How payload values are to be interpreted when reading.
enum class AngleEncoding { added_rotation, absolute };

std::string encode_dataset(const SampleSet& set);
/// `spec` is only consulted for AngleEncoding::absolute, to recover beta = wrap(alpha - base).
SampleSet decode_dataset(std::string_view bytes, AngleEncoding encoding = AngleEncoding::added_rotation,
                         const LatticeSpec& spec = {});

void write_dataset(const SampleSet& set, const std::filesystem::path& path);
SampleSet read_dataset(const std::filesystem::path& path,
                       AngleEncoding encoding = AngleEncoding::added_rotation, const LatticeSpec& spec = {});

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace kirigami
