#pragma once

#include <cstdint>

namespace kirigami {

inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ99 = 2.5758293035489004;

/// Binomial proportion with a Wilson score interval.
struct ProportionEstimate {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

ProportionEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

/// Exact integer accumulation of per-sample intersection counts. Merging is
/// associative, so partitioned accumulation is bit-identical to a serial pass.
struct IntersectionTally {
    std::uint64_t samples = 0;
    std::uint64_t admissible = 0;
    std::uint64_t total = 0;
    std::uint64_t total_squares = 0;

    void add(int count) {
        ++samples;
        if (count == 0) ++admissible;
        total += static_cast<std::uint64_t>(count);
        total_squares += static_cast<std::uint64_t>(count) * static_cast<std::uint64_t>(count);
    }

    void merge(const IntersectionTally& o) {
        samples += o.samples;
        admissible += o.admissible;
        total += o.total;
        total_squares += o.total_squares;
    }

    double mean() const;
    /// Standard error of the mean.
    double standard_error() const;
    double admissible_fraction() const;
};

}  // namespace kirigami
