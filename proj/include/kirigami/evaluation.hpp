#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kirigami/lattice.hpp"
#include "kirigami/samplers.hpp"
#include "kirigami/stats.hpp"

namespace kirigami {

/// Equal-width histogram over [lo, hi]; hi itself falls in the last bin.
struct Histogram1D {
    double lo = -90.0;
    double hi = 90.0;
    std::vector<std::uint64_t> counts;

    Histogram1D() = default;
    Histogram1D(double lo, double hi, int bins);

    int bins() const { return static_cast<int>(counts.size()); }
    double bin_width() const { return (hi - lo) / bins(); }
    int bin_of(double v) const;
    void add(double v) { ++counts[bin_of(v)]; }
    std::uint64_t total() const;
    std::vector<double> probabilities() const;
};

/// Square 2D histogram over [lo, hi]^2; counts are row-major in the first value.
struct Histogram2D {
    double lo = -90.0;
    double hi = 90.0;
    int bins = 0;
    std::vector<std::uint64_t> counts;

    Histogram2D() = default;
    Histogram2D(double lo, double hi, int bins);

    double bin_width() const { return (hi - lo) / bins; }
    int bin_of(double v) const;
    void add(double first, double second) {
        ++counts[static_cast<std::size_t>(bin_of(first)) * bins + bin_of(second)];
    }
    std::uint64_t at(int r, int c) const { return counts[static_cast<std::size_t>(r) * bins + c]; }
    std::uint64_t total() const;
    std::vector<double> probabilities() const;
};

/// Which lattice row counts as the "bottom" neighbor of a vertical-base cut.
enum class PairDirection { next_row, previous_row };

inline constexpr int kDefaultMarginalBins = 180;
inline constexpr int kDefaultPairBins = 60;

/// Pooled beta over every cell of every sample, binned over [-90, 90].
Histogram1D marginal_histogram(const SampleSet& set, int bins = kDefaultMarginalBins);

/// (beta at each vertical-base cell, beta of its neighbor one row down, toroidally)
/// over [-90, 90]^2. Values are added rotations, not absolute angles.
Histogram2D neighbor_pair_histogram(const LatticeSpec& spec, const SampleSet& set,
                                    int bins = kDefaultPairBins,
                                    PairDirection direction = PairDirection::next_row);

/// Total variation distance between normalized histograms with identical binning.
double tv_distance(const Histogram1D& a, const Histogram1D& b);
double tv_distance(const Histogram2D& a, const Histogram2D& b);
double tv_distance(std::span<const double> p, std::span<const double> q);

/// Fraction of all neighbor pairs (pair_count() per sample) that intersect.
double zone_violation_rate(const LatticeSpec& spec, const SampleSet& set);

struct EvalOptions {
    int marginal_bins = kDefaultMarginalBins;
    int pair_bins = kDefaultPairBins;
    PairDirection direction = PairDirection::next_row;
    bool baselines = true;
    std::uint64_t baseline_samples = 20'000;
    std::uint64_t seed = 0;
};

struct Baselines {
    double beta_max = 0.0;
    IntersectionTally uniform;
    IntersectionTally marginal;
};

struct EvalReport {
    std::size_t samples = 0;
    double beta_max = 0.0;
    IntersectionTally intersections;
    double mean_intersections = 0.0;
    double admissible_fraction = 0.0;
    double zone_violation_rate = 0.0;
    Histogram1D marginal;
    Histogram2D pairs;
    std::optional<double> tv_to_reference;           // pair histograms
    std::optional<double> marginal_tv_to_reference;  // marginal histograms
    std::optional<Baselines> baselines;
};

/// Scores `set`. When `reference` is given, the baselines come from its beta_max
/// and fitted marginal; otherwise from `set` itself. Baseline Monte Carlo uses options.seed.
EvalReport evaluate(const LatticeSpec& spec, const SampleSet& set, const SampleSet* reference = nullptr,
                    const EvalOptions& options = {});

}  // namespace kirigami
