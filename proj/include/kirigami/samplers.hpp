#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "kirigami/lattice.hpp"
#include "kirigami/random.hpp"
#include "kirigami/stats.hpp"

namespace kirigami {

enum class SampleSource { sweep, uniform, marginal, external };

std::string_view to_string(SampleSource source);
SampleSource parse_source(std::string_view tag);

/// A collection of unit cells sharing dimensions and beta_max.
struct SampleSet {
    std::vector<CutGrid> samples;
    double beta_max = 90.0;
    SampleSource source = SampleSource::external;
    std::uint64_t seed = 0;
    int sweeps = 0;  // not persisted by the KGS1 format

    std::size_t size() const { return samples.size(); }
    int rows() const { return samples.empty() ? 0 : samples.front().rows(); }
    int cols() const { return samples.empty() ? 0 : samples.front().cols(); }

    /// Throws std::invalid_argument when empty or when samples disagree on shape or bound.
    void validate() const;
    void validate(const LatticeSpec& spec) const;
};

struct Interval {
    double lo;
    double hi;
    double length() const { return hi - lo; }
    bool contains(double v) const { return v >= lo && v <= hi; }
};

inline constexpr int kMaxRejections = 200;
inline constexpr int kDefaultSweeps = 200;
inline constexpr double kDefaultScanResolution = 0.05;

/// Rounds to the nearest float32 value not exceeding beta_max in magnitude.
double quantize_beta(double beta, double beta_max);

/// i.i.d. uniform added rotations on [-beta_max, beta_max].
CutGrid uniform_grid(const LatticeSpec& spec, double beta_max, Rng& rng);

/// Parts of [-beta_max, beta_max] for which cell (i, j) touches none of its
/// neighbors, found by scanning at `resolution` and bisecting the endpoints to
/// resolution/100. Admissible islands narrower than the scan step can be missed.
std::vector<Interval> admissible_beta_set(const LatticeSpec& spec, const CutGrid& grid, int i, int j,
                                          double resolution = kDefaultScanResolution);

/// Sweep-replacement chain state. Keeps the cut geometry cached so a local
/// redraw only evaluates the 8 neighbor pairs of the redrawn cut.
class SweepSampler {
public:
    /// Throws std::invalid_argument unless `grid` is admissible.
    SweepSampler(const LatticeSpec& spec, CutGrid grid);

    /// Skips the admissibility check; only local queries are meaningful then.
    struct unchecked_tag {};
    SweepSampler(const LatticeSpec& spec, CutGrid grid, unchecked_tag);

    /// Redraws beta at (i, j) uniformly from its admissible set: rejection first,
    /// then after kMaxRejections failed draws a draw over admissible_beta_set.
    double replace(int i, int j, Rng& rng);

    /// One raster-order pass over every cell.
    void sweep(Rng& rng);

    std::vector<Interval> admissible_set(int i, int j, double resolution = kDefaultScanResolution) const;

    const CutGrid& grid() const { return grid_; }
    std::uint64_t fallbacks() const { return fallbacks_; }
    std::uint64_t replacements() const { return replacements_; }

private:
    LatticeSpec spec_;
    CutGrid grid_;
    CutGeometry geometry_;
    std::uint64_t fallbacks_ = 0;
    std::uint64_t replacements_ = 0;
};

/// One-off replacement on a plain grid; returns the new value and updates `grid`.
double sweep_replace(const LatticeSpec& spec, CutGrid& grid, int i, int j, Rng& rng);

/// One chain: base pattern followed by `sweeps` raster passes. Chain `index`
/// draws from its own sub-stream, so it does not depend on other chains.
CutGrid generate_chain(const LatticeSpec& spec, double beta_max, int sweeps, std::uint64_t seed,
                       std::uint64_t index);

SampleSet generate_dataset(const LatticeSpec& spec, double beta_max, int count, int sweeps,
                           std::uint64_t seed);

SampleSet uniform_set(const LatticeSpec& spec, double beta_max, int count, std::uint64_t seed);

/// Streams `n` uniform grids through count_intersections without storing them.
IntersectionTally uniform_tally(const LatticeSpec& spec, double beta_max, std::uint64_t n,
                                std::uint64_t seed);

IntersectionTally tally(const LatticeSpec& spec, const SampleSet& set);

enum class MarginalMode { per_orientation, per_cell };

/// Empirical beta distribution over [-beta_max, beta_max], pooled per base
/// orientation (two populations) or kept per cell.
struct AngleMarginal {
    double beta_max = 90.0;
    int bins = 180;
    MarginalMode mode = MarginalMode::per_orientation;
    int rows = 6;
    int cols = 6;
    std::vector<std::vector<double>> weights;  // per population, sums to 1

    double bin_width() const { return 2.0 * beta_max / bins; }
    std::size_t population(const LatticeSpec& spec, int i, int j) const;
};

AngleMarginal fit_marginal(const LatticeSpec& spec, const SampleSet& set, int bins = 180,
                           MarginalMode mode = MarginalMode::per_orientation);

/// Independent per-cell draws from the fitted marginal (inverse CDF with uniform jitter inside the bin).
CutGrid marginal_grid(const LatticeSpec& spec, const AngleMarginal& marginal, Rng& rng);

SampleSet marginal_set(const LatticeSpec& spec, const AngleMarginal& marginal, int count,
                       std::uint64_t seed);

IntersectionTally marginal_tally(const LatticeSpec& spec, const AngleMarginal& marginal,
                                 std::uint64_t n, std::uint64_t seed);

}  // namespace kirigami
