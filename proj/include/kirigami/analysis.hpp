#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "kirigami/lattice.hpp"
#include "kirigami/stats.hpp"

namespace kirigami {

/// Euclidean distance between equal-length angle vectors (degrees).
double euclidean_distance(std::span<const double> x, std::span<const double> y);

struct AnglePair {
    double first = 0.0;
    double second = 0.0;
    friend constexpr bool operator==(AnglePair, AnglePair) = default;
};

double euclidean_distance(AnglePair a, AnglePair b);

enum class Separation { vertical, horizontal };

/// Two cuts of length cut_length whose centers are `spacing` apart along
/// `separation`. A coordinate pair (a1, a2) describes absolute angles to the
/// vertical of (first_base + a1, second_base + a2).
struct TwoCutFrame {
    Separation separation = Separation::vertical;
    double first_base = 0.0;
    double second_base = 0.0;
    double spacing = 1.0;
    double cut_length = std::sqrt(3.0);

    /// Coordinates are absolute angles; the frame of the A/B/C configurations.
    static TwoCutFrame absolute() { return {}; }
    /// Coordinates are added rotations of a vertical-base cut and its
    /// horizontal-base neighbor, as for any 4-adjacent pair of the lattice.
    static TwoCutFrame lattice_pair() { return {Separation::vertical, 0.0, 90.0}; }
};

bool pair_intersects(double a1, double a2, const TwoCutFrame& frame = TwoCutFrame::absolute());
inline bool pair_intersects(AnglePair p, const TwoCutFrame& frame = TwoCutFrame::absolute()) {
    return pair_intersects(p.first, p.second, frame);
}

/// Distance between the two cuts (0 if they touch).
double pair_clearance(AnglePair p, const TwoCutFrame& frame);

/// Admissibility bitmap of the coordinate square [-beta_max, beta_max]^2,
/// evaluated at cell centers. Row index follows the first coordinate.
class TwoCutMap {
public:
    TwoCutMap(double beta_max, int resolution, TwoCutFrame frame, std::vector<std::uint8_t> occupancy);

    double beta_max() const { return beta_max_; }
    int resolution() const { return resolution_; }
    const TwoCutFrame& frame() const { return frame_; }
    double cell_size() const { return 2.0 * beta_max_ / resolution_; }

    /// Center of cell k along either axis; exactly antisymmetric in k.
    double center(int k) const {
        return static_cast<double>(2 * k + 1 - resolution_) / resolution_ * beta_max_;
    }
    int cell_of(double v) const;

    bool blocked(int first, int second) const {
        return occupancy_[static_cast<std::size_t>(first) * resolution_ + second] != 0;
    }
    bool blocked_at(AnglePair p) const { return blocked(cell_of(p.first), cell_of(p.second)); }

    std::span<const std::uint8_t> occupancy() const { return occupancy_; }
    std::size_t blocked_count() const;

private:
    double beta_max_;
    int resolution_;
    TwoCutFrame frame_;
    std::vector<std::uint8_t> occupancy_;
};

inline constexpr int kDefaultMapResolution = 2048;
inline constexpr double kDefaultChordStep = 0.02;

/// Throws std::invalid_argument for resolution < 64 or beta_max outside (0, 90].
TwoCutMap build_two_cut_map(double beta_max, int resolution = kDefaultMapResolution,
                            const TwoCutFrame& frame = TwoCutFrame::lattice_pair());

double nonadmissible_fraction(const TwoCutMap& map);

/// Whether the straight chord a -> b leaves the admissible region, using the exact
/// predicate. Points closer than `step` degrees are never both skipped; longer
/// advances are taken only where the cut clearance proves the skipped part clear.
/// Throws std::invalid_argument if an endpoint is non-admissible.
bool straight_path_crosses(AnglePair a, AnglePair b, const TwoCutFrame& frame,
                           double step = kDefaultChordStep);

/// Monte Carlo probability that the chord between two independent uniform
/// admissible points of [-beta_max, beta_max]^2 crosses a non-admissible zone.
/// Pair k uses its own sub-stream of `seed`. Requires n_pairs >= 10^4.
ProportionEstimate path_crossing_probability(double beta_max, std::uint64_t n_pairs,
                                             const TwoCutFrame& frame, std::uint64_t seed,
                                             double step = kDefaultChordStep);

struct PathResult {
    bool found = false;
    std::vector<AnglePair> polyline;
    double length = 0.0;  // degrees of arc length in angle space
};

/// Shortest 8-connected path over admissible map cells (A*), then shortened
/// by greedy line-of-sight under the exact predicate; every returned edge is
/// clear under straight_path_crosses at `step`.
PathResult admissible_path(const TwoCutMap& map, AnglePair a, AnglePair b,
                           double step = kDefaultChordStep);

struct SweepCurvePoint {
    double beta_max = 0.0;
    IntersectionTally tally;
    ProportionEstimate admissible;  // 95% Wilson interval
};

/// Uniform-grid statistics per beta_max; point k uses sub-seed derive_seed(seed, k).
std::vector<SweepCurvePoint> sweep_curves(const LatticeSpec& spec, std::span<const double> beta_max_list,
                                          std::uint64_t n_samples, std::uint64_t seed);

}  // namespace kirigami
