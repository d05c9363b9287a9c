#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "kirigami/geometry.hpp"

namespace kirigami {

/// Constants of the periodic cut lattice. Cut (i, j) sits at (j*spacing, i*spacing)
/// and has a vertical base orientation iff (i + j) % 2 == vertical_parity.
class LatticeSpec {
public:
    LatticeSpec() = default;
    LatticeSpec(int rows, int cols, double spacing = 1.0, double cut_length = std::sqrt(3.0),
                int vertical_parity = 0);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int cells() const { return rows_ * cols_; }
    double spacing() const { return spacing_; }
    double cut_length() const { return cut_length_; }
    int vertical_parity() const { return vertical_parity_; }

    /// Unordered neighbor pairs per sample on the torus (4 per cell).
    int pair_count() const { return cells() * 4; }

    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;

private:
    int rows_ = 6;
    int cols_ = 6;
    double spacing_ = 1.0;
    double cut_length_ = std::sqrt(3.0);
    int vertical_parity_ = 0;
};

/// One unit cell: the added rotations beta (degrees, row-major) and their bound.
class CutGrid {
public:
    CutGrid(int rows, int cols, double beta_max);
    CutGrid(int rows, int cols, double beta_max, std::vector<double> beta);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double beta_max() const { return beta_max_; }

    double operator()(int i, int j) const { return beta_[index(i, j)]; }
    void set(int i, int j, double beta);

    std::span<const double> values() const { return beta_; }

    friend bool operator==(const CutGrid&, const CutGrid&) = default;

private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * cols_ + j; }

    int rows_;
    int cols_;
    double beta_max_;
    std::vector<double> beta_;
};

enum class Orientation { vertical, horizontal };

struct Offset {
    int di;
    int dj;
    friend constexpr bool operator==(Offset, Offset) = default;
};

Orientation base_orientation(const LatticeSpec& spec, int i, int j);

/// 0 for a vertical base cut, 90 for a horizontal one.
double base_angle(const LatticeSpec& spec, int i, int j);

/// Canonical representative of an unoriented angle: result in (-90, 90].
double wrap_angle(double degrees);

/// Absolute angle to the vertical: wrap(base + beta).
double absolute_angle(const LatticeSpec& spec, const CutGrid& grid, int i, int j);

/// Half of a cut of the given absolute angle, as a vector from its center.
Point half_extent(double cut_length, double alpha_degrees);

Segment cut_segment(const LatticeSpec& spec, const CutGrid& grid, int i, int j);

/// The 8-neighborhood. Cuts two cells apart cannot touch because cut_length < 2*spacing.
std::array<Offset, 8> neighbor_offsets();

/// Half of the neighborhood; visiting these from every cell enumerates each pair once.
std::array<Offset, 4> forward_offsets();

int count_intersections(const LatticeSpec& spec, const CutGrid& grid);
bool is_admissible(const LatticeSpec& spec, const CutGrid& grid);

/// All-zero grid: the alternating base pattern.
CutGrid base_pattern(const LatticeSpec& spec, double beta_max);

void require_matching(const LatticeSpec& spec, const CutGrid& grid);

/// Cached half-extents of every cut of a grid, for repeated local queries.
class CutGeometry {
public:
    CutGeometry(const LatticeSpec& spec, const CutGrid& grid);

    const LatticeSpec& spec() const { return spec_; }

    Point half(int i, int j) const { return halves_[index(i, j)]; }
    void set_half(int i, int j, Point h) { halves_[index(i, j)] = h; }

    /// Half-extent cell (i, j) would have with added rotation beta.
    Point half_for(int i, int j, double beta) const;

    /// True iff a cut with half-extent h at (i, j) touches none of its 8 neighbors.
    bool clear(int i, int j, Point h) const;

    int count() const;

private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * spec_.cols() + j; }
    int wrap_row(int i) const { return (i % spec_.rows() + spec_.rows()) % spec_.rows(); }
    int wrap_col(int j) const { return (j % spec_.cols() + spec_.cols()) % spec_.cols(); }

    LatticeSpec spec_;
    std::vector<Point> halves_;
};

}  // namespace kirigami
