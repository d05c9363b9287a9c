#include "kirigami/lattice.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace kirigami {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;

void require_index(const LatticeSpec& spec, int i, int j) {
    if (i < 0 || i >= spec.rows() || j < 0 || j >= spec.cols())
        throw std::out_of_range("cell index (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside " + std::to_string(spec.rows()) + "x" +
                                std::to_string(spec.cols()) + " lattice");
}

void require_beta_max(double beta_max) {
    if (!(beta_max > 0.0 && beta_max <= 90.0))
        throw std::invalid_argument("beta_max must lie in (0, 90], got " + std::to_string(beta_max));
}
}  // namespace

LatticeSpec::LatticeSpec(int rows, int cols, double spacing, double cut_length, int vertical_parity)
    : rows_(rows), cols_(cols), spacing_(spacing), cut_length_(cut_length),
      vertical_parity_(vertical_parity) {
    if (rows < 2 || cols < 2 || rows % 2 != 0 || cols % 2 != 0)
        throw std::invalid_argument("lattice rows and cols must be even and >= 2");
    if (!(spacing > 0.0)) throw std::invalid_argument("lattice spacing must be > 0");
    if (!(cut_length > 0.0)) throw std::invalid_argument("cut length must be > 0");
    if (!(cut_length < 2.0 * spacing))
        throw std::invalid_argument("cut length must be below twice the spacing");
    if (vertical_parity != 0 && vertical_parity != 1)
        throw std::invalid_argument("vertical_parity must be 0 or 1");
}

CutGrid::CutGrid(int rows, int cols, double beta_max)
    : CutGrid(rows, cols, beta_max, std::vector<double>(static_cast<std::size_t>(rows) * cols, 0.0)) {}

CutGrid::CutGrid(int rows, int cols, double beta_max, std::vector<double> beta)
    : rows_(rows), cols_(cols), beta_max_(beta_max), beta_(std::move(beta)) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("grid dimensions must be positive");
    require_beta_max(beta_max);
    if (beta_.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("beta matrix size does not match grid dimensions");
    for (double b : beta_)
        if (!(std::abs(b) <= beta_max))
            throw std::invalid_argument("added rotation " + std::to_string(b) + " exceeds beta_max " +
                                        std::to_string(beta_max));
}

void CutGrid::set(int i, int j, double beta) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("cell index out of range");
    if (!(std::abs(beta) <= beta_max_))
        throw std::invalid_argument("added rotation exceeds beta_max");
    beta_[index(i, j)] = beta;
}

Orientation base_orientation(const LatticeSpec& spec, int i, int j) {
    require_index(spec, i, j);
    return (i + j) % 2 == spec.vertical_parity() ? Orientation::vertical : Orientation::horizontal;
}

double base_angle(const LatticeSpec& spec, int i, int j) {
    return base_orientation(spec, i, j) == Orientation::vertical ? 0.0 : 90.0;
}

double wrap_angle(double degrees) {
    if (!std::isfinite(degrees)) throw std::invalid_argument("wrap_angle: non-finite angle");
    double r = std::fmod(degrees, 180.0);
    if (r <= -90.0)
        r += 180.0;
    else if (r > 90.0)
        r -= 180.0;
    return r;
}

double absolute_angle(const LatticeSpec& spec, const CutGrid& grid, int i, int j) {
    return wrap_angle(base_angle(spec, i, j) + grid(i, j));
}

Point half_extent(double cut_length, double alpha_degrees) {
    const double a = alpha_degrees * kDegToRad;
    const double h = 0.5 * cut_length;
    return {h * std::sin(a), h * std::cos(a)};
}

Segment cut_segment(const LatticeSpec& spec, const CutGrid& grid, int i, int j) {
    require_matching(spec, grid);
    require_index(spec, i, j);
    const Point c{j * spec.spacing(), i * spec.spacing()};
    const Point h = half_extent(spec.cut_length(), absolute_angle(spec, grid, i, j));
    return {c - h, c + h};
}

std::array<Offset, 8> neighbor_offsets() {
    return {{{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}};
}

std::array<Offset, 4> forward_offsets() { return {{{0, 1}, {1, -1}, {1, 0}, {1, 1}}}; }

void require_matching(const LatticeSpec& spec, const CutGrid& grid) {
    if (grid.rows() != spec.rows() || grid.cols() != spec.cols())
        throw std::invalid_argument("grid dimensions do not match the lattice");
}

int count_intersections(const LatticeSpec& spec, const CutGrid& grid) {
    return CutGeometry(spec, grid).count();
}

bool is_admissible(const LatticeSpec& spec, const CutGrid& grid) {
    return count_intersections(spec, grid) == 0;
}

CutGrid base_pattern(const LatticeSpec& spec, double beta_max) {
    return CutGrid(spec.rows(), spec.cols(), beta_max);
}

CutGeometry::CutGeometry(const LatticeSpec& spec, const CutGrid& grid)
    : spec_(spec), halves_(static_cast<std::size_t>(spec.cells())) {
    require_matching(spec, grid);
    for (int i = 0; i < spec.rows(); ++i)
        for (int j = 0; j < spec.cols(); ++j) halves_[index(i, j)] = half_for(i, j, grid(i, j));
}

Point CutGeometry::half_for(int i, int j, double beta) const {
    return half_extent(spec_.cut_length(), wrap_angle(base_angle(spec_, i, j) + beta));
}

bool CutGeometry::clear(int i, int j, Point h) const {
    const double s = spec_.spacing();
    for (const Offset& o : neighbor_offsets()) {
        const Point hn = halves_[index(wrap_row(i + o.di), wrap_col(j + o.dj))];
        const Point c{o.dj * s, o.di * s};
        if (detail::intersects(-h, h, c - hn, c + hn)) return false;
    }
    return true;
}

int CutGeometry::count() const {
    const double s = spec_.spacing();
    int n = 0;
    for (int i = 0; i < spec_.rows(); ++i)
        for (int j = 0; j < spec_.cols(); ++j) {
            const Point h = halves_[index(i, j)];
            for (const Offset& o : forward_offsets()) {
                const Point hn = halves_[index(wrap_row(i + o.di), wrap_col(j + o.dj))];
                const Point c{o.dj * s, o.di * s};
                if (detail::intersects(-h, h, c - hn, c + hn)) ++n;
            }
        }
    return n;
}

}  // namespace kirigami
