#include "kirigami/samplers.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kirigami/parallel.hpp"

namespace kirigami {

namespace {

constexpr std::uint64_t kBlock = 1024;

void require_beta_max(double beta_max) {
    if (!(beta_max > 0.0 && beta_max <= 90.0))
        throw std::invalid_argument("beta_max must lie in (0, 90]");
}

std::uint64_t block_count(std::uint64_t n) { return (n + kBlock - 1) / kBlock; }

// Draws every cell of `grid` and refreshes `geometry` to match.
void fill_uniform(CutGrid& grid, CutGeometry& geometry, Rng& rng) {
    const double bm = grid.beta_max();
    for (int i = 0; i < grid.rows(); ++i)
        for (int j = 0; j < grid.cols(); ++j) {
            const double b = quantize_beta(uniform(rng, -bm, bm), bm);
            grid.set(i, j, b);
            geometry.set_half(i, j, geometry.half_for(i, j, b));
        }
}

class MarginalDraw {
public:
    MarginalDraw(const LatticeSpec& spec, const AngleMarginal& m) : spec_(spec), m_(m) {
        if (m.rows != spec.rows() || m.cols != spec.cols())
            throw std::invalid_argument("marginal was fitted on a different lattice");
        if (m.weights.empty()) throw std::invalid_argument("marginal has no populations");
        for (const auto& w : m.weights) {
            if (static_cast<int>(w.size()) != m.bins)
                throw std::invalid_argument("marginal weights do not match its bin count");
            std::vector<double> c(w.size());
            double acc = 0.0;
            for (std::size_t k = 0; k < w.size(); ++k) c[k] = acc += w[k];
            if (!(acc > 0.0)) throw std::invalid_argument("marginal population has zero mass");
            cdf_.push_back(std::move(c));
        }
    }

    double draw(int i, int j, Rng& rng) const {
        const auto& c = cdf_[m_.population(spec_, i, j)];
        const double target = uniform01(rng) * c.back();
        auto it = std::upper_bound(c.begin(), c.end(), target);
        if (it == c.end()) --it;
        const auto k = static_cast<double>(it - c.begin());
        const double b = -m_.beta_max + (k + uniform01(rng)) * m_.bin_width();
        return quantize_beta(std::clamp(b, -m_.beta_max, m_.beta_max), m_.beta_max);
    }

    void fill(CutGrid& grid, CutGeometry& geometry, Rng& rng) const {
        for (int i = 0; i < grid.rows(); ++i)
            for (int j = 0; j < grid.cols(); ++j) {
                const double b = draw(i, j, rng);
                grid.set(i, j, b);
                geometry.set_half(i, j, geometry.half_for(i, j, b));
            }
    }

private:
    const LatticeSpec& spec_;
    const AngleMarginal& m_;
    std::vector<std::vector<double>> cdf_;
};

// Runs fill(grid, geometry, rng) for n samples in fixed blocks, each block on its own sub-stream.
template <class Fill, class Sink>
void blocked_samples(const LatticeSpec& spec, double beta_max, std::uint64_t n, std::uint64_t seed,
                     Fill&& fill, Sink&& sink) {
    parallel_for(block_count(n), [&](std::size_t b) {
        Rng rng = make_rng(seed, b);
        CutGrid grid = base_pattern(spec, beta_max);
        CutGeometry geometry(spec, grid);
        const std::uint64_t begin = b * kBlock;
        const std::uint64_t end = std::min(n, begin + kBlock);
        for (std::uint64_t k = begin; k < end; ++k) {
            fill(grid, geometry, rng);
            sink(b, k, grid, geometry);
        }
    });
}

IntersectionTally reduce(const std::vector<IntersectionTally>& parts) {
    IntersectionTally t;
    for (const auto& p : parts) t.merge(p);
    return t;
}

}  // namespace

std::string_view to_string(SampleSource source) {
    switch (source) {
        case SampleSource::sweep: return "sweep";
        case SampleSource::uniform: return "uniform";
        case SampleSource::marginal: return "marginal";
        case SampleSource::external: return "external";
    }
    return "external";
}

SampleSource parse_source(std::string_view tag) {
    if (tag == "sweep") return SampleSource::sweep;
    if (tag == "uniform") return SampleSource::uniform;
    if (tag == "marginal") return SampleSource::marginal;
    if (tag == "external") return SampleSource::external;
    throw std::invalid_argument("unknown sample source tag '" + std::string(tag) + "'");
}

void SampleSet::validate() const {
    if (samples.empty()) throw std::invalid_argument("sample set is empty");
    require_beta_max(beta_max);
    for (const auto& g : samples) {
        if (g.rows() != rows() || g.cols() != cols())
            throw std::invalid_argument("samples disagree on grid dimensions");
        if (g.beta_max() != beta_max) throw std::invalid_argument("samples disagree on beta_max");
    }
}

void SampleSet::validate(const LatticeSpec& spec) const {
    validate();
    if (rows() != spec.rows() || cols() != spec.cols())
        throw std::invalid_argument("sample set dimensions do not match the lattice");
}

double quantize_beta(double beta, double beta_max) {
    float f = static_cast<float>(beta);
    while (std::abs(static_cast<double>(f)) > beta_max) f = std::nextafter(f, 0.0f);
    return static_cast<double>(f);
}

CutGrid uniform_grid(const LatticeSpec& spec, double beta_max, Rng& rng) {
    require_beta_max(beta_max);
    CutGrid grid = base_pattern(spec, beta_max);
    for (int i = 0; i < spec.rows(); ++i)
        for (int j = 0; j < spec.cols(); ++j)
            grid.set(i, j, quantize_beta(uniform(rng, -beta_max, beta_max), beta_max));
    return grid;
}

std::vector<Interval> admissible_beta_set(const LatticeSpec& spec, const CutGrid& grid, int i, int j,
                                          double resolution) {
    SweepSampler view(spec, grid, SweepSampler::unchecked_tag{});
    return view.admissible_set(i, j, resolution);
}

SweepSampler::SweepSampler(const LatticeSpec& spec, CutGrid grid)
    : spec_(spec), grid_(std::move(grid)), geometry_(spec_, grid_) {
    if (geometry_.count() != 0)
        throw std::invalid_argument("sweep sampler requires an admissible starting grid");
}

SweepSampler::SweepSampler(const LatticeSpec& spec, CutGrid grid, unchecked_tag)
    : spec_(spec), grid_(std::move(grid)), geometry_(spec_, grid_) {}

std::vector<Interval> SweepSampler::admissible_set(int i, int j, double resolution) const {
    if (!(resolution > 0.0)) throw std::invalid_argument("scan resolution must be > 0");
    if (i < 0 || i >= spec_.rows() || j < 0 || j >= spec_.cols())
        throw std::out_of_range("cell index out of range");

    const double bm = grid_.beta_max();
    const auto steps = static_cast<long>(std::ceil(2.0 * bm / resolution));
    const double dx = 2.0 * bm / static_cast<double>(steps);
    const double tol = resolution / 100.0;
    auto at = [&](long k) { return k == steps ? bm : -bm + static_cast<double>(k) * dx; };
    auto ok = [&](double b) { return geometry_.clear(i, j, geometry_.half_for(i, j, b)); };
    // good and bad bracket a boundary; returns the admissible end within tol of it
    auto refine = [&](double good, double bad) {
        while (std::abs(good - bad) > tol) {
            const double mid = 0.5 * (good + bad);
            (ok(mid) ? good : bad) = mid;
        }
        return good;
    };

    std::vector<Interval> out;
    bool prev_ok = false;
    double run_lo = 0.0;
    for (long k = 0; k <= steps; ++k) {
        const double b = at(k);
        const bool cur = ok(b);
        if (cur && !prev_ok) run_lo = k == 0 ? b : refine(b, at(k - 1));
        if (!cur && prev_ok) out.push_back({run_lo, refine(at(k - 1), b)});
        prev_ok = cur;
    }
    if (prev_ok) out.push_back({run_lo, bm});
    return out;
}

double SweepSampler::replace(int i, int j, Rng& rng) {
    const double bm = grid_.beta_max();
    ++replacements_;
    auto accept = [&](double b, Point h) {
        grid_.set(i, j, b);
        geometry_.set_half(i, j, h);
        assert(geometry_.count() == 0);
        return b;
    };

    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        const double b = quantize_beta(uniform(rng, -bm, bm), bm);
        const Point h = geometry_.half_for(i, j, b);
        if (geometry_.clear(i, j, h)) return accept(b, h);
    }

    ++fallbacks_;
    const std::vector<Interval> set = admissible_set(i, j);
    double measure = 0.0;
    for (const auto& iv : set) measure += iv.length();
    for (int attempt = 0; attempt < 64 && !set.empty(); ++attempt) {
        double b;
        if (measure > 0.0) {
            double pos = uniform01(rng) * measure;
            std::size_t k = 0;
            while (k + 1 < set.size() && pos > set[k].length()) pos -= set[k++].length();
            b = std::min(set[k].lo + pos, set[k].hi);
        } else {
            b = set[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(set.size()))].lo;
        }
        b = quantize_beta(b, bm);
        const Point h = geometry_.half_for(i, j, b);
        if (geometry_.clear(i, j, h)) return accept(b, h);
    }
    // The current value is always admissible.
    return grid_(i, j);
}

void SweepSampler::sweep(Rng& rng) {
    for (int i = 0; i < spec_.rows(); ++i)
        for (int j = 0; j < spec_.cols(); ++j) replace(i, j, rng);
}

double sweep_replace(const LatticeSpec& spec, CutGrid& grid, int i, int j, Rng& rng) {
    SweepSampler sampler(spec, grid);
    const double b = sampler.replace(i, j, rng);
    grid = sampler.grid();
    return b;
}

CutGrid generate_chain(const LatticeSpec& spec, double beta_max, int sweeps, std::uint64_t seed,
                       std::uint64_t index) {
    require_beta_max(beta_max);
    if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
    Rng rng = make_rng(seed, index);
    SweepSampler sampler(spec, base_pattern(spec, beta_max));
    for (int s = 0; s < sweeps; ++s) sampler.sweep(rng);
    return sampler.grid();
}

SampleSet generate_dataset(const LatticeSpec& spec, double beta_max, int count, int sweeps,
                           std::uint64_t seed) {
    require_beta_max(beta_max);
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
    SampleSet set;
    set.beta_max = beta_max;
    set.source = SampleSource::sweep;
    set.seed = seed;
    set.sweeps = sweeps;
    set.samples.assign(static_cast<std::size_t>(count), base_pattern(spec, beta_max));
    parallel_for(set.samples.size(),
                 [&](std::size_t k) { set.samples[k] = generate_chain(spec, beta_max, sweeps, seed, k); });
    return set;
}

SampleSet uniform_set(const LatticeSpec& spec, double beta_max, int count, std::uint64_t seed) {
    require_beta_max(beta_max);
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    SampleSet set;
    set.beta_max = beta_max;
    set.source = SampleSource::uniform;
    set.seed = seed;
    set.samples.assign(static_cast<std::size_t>(count), base_pattern(spec, beta_max));
    blocked_samples(spec, beta_max, set.samples.size(), seed, fill_uniform,
                    [&](std::size_t, std::uint64_t k, const CutGrid& g, const CutGeometry&) {
                        set.samples[k] = g;
                    });
    return set;
}

IntersectionTally uniform_tally(const LatticeSpec& spec, double beta_max, std::uint64_t n,
                                std::uint64_t seed) {
    require_beta_max(beta_max);
    std::vector<IntersectionTally> parts(block_count(n));
    blocked_samples(spec, beta_max, n, seed, fill_uniform,
                    [&](std::size_t b, std::uint64_t, const CutGrid&, const CutGeometry& geo) {
                        parts[b].add(geo.count());
                    });
    return reduce(parts);
}

IntersectionTally tally(const LatticeSpec& spec, const SampleSet& set) {
    set.validate(spec);
    std::vector<int> counts(set.size());
    parallel_for(set.size(), [&](std::size_t k) { counts[k] = count_intersections(spec, set.samples[k]); });
    IntersectionTally t;
    for (int c : counts) t.add(c);
    return t;
}

std::size_t AngleMarginal::population(const LatticeSpec& spec, int i, int j) const {
    if (mode == MarginalMode::per_cell) return static_cast<std::size_t>(i) * cols + j;
    return base_orientation(spec, i, j) == Orientation::vertical ? 0 : 1;
}

AngleMarginal fit_marginal(const LatticeSpec& spec, const SampleSet& set, int bins, MarginalMode mode) {
    set.validate(spec);
    if (bins < 2) throw std::invalid_argument("marginal needs at least 2 bins");
    AngleMarginal m;
    m.beta_max = set.beta_max;
    m.bins = bins;
    m.mode = mode;
    m.rows = spec.rows();
    m.cols = spec.cols();
    const std::size_t populations = mode == MarginalMode::per_cell ? spec.cells() : 2;
    std::vector<std::vector<std::uint64_t>> counts(populations, std::vector<std::uint64_t>(bins, 0));
    const double w = m.bin_width();
    for (const auto& g : set.samples)
        for (int i = 0; i < spec.rows(); ++i)
            for (int j = 0; j < spec.cols(); ++j) {
                auto k = static_cast<int>(std::floor((g(i, j) + m.beta_max) / w));
                k = std::clamp(k, 0, bins - 1);
                ++counts[m.population(spec, i, j)][k];
            }
    for (const auto& c : counts) {
        std::uint64_t total = 0;
        for (auto v : c) total += v;
        std::vector<double> p(bins);
        for (int k = 0; k < bins; ++k) p[k] = static_cast<double>(c[k]) / static_cast<double>(total);
        m.weights.push_back(std::move(p));
    }
    return m;
}

CutGrid marginal_grid(const LatticeSpec& spec, const AngleMarginal& marginal, Rng& rng) {
    const MarginalDraw draw(spec, marginal);
    CutGrid grid = base_pattern(spec, marginal.beta_max);
    for (int i = 0; i < spec.rows(); ++i)
        for (int j = 0; j < spec.cols(); ++j) grid.set(i, j, draw.draw(i, j, rng));
    return grid;
}

SampleSet marginal_set(const LatticeSpec& spec, const AngleMarginal& marginal, int count,
                       std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    const MarginalDraw draw(spec, marginal);
    SampleSet set;
    set.beta_max = marginal.beta_max;
    set.source = SampleSource::marginal;
    set.seed = seed;
    set.samples.assign(static_cast<std::size_t>(count), base_pattern(spec, marginal.beta_max));
    blocked_samples(
        spec, marginal.beta_max, set.samples.size(), seed,
        [&](CutGrid& g, CutGeometry& geo, Rng& rng) { draw.fill(g, geo, rng); },
        [&](std::size_t, std::uint64_t k, const CutGrid& g, const CutGeometry&) { set.samples[k] = g; });
    return set;
}

IntersectionTally marginal_tally(const LatticeSpec& spec, const AngleMarginal& marginal,
                                 std::uint64_t n, std::uint64_t seed) {
    const MarginalDraw draw(spec, marginal);
    std::vector<IntersectionTally> parts(block_count(n));
    blocked_samples(
        spec, marginal.beta_max, n, seed,
        [&](CutGrid& g, CutGeometry& geo, Rng& rng) { draw.fill(g, geo, rng); },
        [&](std::size_t b, std::uint64_t, const CutGrid&, const CutGeometry& geo) {
            parts[b].add(geo.count());
        });
    return reduce(parts);
}

}  // namespace kirigami
