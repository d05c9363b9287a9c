#include "kirigami/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "kirigami/random.hpp"

namespace kirigami {

namespace {

int bin_index(double v, double lo, double hi, int bins) {
    const auto k = static_cast<int>(std::floor((v - lo) / (hi - lo) * bins));
    return std::clamp(k, 0, bins - 1);
}

std::vector<double> normalize(const std::vector<std::uint64_t>& counts) {
    const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (total == 0) throw std::invalid_argument("cannot normalize an empty histogram");
    std::vector<double> p(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k)
        p[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
    return p;
}

}  // namespace

Histogram1D::Histogram1D(double lo_, double hi_, int bins) : lo(lo_), hi(hi_) {
    if (bins < 1 || !(hi_ > lo_)) throw std::invalid_argument("invalid histogram binning");
    counts.assign(static_cast<std::size_t>(bins), 0);
}

int Histogram1D::bin_of(double v) const { return bin_index(v, lo, hi, bins()); }

std::uint64_t Histogram1D::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::vector<double> Histogram1D::probabilities() const { return normalize(counts); }

Histogram2D::Histogram2D(double lo_, double hi_, int bins_) : lo(lo_), hi(hi_), bins(bins_) {
    if (bins_ < 1 || !(hi_ > lo_)) throw std::invalid_argument("invalid histogram binning");
    counts.assign(static_cast<std::size_t>(bins_) * bins_, 0);
}

int Histogram2D::bin_of(double v) const { return bin_index(v, lo, hi, bins); }

std::uint64_t Histogram2D::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::vector<double> Histogram2D::probabilities() const { return normalize(counts); }

Histogram1D marginal_histogram(const SampleSet& set, int bins) {
    set.validate();
    if (bins < 10) throw std::invalid_argument("marginal histogram needs at least 10 bins");
    Histogram1D h(-90.0, 90.0, bins);
    for (const auto& g : set.samples)
        for (double b : g.values()) h.add(b);
    return h;
}

Histogram2D neighbor_pair_histogram(const LatticeSpec& spec, const SampleSet& set, int bins,
                                    PairDirection direction) {
    set.validate(spec);
    if (bins < 10) throw std::invalid_argument("pair histogram needs at least 10 bins");
    Histogram2D h(-90.0, 90.0, bins);
    const int step = direction == PairDirection::next_row ? 1 : spec.rows() - 1;
    for (const auto& g : set.samples)
        for (int i = 0; i < spec.rows(); ++i)
            for (int j = 0; j < spec.cols(); ++j)
                if (base_orientation(spec, i, j) == Orientation::vertical)
                    h.add(g(i, j), g((i + step) % spec.rows(), j));
    return h;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("tv_distance: binning mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) s += std::abs(p[k] - q[k]);
    return std::min(1.0, 0.5 * s);
}

double tv_distance(const Histogram1D& a, const Histogram1D& b) {
    if (a.bins() != b.bins() || a.lo != b.lo || a.hi != b.hi)
        throw std::invalid_argument("tv_distance: binning mismatch");
    return tv_distance(a.probabilities(), b.probabilities());
}

double tv_distance(const Histogram2D& a, const Histogram2D& b) {
    if (a.bins != b.bins || a.lo != b.lo || a.hi != b.hi)
        throw std::invalid_argument("tv_distance: binning mismatch");
    return tv_distance(a.probabilities(), b.probabilities());
}

double zone_violation_rate(const LatticeSpec& spec, const SampleSet& set) {
    const IntersectionTally t = tally(spec, set);
    return t.mean() / spec.pair_count();
}

EvalReport evaluate(const LatticeSpec& spec, const SampleSet& set, const SampleSet* reference,
                    const EvalOptions& options) {
    set.validate(spec);
    if (reference) {
        reference->validate();
        if (reference->rows() != set.rows() || reference->cols() != set.cols())
            throw std::invalid_argument("reference set dimensions differ from the evaluated set");
    }

    EvalReport r;
    r.samples = set.size();
    r.beta_max = set.beta_max;
    r.intersections = tally(spec, set);
    r.mean_intersections = r.intersections.mean();
    r.admissible_fraction = r.intersections.admissible_fraction();
    r.zone_violation_rate = r.mean_intersections / spec.pair_count();
    r.marginal = marginal_histogram(set, options.marginal_bins);
    r.pairs = neighbor_pair_histogram(spec, set, options.pair_bins, options.direction);

    if (reference) {
        r.tv_to_reference = tv_distance(r.pairs, neighbor_pair_histogram(spec, *reference, options.pair_bins,
                                                                         options.direction));
        r.marginal_tv_to_reference = tv_distance(r.marginal, marginal_histogram(*reference, options.marginal_bins));
    }

    if (options.baselines && options.baseline_samples > 0) {
        const SampleSet& base = reference ? *reference : set;
        Baselines b;
        b.beta_max = base.beta_max;
        b.uniform = uniform_tally(spec, base.beta_max, options.baseline_samples, derive_seed(options.seed, 0));
        b.marginal = marginal_tally(spec, fit_marginal(spec, base), options.baseline_samples,
                                    derive_seed(options.seed, 1));
        r.baselines = b;
    }
    return r;
}

}  // namespace kirigami
