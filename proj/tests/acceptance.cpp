// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "kirigami/analysis.hpp"
#include "kirigami/dataset_io.hpp"
#include "kirigami/evaluation.hpp"
#include "kirigami/lattice.hpp"
#include "kirigami/samplers.hpp"
#include "kirigami/stats.hpp"

using namespace kirigami;

namespace {

// Tolerances are fixed here, not taken from the command line.
constexpr double kDistanceTol = 1e-3;
constexpr double kFractionTol = 0.003;
constexpr double kChordTolFull = 0.010;
constexpr double kChordTol60 = 0.005;
constexpr double kRareRateMax = 1e-5;
constexpr double kTvMax = 0.05;
constexpr int kMapResolution = 2048;
constexpr std::uint64_t kChordPairs = 100'000;
constexpr std::uint64_t kThresholdGrids = 1'000'000;
constexpr std::uint64_t kRareGrids = 2'000'000;
constexpr std::uint64_t kOrderingGrids = 100'000;
constexpr std::uint64_t kBaselineGrids = 100'000;
constexpr int kDatasetSize = 20'000;

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail, double seconds) {
    std::printf("%s %-28s %s (%.1fs)\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

void run(const std::string& name, const std::function<bool(std::string&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(name, ok, detail, dt);
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
    char buf[200];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// Exact probability of a 1D bin under uniform(-bm, bm).
double uniform_bin_mass(double lo, double hi, double bm) {
    return std::max(0.0, std::min(hi, bm) - std::max(lo, -bm)) / (2.0 * bm);
}

}  // namespace

int main() {
    const LatticeSpec spec;
    const AnglePair A{5, 4}, B{-5, -3}, C{65, -45};

    run("distances", [&](std::string& d) {
        const double ab = euclidean_distance(A, B), ac = euclidean_distance(A, C), bc = euclidean_distance(B, C);
        d = fmt("AB=%.4f AC=%.4f BC=%.4f", ab, ac, bc);
        return std::abs(ab - 12.206) <= kDistanceTol && std::abs(ac - 77.466) <= kDistanceTol &&
               std::abs(bc - 81.633) <= kDistanceTol && ab < ac && ac < bc;
    });

    run("two-cut area fractions", [&](std::string& d) {
        const double full = nonadmissible_fraction(build_two_cut_map(90.0, kMapResolution));
        const double r60 = nonadmissible_fraction(build_two_cut_map(60.0, kMapResolution));
        TwoCutFrame horizontal = TwoCutFrame::lattice_pair();
        horizontal.separation = Separation::horizontal;
        const double h60 = nonadmissible_fraction(build_two_cut_map(60.0, kMapResolution, horizontal));
        d = fmt("full=%.5f (0.165) 60deg=%.5f (0.187); horizontal separation at 60deg=%.5f", full, r60, h60);
        return std::abs(full - 0.165) <= kFractionTol && std::abs(r60 - 0.187) <= kFractionTol;
    });

    run("chord crossing probability", [&](std::string& d) {
        const ProportionEstimate full = path_crossing_probability(90.0, kChordPairs, TwoCutFrame::lattice_pair(), 23);
        const ProportionEstimate r60 = path_crossing_probability(60.0, kChordPairs, TwoCutFrame::lattice_pair(), 24);
        d = fmt("full=%.4f (0.237) ", full.value) + fmt("60deg=%.4f (0.035) n=%g", r60.value, double(kChordPairs));
        return std::abs(full.value - 0.237) <= kChordTolFull && std::abs(r60.value - 0.035) <= kChordTol60;
    });

    run("30 degree threshold", [&](std::string& d) {
        const IntersectionTally t30 = uniform_tally(spec, 30.0, kThresholdGrids, 30);
        const IntersectionTally t35 = uniform_tally(spec, 35.0, kThresholdGrids, 35);
        d = fmt("total@30=%g over %g grids, mean@35=%.4f", double(t30.total), double(t30.samples), t35.mean());
        return t30.samples == kThresholdGrids && t30.total == 0 && t35.mean() > 0.0;
    });

    run("rare admissible rate at 60", [&](std::string& d) {
        const IntersectionTally t = uniform_tally(spec, 60.0, kRareGrids, 60);
        const double rate = t.admissible_fraction();
        d = fmt("%g admissible of %g, rate=%.2e", double(t.admissible), double(t.samples), rate);
        return rate > 0.0 && rate <= kRareRateMax;
    });

    run("mean ordering 60 > 90", [&](std::string& d) {
        const IntersectionTally t60 = uniform_tally(spec, 60.0, kOrderingGrids, 600);
        const IntersectionTally t90 = uniform_tally(spec, 90.0, kOrderingGrids, 900);
        const double lo60 = t60.mean() - kZ99 * t60.standard_error();
        const double hi90 = t90.mean() + kZ99 * t90.standard_error();
        d = fmt("mean60=%.4f mean90=%.4f", t60.mean(), t90.mean()) + fmt("; 99%% bounds %.4f > %.4f", lo60, hi90);
        return lo60 > hi90;
    });

    run("detour path A to B", [&](std::string& d) {
        const TwoCutFrame frame = TwoCutFrame::absolute();
        const bool crosses = straight_path_crosses(A, B, frame);
        const PathResult p = admissible_path(build_two_cut_map(90.0, kMapResolution, frame), A, B);
        bool vertices_ok = p.found;
        for (std::size_t k = 0; k < p.polyline.size(); ++k) {
            vertices_ok = vertices_ok && !pair_intersects(p.polyline[k], frame);
            if (k > 0) vertices_ok = vertices_ok && !straight_path_crosses(p.polyline[k - 1], p.polyline[k], frame);
        }
        d = std::string("straight crosses=") + (crosses ? "yes" : "no") + fmt(", detour length=%.3f > %.3f", p.length, euclidean_distance(A, B)) +
            fmt(", %g vertices", double(p.polyline.size()));
        return crosses && p.found && p.length > euclidean_distance(A, B) && vertices_ok;
    });

    std::vector<SampleSet> datasets;
    run("dataset generation", [&](std::string& d) {
        bool ok = true;
        for (double bm : {20.0, 60.0, 90.0}) {
            const std::uint64_t seed = static_cast<std::uint64_t>(bm);
            SampleSet set = generate_dataset(spec, bm, kDatasetSize, kDefaultSweeps, seed);
            std::size_t admissible = 0, in_bounds = 0;
            for (const auto& g : set.samples) {
                admissible += count_intersections(spec, g) == 0;
                bool b = true;
                for (double v : g.values()) b = b && std::abs(v) <= bm;
                in_bounds += b;
            }
            const std::string bytes = encode_dataset(set);
            const bool same = bytes == encode_dataset(generate_dataset(spec, bm, kDatasetSize, kDefaultSweeps, seed));
            const bool round_trip = decode_dataset(bytes).samples == set.samples;
            d += fmt("%g: admissible %g/%g", bm, double(admissible), double(set.size())) +
                 (same ? ", byte-identical" : ", DIFFERS") + (round_trip ? "; " : ", round-trip mismatch; ");
            ok = ok && admissible == set.size() && in_bounds == set.size() && same && round_trip &&
                 set.size() == static_cast<std::size_t>(kDatasetSize);
            datasets.push_back(std::move(set));
        }
        return ok;
    });

    run("marginal baseline at 90", [&](std::string& d) {
        if (datasets.size() != 3) {
            d = "needs the generated datasets";
            return false;
        }
        const AngleMarginal m = fit_marginal(spec, datasets[2]);
        const IntersectionTally tm = marginal_tally(spec, m, kBaselineGrids, 91);
        const IntersectionTally tu = uniform_tally(spec, 90.0, kBaselineGrids, 92);
        const double m_lo = tm.mean() - kZ99 * tm.standard_error(), m_hi = tm.mean() + kZ99 * tm.standard_error();
        const double u_lo = tu.mean() - kZ99 * tu.standard_error();
        d = fmt("marginal=%.4f [%.4f, %.4f]", tm.mean(), m_lo, m_hi) + fmt(" uniform=%.4f (lower %.4f)", tu.mean(), u_lo);
        return m_lo > 0.0 && m_hi < u_lo;
    });

    run("20 degree pair histogram", [&](std::string& d) {
        if (datasets.empty()) {
            d = "needs the generated datasets";
            return false;
        }
        const Histogram2D h = neighbor_pair_histogram(spec, datasets[0]);
        std::vector<double> exact(h.counts.size());
        std::uint64_t outside = 0;
        for (int r = 0; r < h.bins; ++r)
            for (int c = 0; c < h.bins; ++c) {
                const double rl = h.lo + r * h.bin_width(), cl = h.lo + c * h.bin_width();
                const double p = uniform_bin_mass(rl, rl + h.bin_width(), 20.0) *
                                 uniform_bin_mass(cl, cl + h.bin_width(), 20.0);
                exact[static_cast<std::size_t>(r) * h.bins + c] = p;
                if (p == 0.0) outside += h.at(r, c);
            }
        const std::vector<double> observed = h.probabilities();
        const double tv = tv_distance(observed, exact);
        d = fmt("mass outside=%g, TV to uniform=%.4f over %g pairs", double(outside), tv, double(h.total())) +
            fmt(" (limit %.2f)", kTvMax);
        return outside == 0 && tv < kTvMax;
    });

    std::printf("%s: %d failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
