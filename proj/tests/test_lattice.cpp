#include <cmath>
#include <limits>

#include "doctest.h"
#include "kirigami/lattice.hpp"
#include "kirigami/random.hpp"
#include "kirigami/samplers.hpp"

using namespace kirigami;

namespace {

// Independent counter: every pair of cells, every periodic image, plain
// segments_intersect on translated cut_segment results.
struct BruteCount {
    int near = 0;  // pairs whose intersecting image lies in the 8-neighborhood
    int far = 0;   // intersections anywhere else
};

BruteCount brute_count(const LatticeSpec& spec, const CutGrid& g) {
    BruteCount out;
    const double wx = spec.cols() * spec.spacing(), wy = spec.rows() * spec.spacing();
    const int n = spec.cells();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int ai = a / spec.cols(), aj = a % spec.cols();
            const int bi = b / spec.cols(), bj = b % spec.cols();
            const Segment sa = cut_segment(spec, g, ai, aj);
            const Segment sb0 = cut_segment(spec, g, bi, bj);
            for (int px = -1; px <= 1; ++px)
                for (int py = -1; py <= 1; ++py) {
                    if (a == b && px == 0 && py == 0) continue;
                    const Point shift{px * wx, py * wy};
                    const Segment sb{sb0.p0 + shift, sb0.p1 + shift};
                    if (!segments_intersect(sa, sb)) continue;
                    const double dx = (bj * spec.spacing() + shift.x) - aj * spec.spacing();
                    const double dy = (bi * spec.spacing() + shift.y) - ai * spec.spacing();
                    const bool neighbor = std::abs(dx) <= spec.spacing() + 1e-12 &&
                                          std::abs(dy) <= spec.spacing() + 1e-12;
                    (neighbor ? out.near : out.far)++;
                }
        }
    out.near /= 2;  // ordered -> unordered
    out.far /= 2;
    return out;
}

CutGrid all_vertical(const LatticeSpec& spec) {
    CutGrid g = base_pattern(spec, 90.0);
    for (int i = 0; i < spec.rows(); ++i)
        for (int j = 0; j < spec.cols(); ++j)
            if (base_orientation(spec, i, j) == Orientation::horizontal) g.set(i, j, 90.0);
    return g;
}

}  // namespace

TEST_CASE("lattice spec validation") {
    CHECK_NOTHROW(LatticeSpec(6, 6));
    CHECK_THROWS_AS(LatticeSpec(5, 6), std::invalid_argument);
    CHECK_THROWS_AS(LatticeSpec(0, 6), std::invalid_argument);
    CHECK_THROWS_AS(LatticeSpec(6, 6, 1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(LatticeSpec(6, 6, -1.0), std::invalid_argument);
    CHECK(LatticeSpec{}.pair_count() == 144);
}

TEST_CASE("cut grid enforces the beta bound") {
    CHECK_THROWS_AS(CutGrid(6, 6, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(CutGrid(6, 6, 91.0), std::invalid_argument);
    CutGrid g(6, 6, 20.0);
    CHECK_THROWS_AS(g.set(0, 0, 20.5), std::invalid_argument);
    CHECK_THROWS_AS(g.set(6, 0, 1.0), std::out_of_range);
    g.set(0, 0, -20.0);
    CHECK(g(0, 0) == -20.0);
}

TEST_CASE("base angle follows the checkerboard") {
    const LatticeSpec spec;
    CHECK(base_angle(spec, 0, 0) == 0.0);
    CHECK(base_angle(spec, 0, 1) == 90.0);
    CHECK(base_angle(spec, 1, 1) == 0.0);
    CHECK_THROWS_AS(base_angle(spec, 6, 0), std::out_of_range);
    CHECK_THROWS_AS(base_angle(spec, 0, -1), std::out_of_range);

    const LatticeSpec flipped(6, 6, 1.0, std::sqrt(3.0), 1);
    CHECK(base_angle(flipped, 0, 0) == 90.0);

    for (int i = 0; i < spec.rows(); ++i)
        for (int j = 0; j < spec.cols(); ++j) {
            const double b = base_angle(spec, i, j);
            CHECK(b != base_angle(spec, (i + 1) % 6, j));
            CHECK(b != base_angle(spec, i, (j + 1) % 6));
            CHECK(b == base_angle(spec, (i + 1) % 6, (j + 1) % 6));
            CHECK(b == base_angle(spec, (i + 1) % 6, (j + 5) % 6));
        }
}

TEST_CASE("wrap angle") {
    CHECK(wrap_angle(94) == doctest::Approx(-86));
    CHECK(wrap_angle(-135) == doctest::Approx(45));
    CHECK(wrap_angle(90) == 90);
    CHECK(wrap_angle(-90) == 90);
    CHECK(wrap_angle(0) == 0);
    CHECK_THROWS_AS(wrap_angle(std::numeric_limits<double>::infinity()), std::invalid_argument);
    CHECK_THROWS_AS(wrap_angle(std::nan("")), std::invalid_argument);

    Rng rng(7);
    for (int k = 0; k < 10000; ++k) {
        const double a = uniform(rng, -2000.0, 2000.0);
        const double w = wrap_angle(a);
        CHECK(w > -90.0);
        CHECK(w <= 90.0);
        CHECK(wrap_angle(w) == w);
        CHECK(wrap_angle(a + 180.0) == doctest::Approx(w).epsilon(1e-9));
        const double r = std::remainder(a - w, 180.0);
        CHECK(std::abs(r) < 1e-9);
    }
}

TEST_CASE("cut segment endpoints") {
    const LatticeSpec spec;
    CutGrid g = base_pattern(spec, 90.0);
    const double h = std::sqrt(3.0) / 2.0;

    Segment s = cut_segment(spec, g, 0, 0);
    CHECK(s.p0.x == doctest::Approx(0.0));
    CHECK(std::abs(s.p0.y) == doctest::Approx(h));
    CHECK(s.p1.y == doctest::Approx(-s.p0.y));

    s = cut_segment(spec, g, 0, 1);
    CHECK(std::min(s.p0.x, s.p1.x) == doctest::Approx(1.0 - h));
    CHECK(std::max(s.p0.x, s.p1.x) == doctest::Approx(1.0 + h));
    CHECK(s.p0.y == doctest::Approx(0.0));

    g.set(0, 0, 30.0);
    s = cut_segment(spec, g, 0, 0);
    CHECK(s.p1.x == doctest::Approx(h * 0.5));
    CHECK(s.p1.y == doctest::Approx(h * std::sqrt(3.0) / 2.0));
    CHECK(s.p0.x == doctest::Approx(-h * 0.5));

    CHECK_THROWS_AS(cut_segment(spec, g, 0, 6), std::out_of_range);
}

TEST_CASE("segment intersection predicate") {
    CHECK(segments_intersect({{0, -1}, {0, 1}}, {{-1, 0}, {1, 0}}));
    CHECK_FALSE(segments_intersect({{0, 0}, {0, 1}}, {{1, 0}, {1, 1}}));
    // collinear overlap on y in [0.134, 0.866]
    CHECK(segments_intersect({{0, -0.866}, {0, 0.866}}, {{0, 0.134}, {0, 1.866}}));
    CHECK_FALSE(segments_intersect({{0, -0.866}, {0, 0.866}}, {{0, 0.9}, {0, 1.866}}));
    // endpoint contact
    CHECK(segments_intersect({{0, 0}, {1, 0}}, {{1, 0}, {2, 1}}));
    CHECK(segments_intersect({{0, 0}, {2, 0}}, {{1, 0}, {1, 1}}));
    CHECK_FALSE(segments_intersect({{0, 0}, {2, 0}}, {{1, 0.001}, {1, 1}}));
    CHECK_THROWS_AS(segments_intersect({{0, 0}, {0, 0}}, {{1, 0}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(segments_intersect({{0, 0}, {0, 1}}, {{1, 0}, {1, 1}}, 0.0), std::invalid_argument);

    Rng rng(11);
    for (int k = 0; k < 20000; ++k) {
        auto pt = [&] { return Point{uniform(rng, -1, 1), uniform(rng, -1, 1)}; };
        const Segment a{pt(), pt()}, b{pt(), pt()};
        const bool ab = segments_intersect(a, b);
        CHECK(ab == segments_intersect(b, a));
        const Point t{0.25, -0.5};  // exact in binary
        CHECK(ab == segments_intersect({a.p0 + t, a.p1 + t}, {b.p0 + t, b.p1 + t}));
        CHECK(ab == segments_intersect({a.p1, a.p0}, b));
        // distance is zero exactly when the segments meet (away from the eps band)
        const double d = segment_distance(a, b);
        if (d > 1e-6) CHECK_FALSE(ab);
        if (!ab) CHECK(d > 0.0);
    }
}

TEST_CASE("neighbor offsets") {
    const auto offs = neighbor_offsets();
    auto has = [&](Offset o) { return std::find(offs.begin(), offs.end(), o) != offs.end(); };
    CHECK(has({0, 1}));
    CHECK(has({1, 1}));
    CHECK(has({-1, -1}));
    CHECK_FALSE(has({0, 2}));
    CHECK_FALSE(has({0, 0}));
    CHECK(offs.size() == 8);
}

TEST_CASE("intersection counting") {
    const LatticeSpec spec;
    CHECK(count_intersections(spec, base_pattern(spec, 90.0)) == 0);
    CHECK(is_admissible(spec, base_pattern(spec, 90.0)));

    const CutGrid v = all_vertical(spec);
    CHECK(count_intersections(spec, v) == 36);
    CHECK(brute_count(spec, v).near == 36);
    CHECK_FALSE(is_admissible(spec, v));

    CHECK_THROWS_AS(count_intersections(LatticeSpec(4, 6), v), std::invalid_argument);
}

TEST_CASE("intersections only occur inside the 8-neighborhood") {
    const LatticeSpec spec;
    Rng rng(3);
    for (int k = 0; k < 300; ++k) {
        const CutGrid g = uniform_grid(spec, 90.0, rng);
        const BruteCount b = brute_count(spec, g);
        CHECK(b.far == 0);
        CHECK(b.near == count_intersections(spec, g));
    }
}

TEST_CASE("no intersections up to 30 degrees, some beyond") {
    const LatticeSpec spec;
    const IntersectionTally at30 = uniform_tally(spec, 30.0, 1'000'000, 101);
    CHECK(at30.samples == 1'000'000);
    CHECK(at30.total == 0);
    const IntersectionTally at31 = uniform_tally(spec, 31.0, 1'000'000, 102);
    CHECK(at31.total > 0);
}
