#include "kirigami/analysis.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

#include "kirigami/parallel.hpp"
#include "kirigami/random.hpp"
#include "kirigami/samplers.hpp"

namespace kirigami {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

Point second_center(const TwoCutFrame& f) {
    return f.separation == Separation::vertical ? Point{0.0, f.spacing} : Point{f.spacing, 0.0};
}

bool halves_intersect(Point h1, Point h2, Point c) { return detail::intersects(-h1, h1, c - h2, c + h2); }

void require_beta_max(double beta_max) {
    if (!(beta_max > 0.0 && beta_max <= 90.0))
        throw std::invalid_argument("beta_max must lie in (0, 90]");
}

AnglePair lerp(AnglePair a, AnglePair b, double t) {
    return {a.first + t * (b.first - a.first), a.second + t * (b.second - a.second)};
}

// Chord test without endpoint validation.
bool chord_hits(AnglePair a, AnglePair b, const TwoCutFrame& frame, double step) {
    const double len = euclidean_distance(a, b);
    if (len == 0.0) return pair_intersects(a, frame);
    const double dt_min = step / len;
    // Each cut point moves at most (cut_length/2)*|d alpha| per unit t.
    const double rate = 0.5 * frame.cut_length * kDegToRad *
                        (std::abs(b.first - a.first) + std::abs(b.second - a.second));
    double t = 0.0;
    for (;;) {
        const AnglePair p = lerp(a, b, t);
        if (pair_intersects(p, frame)) return true;
        if (t >= 1.0) return false;
        const double safe = 0.999 * pair_clearance(p, frame) / rate;
        t = std::min(1.0, t + std::max(dt_min, safe));
    }
}

AnglePair draw_admissible(double beta_max, const TwoCutFrame& frame, Rng& rng) {
    for (int attempt = 0; attempt < 1'000'000; ++attempt) {
        const AnglePair p{uniform(rng, -beta_max, beta_max), uniform(rng, -beta_max, beta_max)};
        if (!pair_intersects(p, frame)) return p;
    }
    throw std::runtime_error("no admissible point found in the angle square");
}

}  // namespace

double euclidean_distance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("euclidean_distance: length mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = x[k] - y[k];
        s += d * d;
    }
    return std::sqrt(s);
}

double euclidean_distance(AnglePair a, AnglePair b) {
    return std::hypot(a.first - b.first, a.second - b.second);
}

bool pair_intersects(double a1, double a2, const TwoCutFrame& frame) {
    const Point h1 = half_extent(frame.cut_length, frame.first_base + a1);
    const Point h2 = half_extent(frame.cut_length, frame.second_base + a2);
    return halves_intersect(h1, h2, second_center(frame));
}

double pair_clearance(AnglePair p, const TwoCutFrame& frame) {
    const Point h1 = half_extent(frame.cut_length, frame.first_base + p.first);
    const Point h2 = half_extent(frame.cut_length, frame.second_base + p.second);
    const Point c = second_center(frame);
    return detail::distance(-h1, h1, c - h2, c + h2);
}

TwoCutMap::TwoCutMap(double beta_max, int resolution, TwoCutFrame frame,
                     std::vector<std::uint8_t> occupancy)
    : beta_max_(beta_max), resolution_(resolution), frame_(frame), occupancy_(std::move(occupancy)) {
    if (occupancy_.size() != static_cast<std::size_t>(resolution) * resolution)
        throw std::invalid_argument("occupancy size does not match resolution");
}

int TwoCutMap::cell_of(double v) const {
    const auto k = static_cast<int>(std::floor((v + beta_max_) / cell_size()));
    return std::clamp(k, 0, resolution_ - 1);
}

std::size_t TwoCutMap::blocked_count() const {
    return static_cast<std::size_t>(std::count_if(occupancy_.begin(), occupancy_.end(),
                                                  [](std::uint8_t v) { return v != 0; }));
}

TwoCutMap build_two_cut_map(double beta_max, int resolution, const TwoCutFrame& frame) {
    require_beta_max(beta_max);
    if (resolution < 64) throw std::invalid_argument("map resolution must be >= 64");
    const auto n = static_cast<std::size_t>(resolution);
    std::vector<std::uint8_t> occ(n * n, 0);
    std::vector<Point> h1(n), h2(n);
    // Centers computed the same way as TwoCutMap::center.
    for (int k = 0; k < resolution; ++k) {
        const double c = static_cast<double>(2 * k + 1 - resolution) / resolution * beta_max;
        h1[k] = half_extent(frame.cut_length, frame.first_base + c);
        h2[k] = half_extent(frame.cut_length, frame.second_base + c);
    }
    const Point c = second_center(frame);
    parallel_for(n, [&](std::size_t r) {
        for (std::size_t s = 0; s < n; ++s) occ[r * n + s] = halves_intersect(h1[r], h2[s], c) ? 1 : 0;
    });
    return TwoCutMap(beta_max, resolution, frame, std::move(occ));
}

double nonadmissible_fraction(const TwoCutMap& map) {
    return static_cast<double>(map.blocked_count()) / static_cast<double>(map.occupancy().size());
}

bool straight_path_crosses(AnglePair a, AnglePair b, const TwoCutFrame& frame, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("chord step must be > 0");
    if (pair_intersects(a, frame) || pair_intersects(b, frame))
        throw std::invalid_argument("chord endpoints must be admissible");
    return chord_hits(a, b, frame, step);
}

ProportionEstimate path_crossing_probability(double beta_max, std::uint64_t n_pairs,
                                             const TwoCutFrame& frame, std::uint64_t seed, double step) {
    require_beta_max(beta_max);
    if (n_pairs < 10'000) throw std::invalid_argument("path_crossing_probability needs n_pairs >= 10^4");
    if (!(step > 0.0)) throw std::invalid_argument("chord step must be > 0");
    std::vector<std::uint8_t> hit(n_pairs, 0);
    parallel_for(n_pairs, [&](std::size_t k) {
        Rng rng = make_rng(seed, k);
        const AnglePair a = draw_admissible(beta_max, frame, rng);
        const AnglePair b = draw_admissible(beta_max, frame, rng);
        hit[k] = chord_hits(a, b, frame, step) ? 1 : 0;
    });
    std::uint64_t crossings = 0;
    for (auto h : hit) crossings += h;
    return wilson_interval(crossings, n_pairs);
}

namespace {

struct GridSearch {
    const TwoCutMap& map;
    std::vector<std::uint8_t> blocked;
    int n;

    std::vector<int> run(int start, int goal) const {
        const auto cells = static_cast<std::size_t>(n) * n;
        std::vector<double> g(cells, std::numeric_limits<double>::infinity());
        std::vector<int> parent(cells, -1);
        std::vector<std::uint8_t> closed(cells, 0);
        const int gr = goal / n, gc = goal % n;
        auto h = [&](int idx) { return std::hypot(idx / n - gr, idx % n - gc); };
        using Entry = std::pair<double, int>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
        g[start] = 0.0;
        open.push({h(start), start});
        while (!open.empty()) {
            const int cur = open.top().second;
            open.pop();
            if (closed[cur]) continue;
            closed[cur] = 1;
            if (cur == goal) break;
            const int r = cur / n, c = cur % n;
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    const int nr = r + dr, nc = c + dc;
                    if (nr < 0 || nr >= n || nc < 0 || nc >= n) continue;
                    const int nxt = nr * n + nc;
                    if (blocked[nxt] || closed[nxt]) continue;
                    // no corner cutting
                    if (dr != 0 && dc != 0 && (blocked[r * n + nc] || blocked[nr * n + c])) continue;
                    const double cand = g[cur] + (dr != 0 && dc != 0 ? std::numbers::sqrt2 : 1.0);
                    if (cand < g[nxt]) {
                        g[nxt] = cand;
                        parent[nxt] = cur;
                        open.push({cand + h(nxt), nxt});
                    }
                }
        }
        if (!closed[goal]) return {};
        std::vector<int> path;
        for (int v = goal; v != -1; v = parent[v]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        return path;
    }
};

// Raw occupancy dilated by one cell except near the endpoints, keeping the grid
// path away from zone boundaries where the bitmap and the exact predicate differ.
std::vector<std::uint8_t> dilated(const TwoCutMap& map, int start, int goal) {
    const int n = map.resolution();
    std::vector<std::uint8_t> out(static_cast<std::size_t>(n) * n, 0);
    auto near = [&](int r, int c, int idx) { return std::max(std::abs(r - idx / n), std::abs(c - idx % n)) <= 2; };
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            if (map.blocked(r, c)) {
                out[static_cast<std::size_t>(r) * n + c] = 1;
                continue;
            }
            if (near(r, c, start) || near(r, c, goal)) continue;
            bool edge = false;
            for (int dr = -1; dr <= 1 && !edge; ++dr)
                for (int dc = -1; dc <= 1 && !edge; ++dc) {
                    const int nr = r + dr, nc = c + dc;
                    if (nr >= 0 && nr < n && nc >= 0 && nc < n && map.blocked(nr, nc)) edge = true;
                }
            out[static_cast<std::size_t>(r) * n + c] = edge ? 1 : 0;
        }
    return out;
}

double polyline_length(const std::vector<AnglePair>& pts) {
    double len = 0.0;
    for (std::size_t k = 1; k < pts.size(); ++k) len += euclidean_distance(pts[k - 1], pts[k]);
    return len;
}

}  // namespace

PathResult admissible_path(const TwoCutMap& map, AnglePair a, AnglePair b, double step) {
    const double bm = map.beta_max();
    auto inside = [&](AnglePair p) { return std::abs(p.first) <= bm && std::abs(p.second) <= bm; };
    if (!inside(a) || !inside(b)) throw std::invalid_argument("path endpoints must lie inside the map square");
    const TwoCutFrame& frame = map.frame();
    if (pair_intersects(a, frame) || pair_intersects(b, frame) || map.blocked_at(a) || map.blocked_at(b))
        throw std::invalid_argument("path endpoints must be admissible");

    PathResult result;
    if (a == b) {
        result.found = true;
        result.polyline = {a};
        return result;
    }
    if (!chord_hits(a, b, frame, step)) {
        result.found = true;
        result.polyline = {a, b};
        result.length = euclidean_distance(a, b);
        return result;
    }

    const int n = map.resolution();
    const int start = map.cell_of(a.first) * n + map.cell_of(a.second);
    const int goal = map.cell_of(b.first) * n + map.cell_of(b.second);
    std::vector<int> cells = GridSearch{map, dilated(map, start, goal), n}.run(start, goal);
    if (cells.empty()) {
        std::vector<std::uint8_t> raw(map.occupancy().begin(), map.occupancy().end());
        cells = GridSearch{map, std::move(raw), n}.run(start, goal);
    }
    if (cells.empty()) return result;

    std::vector<AnglePair> raw;
    raw.reserve(cells.size() + 2);
    raw.push_back(a);
    for (int idx : cells) raw.push_back({map.center(idx / n), map.center(idx % n)});
    raw.push_back(b);

    std::vector<AnglePair> pts{a};
    std::size_t anchor = 0;
    for (std::size_t k = 1; k < raw.size(); ++k) {
        if (!chord_hits(raw[anchor], raw[k], frame, step)) continue;
        if (k - 1 == anchor) return result;  // a raw grid edge is not clear
        anchor = k - 1;
        pts.push_back(raw[anchor]);
        --k;
    }
    pts.push_back(b);

    result.found = true;
    result.polyline = std::move(pts);
    result.length = polyline_length(result.polyline);
    return result;
}

std::vector<SweepCurvePoint> sweep_curves(const LatticeSpec& spec, std::span<const double> beta_max_list,
                                          std::uint64_t n_samples, std::uint64_t seed) {
    if (n_samples < 10'000) throw std::invalid_argument("sweep_curves needs n_samples >= 10^4 per point");
    std::vector<SweepCurvePoint> out;
    for (std::size_t k = 0; k < beta_max_list.size(); ++k) {
        SweepCurvePoint p;
        p.beta_max = beta_max_list[k];
        p.tally = uniform_tally(spec, p.beta_max, n_samples, derive_seed(seed, k));
        p.admissible = wilson_interval(p.tally.admissible, p.tally.samples);
        out.push_back(p);
    }
    return out;
}

}  // namespace kirigami
