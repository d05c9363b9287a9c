#pragma once

#include <algorithm>
#include <cmath>

namespace kirigami {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator-(Point a) { return {-a.x, -a.y}; }
    friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Point, Point) = default;
};

/// A closed straight segment; both endpoints are part of it.
struct Segment {
    Point p0;
    Point p1;
};

inline constexpr double kDefaultEps = 1e-9;

/// True iff the closed segments share a point (crossing, endpoint contact or
/// collinear overlap). Orientation values with |o| < eps count as zero.
/// Throws std::invalid_argument for a degenerate segment.
bool segments_intersect(const Segment& a, const Segment& b, double eps = kDefaultEps);

/// Minimum Euclidean distance between two closed segments (0 when they touch).
double segment_distance(const Segment& a, const Segment& b);

namespace detail {

inline double orient(Point a, Point b, Point c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

inline int sign_eps(double v, double eps) { return v > eps ? 1 : (v < -eps ? -1 : 0); }

inline bool within_box(Point a, Point b, Point p, double eps) {
    return p.x >= std::min(a.x, b.x) - eps && p.x <= std::max(a.x, b.x) + eps &&
           p.y >= std::min(a.y, b.y) - eps && p.y <= std::max(a.y, b.y) + eps;
}

// Unchecked predicate used by the hot loops.
inline bool intersects(Point p0, Point p1, Point q0, Point q1, double eps = kDefaultEps) {
    if (std::max(p0.x, p1.x) + eps < std::min(q0.x, q1.x) ||
        std::max(q0.x, q1.x) + eps < std::min(p0.x, p1.x) ||
        std::max(p0.y, p1.y) + eps < std::min(q0.y, q1.y) ||
        std::max(q0.y, q1.y) + eps < std::min(p0.y, p1.y))
        return false;

    const int o1 = sign_eps(orient(p0, p1, q0), eps);
    const int o2 = sign_eps(orient(p0, p1, q1), eps);
    const int o3 = sign_eps(orient(q0, q1, p0), eps);
    const int o4 = sign_eps(orient(q0, q1, p1), eps);

    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 == 0 && within_box(p0, p1, q0, eps)) return true;
    if (o2 == 0 && within_box(p0, p1, q1, eps)) return true;
    if (o3 == 0 && within_box(q0, q1, p0, eps)) return true;
    if (o4 == 0 && within_box(q0, q1, p1, eps)) return true;
    return false;
}

inline double point_segment_distance(Point p, Point a, Point b) {
    const Point ab = b - a;
    const Point ap = p - a;
    const double len2 = ab.x * ab.x + ab.y * ab.y;
    double t = len2 > 0.0 ? (ap.x * ab.x + ap.y * ab.y) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Point d = ap - t * ab;
    return std::hypot(d.x, d.y);
}

inline double distance(Point p0, Point p1, Point q0, Point q1) {
    if (intersects(p0, p1, q0, q1, 0.0)) return 0.0;
    return std::min({point_segment_distance(p0, q0, q1), point_segment_distance(p1, q0, q1),
                     point_segment_distance(q0, p0, p1), point_segment_distance(q1, p0, p1)});
}

}  // namespace detail
}  // namespace kirigami
