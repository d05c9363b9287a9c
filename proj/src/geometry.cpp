#include "kirigami/geometry.hpp"

#include <stdexcept>

namespace kirigami {

namespace {
void require_proper(const Segment& s) {
    if (s.p0 == s.p1) throw std::invalid_argument("degenerate segment: p0 == p1");
}
}  // namespace

bool segments_intersect(const Segment& a, const Segment& b, double eps) {
    require_proper(a);
    require_proper(b);
    if (!(eps > 0.0)) throw std::invalid_argument("segments_intersect: eps must be > 0");
    return detail::intersects(a.p0, a.p1, b.p0, b.p1, eps);
}

double segment_distance(const Segment& a, const Segment& b) {
    return detail::distance(a.p0, a.p1, b.p0, b.p1);
}

}  // namespace kirigami
