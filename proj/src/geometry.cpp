#include "sqdisk/geometry.hpp"

namespace sqdisk {

Interval segment_area_below(const Interval& t) {
    if (t.hi() < -1.0 || t.lo() > 1.0) throw DomainError("segment_area_below: |t| > 1");
    const auto at = [](double x) {
        const Interval p(x);
        return total::sub(total::acos(p), total::mul(p, total::sqrt(total::sub(Interval(1.0), total::square(p)))));
    };
    const Interval lo_end = at(std::min(t.hi(), 1.0));
    const Interval hi_end = at(std::max(t.lo(), -1.0));
    return Interval::unchecked(std::max(lo_end.lo(), 0.0), hi_end.hi());
}

bool point_in_disk(double x, double y, double tol) { return std::hypot(x, y) <= 1.0 + tol; }

bool square_in_disk(const PlacedSquare& sq, double tol) {
    const double x1 = sq.x + sq.side;
    const double y1 = sq.y + sq.side;
    return point_in_disk(sq.x, sq.y, tol) && point_in_disk(x1, sq.y, tol) && point_in_disk(sq.x, y1, tol) &&
           point_in_disk(x1, y1, tol);
}

bool squares_overlap(const PlacedSquare& p, const PlacedSquare& q, double tol) {
    const double dx = std::min(p.x + p.side, q.x + q.side) - std::max(p.x, q.x);
    const double dy = std::min(p.y + p.side, q.y + q.side) - std::max(p.y, q.y);
    return dx > 2.0 * tol && dy > 2.0 * tol;
}

PocketGeometry pocket_geometry(double s1) {
    PocketGeometry g;
    g.s1 = s1;
    g.sigma = sigma(s1);
    const double t = T_inv(s1);
    g.ell1 = std::sqrt(std::max(0.0, 1.0 - t * t)) - 0.5 * s1;
    g.bottom_y = s1 <= DiskConstants::s1_star ? t : -0.5 * g.sigma;
    g.bx = std::sqrt(std::max(0.0, 1.0 - g.bottom_y * g.bottom_y)) - 0.5 * s1;
    g.by = std::sqrt(1.0 - 0.25 * s1 * s1) - g.bottom_y;
    return g;
}

}  // namespace sqdisk
