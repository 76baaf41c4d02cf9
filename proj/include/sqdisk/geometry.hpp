#pragma once

// Closed-form geometry of squares inside the unit disk centred at the
// origin (y axis pointing up). The formulas are templates over the scalar
// type so the packer (double), the interval checks (Interval) and the
// prover (expr::Expr) share one definition.

#include <cmath>
#include <span>
#include <vector>

#include "sqdisk/scalar.hpp"

namespace sqdisk {

struct DiskConstants {
    static constexpr double critical_area = 1.6;
    static inline const double critical_density = 8.0 / (5.0 * M_PI);
    static inline const double worst_side = 2.0 / std::sqrt(5.0);
    static inline const double s1_star = std::sqrt((2.0 + std::sqrt(2.0)) / 3.0);
    static inline const double s1_prime = std::sqrt((11.0 + 6.0 * std::sqrt(3.0)) / 13.0);
};

template <class S>
S s1_star() {
    const Interval enc = total::sqrt(total::div(total::add(Interval(2.0), total::sqrt(Interval(2.0))), Interval(3.0)));
    return lift<S>(enc, DiskConstants::s1_star);
}

// Side of the largest square centred on x = 0 whose bottom lies on y = u,
// without the argument check. Negative values are clamped to 0.
template <class S>
S T_unchecked(const S& u) {
    return max(S(0.0), ratio<S>(2, 5) * (sqrt(5.0 - square(u)) - 2.0 * u));
}

template <class S>
S T(const S& u) {
    domain_check(u, -1.0, 1.0, "T: |u| > 1");
    return T_unchecked(u);
}

// Highest ordinate of the bottom of a centred square of side s.
template <class S>
S T_inv(const S& s) {
    domain_check(s, 0.0, std::sqrt(2.0), "T_inv: s outside (0, sqrt 2]");
    return sqrt(1.0 - 0.25 * square(s)) - s;
}

// Side of the largest square fitting into one pocket beside s1.
template <class S>
S sigma(const S& s1) {
    return if_le(
        s1, s1_star<S>(),
        [&] {
            const S t = T_inv(s1);
            const S d = s1 - 2.0 * t;
            return 0.25 * (-s1 - 2.0 * t + sqrt(8.0 - square(d)));
        },
        [&] { return ratio<S>(1, 5) * (sqrt(20.0 - square(s1)) - 2.0 * s1); });
}

// Area of the part of the disk below the chord y = -t.
template <class S>
S segment_area_below(const S& t) {
    domain_check(t, -1.0, 1.0, "segment_area_below: |t| > 1");
    return acos(t) - t * sqrt(1.0 - square(t));
}

// The function is decreasing in t, so endpoint evaluation is exact.
Interval segment_area_below(const Interval& t);

template <class S>
S segment_area_below_clamped(const S& t) {
    return segment_area_below(min(max(t, S(-1.0)), S(1.0)));
}

// Width of the widest axis-parallel rectangle with top y_t and height h.
template <class S>
S chord_width(const S& y_t, const S& h) {
    domain_check(y_t, -1.0, 1.0, "chord_width: top outside the disk");
    domain_check(y_t - h, -1.0, 1.0, "chord_width: bottom outside the disk");
    return 2.0 * sqrt(min(1.0 - square(y_t), 1.0 - square(y_t - h)));
}

// Largest x of the left side of a square of side u between y = b and y = a.
template <class S>
S x_max(const S& a, const S& b, const S& u) {
    const S c = min(a, -b);
    return if_le(
        u, 2.0 * c, [&] { return T_inv(u); }, [&] { return sqrt(1.0 - square(u - c)) - u; });
}

template <class S>
S y_residual(const S& a, const S& h, const S& w, const S& h_next) {
    return 0.5 * w - h + x_max(a, a - h, h_next);
}

// Largest square fitting below the subcontainers of the given heights.
template <class S>
S z_below(const S& s1, std::span<const S> heights) {
    S u = -T_inv(s1);
    for (const S& h : heights) u = u + h;
    return T_unchecked(min(u, S(1.0)));
}

template <class S>
S z_below(const S& s1, const std::vector<S>& heights) {
    return z_below(s1, std::span<const S>(heights));
}

struct PlacedSquare {
    double x = 0.0;
    double y = 0.0;
    double side = 0.0;
};

inline constexpr double kDefaultTol = 1e-9;

bool point_in_disk(double x, double y, double tol);
bool square_in_disk(const PlacedSquare& sq, double tol = kDefaultTol);
bool squares_overlap(const PlacedSquare& p, const PlacedSquare& q, double tol = kDefaultTol);

struct PocketGeometry {
    double s1 = 0.0;
    double sigma = 0.0;
    double ell1 = 0.0;
    double bx = 0.0;
    double by = 0.0;
    double bottom_y = 0.0;
};

PocketGeometry pocket_geometry(double s1);

}  // namespace sqdisk
