#pragma once

// Closed real intervals with outward-rounded endpoints.
//
// Every endpoint is computed in round-to-nearest and then corrected by one
// step to the adjacent representable double whenever the exact result lies
// on the wrong side. The exact rounding error of +, -, * and / and sqrt is
// recovered with error-free transformations (TwoSum and FMA), so exactly
// representable results are not widened at all.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>

namespace sqdisk {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline double next_up(double x) {
    if (std::isnan(x) || x == std::numeric_limits<double>::infinity()) return x;
    if (x == 0.0) return std::numeric_limits<double>::denorm_min();
    auto bits = std::bit_cast<std::uint64_t>(x);
    bits = x > 0.0 ? bits + 1 : bits - 1;
    return std::bit_cast<double>(bits);
}

inline double next_down(double x) { return -next_up(-x); }

enum class TriBool : std::uint8_t { CertainlyFalse, CertainlyTrue, Unknown };

constexpr TriBool tri(bool b) { return b ? TriBool::CertainlyTrue : TriBool::CertainlyFalse; }

constexpr TriBool operator!(TriBool t) {
    switch (t) {
    case TriBool::CertainlyFalse: return TriBool::CertainlyTrue;
    case TriBool::CertainlyTrue: return TriBool::CertainlyFalse;
    default: return TriBool::Unknown;
    }
}

constexpr TriBool operator&&(TriBool a, TriBool b) {
    if (a == TriBool::CertainlyFalse || b == TriBool::CertainlyFalse) return TriBool::CertainlyFalse;
    if (a == TriBool::CertainlyTrue && b == TriBool::CertainlyTrue) return TriBool::CertainlyTrue;
    return TriBool::Unknown;
}

constexpr TriBool operator||(TriBool a, TriBool b) {
    if (a == TriBool::CertainlyTrue || b == TriBool::CertainlyTrue) return TriBool::CertainlyTrue;
    if (a == TriBool::CertainlyFalse && b == TriBool::CertainlyFalse) return TriBool::CertainlyFalse;
    return TriBool::Unknown;
}

const char* to_string(TriBool t);

namespace rounding {

// Lower/upper bounds of the exact a+b, a*b, a/b, sqrt(a).
inline double add_down(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return err < 0.0 ? next_down(s) : s;
}
inline double add_up(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return err > 0.0 ? next_up(s) : s;
}

// Below this magnitude an FMA residual may itself be rounded, so the
// residual sign is not trusted and the result is stepped unconditionally.
inline constexpr double kTinyProduct = 0x1p-960;

inline double mul_down(double a, double b) {
    const double p = a * b;
    if (std::fabs(p) < kTinyProduct) return next_down(p);
    return std::fma(a, b, -p) < 0.0 ? next_down(p) : p;
}
inline double mul_up(double a, double b) {
    const double p = a * b;
    if (std::fabs(p) < kTinyProduct) return next_up(p);
    return std::fma(a, b, -p) > 0.0 ? next_up(p) : p;
}
inline double div_down(double a, double b) {
    const double q = a / b;
    if (std::fabs(q) < kTinyProduct || std::fabs(a) < kTinyProduct) return next_down(q);
    const double r = std::fma(-q, b, a);
    const bool below = b > 0.0 ? r < 0.0 : r > 0.0;
    return below ? next_down(q) : q;
}
inline double div_up(double a, double b) {
    const double q = a / b;
    if (std::fabs(q) < kTinyProduct || std::fabs(a) < kTinyProduct) return next_up(q);
    const double r = std::fma(-q, b, a);
    const bool above = b > 0.0 ? r > 0.0 : r < 0.0;
    return above ? next_up(q) : q;
}
inline double sqrt_down(double a) {
    const double r = std::sqrt(a);
    if (r < kTinyProduct) return r == 0.0 ? 0.0 : next_down(r);
    return std::fma(-r, r, a) < 0.0 ? next_down(r) : r;
}
inline double sqrt_up(double a) {
    const double r = std::sqrt(a);
    if (r < kTinyProduct) return a == 0.0 ? 0.0 : next_up(r);
    return std::fma(-r, r, a) > 0.0 ? next_up(r) : r;
}

// The library arccos is not correctly rounded; its result is inflated by
// this many units in the last place on each side.
inline constexpr int kTranscendentalUlps = 2;

}  // namespace rounding

class Interval {
public:
    constexpr Interval() = default;
    constexpr Interval(double x) : lo_(x), hi_(x) {}  // NOLINT: implicit by design of the scalar interface
    Interval(double lo, double hi);

    static constexpr Interval entire() {
        Interval r;
        r.lo_ = -std::numeric_limits<double>::infinity();
        r.hi_ = std::numeric_limits<double>::infinity();
        return r;
    }
    // Builds [lo, hi] without validation; used by the kernels below.
    static constexpr Interval unchecked(double lo, double hi) {
        Interval r;
        r.lo_ = lo;
        r.hi_ = hi;
        return r;
    }
    // Smallest interval certainly containing the decimal num/den.
    static Interval ratio(double num, double den);

    constexpr double lo() const { return lo_; }
    constexpr double hi() const { return hi_; }
    double mid() const;
    double width() const { return hi_ - lo_; }
    bool is_finite() const { return std::isfinite(lo_) && std::isfinite(hi_); }
    constexpr bool is_degenerate() const { return lo_ == hi_; }
    constexpr bool contains(double x) const { return lo_ <= x && x <= hi_; }
    constexpr bool subset_of(const Interval& o) const { return o.lo_ <= lo_ && hi_ <= o.hi_; }

    friend constexpr bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const Interval& x);
std::string to_string(const Interval& x);

inline Interval hull(const Interval& a, const Interval& b) {
    if (!a.is_finite() || !b.is_finite()) return Interval::entire();
    return Interval::unchecked(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

// Non-throwing kernels. Domain violations and non-finite operands yield the
// whole line, which poisons every result computed from it.
namespace total {

inline Interval add(const Interval& a, const Interval& b) {
    if (!a.is_finite() || !b.is_finite()) return Interval::entire();
    const Interval r = Interval::unchecked(rounding::add_down(a.lo(), b.lo()), rounding::add_up(a.hi(), b.hi()));
    return r.is_finite() ? r : Interval::entire();
}

inline Interval neg(const Interval& a) {
    if (!a.is_finite()) return Interval::entire();
    return Interval::unchecked(-a.hi(), -a.lo());
}

inline Interval sub(const Interval& a, const Interval& b) {
    if (!a.is_finite() || !b.is_finite()) return Interval::entire();
    const Interval r = Interval::unchecked(rounding::add_down(a.lo(), -b.hi()), rounding::add_up(a.hi(), -b.lo()));
    return r.is_finite() ? r : Interval::entire();
}

inline Interval mul(const Interval& a, const Interval& b) {
    if (!a.is_finite() || !b.is_finite()) return Interval::entire();
    double lo = 0.0;
    double hi = 0.0;
    if (a.lo() >= 0.0 && b.lo() >= 0.0) {
        lo = rounding::mul_down(a.lo(), b.lo());
        hi = rounding::mul_up(a.hi(), b.hi());
    } else {
        const double ps[4][2] = {{a.lo(), b.lo()}, {a.lo(), b.hi()}, {a.hi(), b.lo()}, {a.hi(), b.hi()}};
        lo = std::numeric_limits<double>::infinity();
        hi = -std::numeric_limits<double>::infinity();
        for (const auto& p : ps) {
            lo = std::min(lo, rounding::mul_down(p[0], p[1]));
            hi = std::max(hi, rounding::mul_up(p[0], p[1]));
        }
    }
    const Interval r = Interval::unchecked(lo, hi);
    return r.is_finite() ? r : Interval::entire();
}

inline Interval div(const Interval& a, const Interval& b) {
    if (!a.is_finite() || !b.is_finite() || b.contains(0.0)) return Interval::entire();
    const double qs[4][2] = {{a.lo(), b.lo()}, {a.lo(), b.hi()}, {a.hi(), b.lo()}, {a.hi(), b.hi()}};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& q : qs) {
        lo = std::min(lo, rounding::div_down(q[0], q[1]));
        hi = std::max(hi, rounding::div_up(q[0], q[1]));
    }
    const Interval r = Interval::unchecked(lo, hi);
    return r.is_finite() ? r : Interval::entire();
}

inline Interval square(const Interval& a) {
    if (!a.is_finite()) return Interval::entire();
    double lo = 0.0;
    double hi = 0.0;
    if (a.lo() >= 0.0) {
        lo = rounding::mul_down(a.lo(), a.lo());
        hi = rounding::mul_up(a.hi(), a.hi());
    } else if (a.hi() <= 0.0) {
        lo = rounding::mul_down(a.hi(), a.hi());
        hi = rounding::mul_up(a.lo(), a.lo());
    } else {
        hi = std::max(rounding::mul_up(a.lo(), a.lo()), rounding::mul_up(a.hi(), a.hi()));
    }
    const Interval r = Interval::unchecked(std::max(lo, 0.0), hi);
    return r.is_finite() ? r : Interval::entire();
}

// Clamps to the domain x >= 0; the whole line when a lies entirely below 0.
inline Interval sqrt(const Interval& a) {
    if (!a.is_finite() || a.hi() < 0.0) return Interval::entire();
    return Interval::unchecked(a.lo() <= 0.0 ? 0.0 : rounding::sqrt_down(a.lo()), rounding::sqrt_up(a.hi()));
}

// Clamps to [-1, 1]; the whole line when a misses that range.
inline Interval acos(const Interval& a) {
    if (!a.is_finite() || a.hi() < -1.0 || a.lo() > 1.0) return Interval::entire();
    const double x_lo = std::max(a.lo(), -1.0);
    const double x_hi = std::min(a.hi(), 1.0);
    double lo = std::acos(x_hi);
    double hi = std::acos(x_lo);
    for (int i = 0; i < rounding::kTranscendentalUlps; ++i) {
        lo = next_down(lo);
        hi = next_up(hi);
    }
    constexpr double kPiUp = 0x1.921fb54442d19p+1;  // next double above pi
    return Interval::unchecked(std::max(lo, 0.0), std::min(hi, kPiUp));
}

inline Interval min(const Interval& a, const Interval& b) {
    if (!a.is_finite() || !b.is_finite()) return Interval::entire();
    return Interval::unchecked(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

inline Interval max(const Interval& a, const Interval& b) {
    if (!a.is_finite() || !b.is_finite()) return Interval::entire();
    return Interval::unchecked(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

inline Interval abs(const Interval& a) {
    if (!a.is_finite()) return Interval::entire();
    if (a.lo() >= 0.0) return a;
    if (a.hi() <= 0.0) return neg(a);
    return Interval::unchecked(0.0, std::max(-a.lo(), a.hi()));
}

}  // namespace total

// Throwing surface. Division by an interval containing zero and sqrt/acos
// on intervals disjoint from their domain raise DomainError.
inline Interval operator+(const Interval& a, const Interval& b) { return total::add(a, b); }
inline Interval operator-(const Interval& a, const Interval& b) { return total::sub(a, b); }
inline Interval operator*(const Interval& a, const Interval& b) { return total::mul(a, b); }
inline Interval operator-(const Interval& a) { return total::neg(a); }
Interval operator/(const Interval& a, const Interval& b);

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }
inline Interval& operator/=(Interval& a, const Interval& b) { return a = a / b; }

Interval sqrt(const Interval& a);
Interval acos(const Interval& a);
inline Interval square(const Interval& a) { return total::square(a); }
inline Interval min(const Interval& a, const Interval& b) { return total::min(a, b); }
inline Interval max(const Interval& a, const Interval& b) { return total::max(a, b); }
inline Interval abs(const Interval& a) { return total::abs(a); }

inline TriBool leq(const Interval& a, const Interval& b) {
    if (!a.is_finite() || !b.is_finite()) return TriBool::Unknown;
    if (a.hi() <= b.lo()) return TriBool::CertainlyTrue;
    if (a.lo() > b.hi()) return TriBool::CertainlyFalse;
    return TriBool::Unknown;
}
inline TriBool lt(const Interval& a, const Interval& b) {
    if (!a.is_finite() || !b.is_finite()) return TriBool::Unknown;
    if (a.hi() < b.lo()) return TriBool::CertainlyTrue;
    if (a.lo() >= b.hi()) return TriBool::CertainlyFalse;
    return TriBool::Unknown;
}
inline TriBool geq(const Interval& a, const Interval& b) { return leq(b, a); }
inline TriBool gt(const Interval& a, const Interval& b) { return lt(b, a); }

}  // namespace sqdisk
