#include "sqdisk/interval.hpp"

#include <cstdio>
#include <ostream>

namespace sqdisk {

const char* to_string(TriBool t) {
    switch (t) {
    case TriBool::CertainlyFalse: return "CertainlyFalse";
    case TriBool::CertainlyTrue: return "CertainlyTrue";
    default: return "Unknown";
    }
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
        throw std::invalid_argument("interval with lo > hi or NaN endpoint");
    }
}

Interval Interval::ratio(double num, double den) {
    return total::div(Interval(num), Interval(den));
}

double Interval::mid() const {
    if (!is_finite()) return 0.0;
    const double m = lo_ + 0.5 * (hi_ - lo_);
    return std::clamp(m, lo_, hi_);
}

std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << to_string(x); }

std::string to_string(const Interval& x) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", x.lo(), x.hi());
    return buf;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains(0.0)) throw DomainError("interval division by a range containing zero");
    return total::div(a, b);
}

Interval sqrt(const Interval& a) {
    if (a.hi() < 0.0) throw DomainError("sqrt of a negative interval");
    return total::sqrt(a);
}

Interval acos(const Interval& a) {
    if (a.hi() < -1.0 || a.lo() > 1.0) throw DomainError("acos outside [-1, 1]");
    return total::acos(a);
}

}  // namespace sqdisk
