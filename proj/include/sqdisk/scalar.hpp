#pragma once

// Generic scalar vocabulary shared by the real and interval instantiations
// of the geometry and bound formulas. A third instantiation, the expression
// DAG in expr.hpp, supplies its own overloads found by argument-dependent
// lookup.

#include <algorithm>
#include <cmath>
#include <concepts>

#include "sqdisk/interval.hpp"

namespace sqdisk {

class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline double sqrt(double x) {
    if (x < 0.0) throw DomainError("sqrt of a negative number");
    return std::sqrt(x);
}
inline double acos(double x) {
    if (x < -1.0 || x > 1.0) throw DomainError("acos outside [-1, 1]");
    return std::acos(x);
}
inline double square(double x) { return x * x; }
inline double min(double a, double b) { return std::min(a, b); }
inline double max(double a, double b) { return std::max(a, b); }

// A constant known as an enclosure plus its nearest double.
template <class S>
S lift(const Interval& enclosure, double point);

template <>
inline double lift<double>(const Interval&, double point) { return point; }

template <>
inline Interval lift<Interval>(const Interval& enclosure, double) { return enclosure; }

// num/den, e.g. ratio<S>(83, 100) for the decimal 0.83.
template <class S>
S ratio(double num, double den) {
    return lift<S>(Interval::ratio(num, den), num / den);
}

// sqrt(num/den) as a constant.
template <class S>
S sqrt_ratio(double num, double den) {
    return lift<S>(total::sqrt(Interval::ratio(num, den)), std::sqrt(num / den));
}

// Piecewise selection: then_fn() where a <= b (resp. a < b), else else_fn().
// On intervals with an undecided comparison both branches are evaluated
// and hulled; a branch raising DomainError contributes the whole line.
template <class F, class G>
auto if_le(double a, double b, F&& then_fn, G&& else_fn) -> double {
    return a <= b ? then_fn() : else_fn();
}
template <class F, class G>
auto if_lt(double a, double b, F&& then_fn, G&& else_fn) -> double {
    return a < b ? then_fn() : else_fn();
}

namespace detail {
template <class F>
Interval guarded(F&& fn) {
    try {
        return fn();
    } catch (const DomainError&) {
        return Interval::entire();
    }
}
inline Interval select(TriBool t, auto&& then_fn, auto&& else_fn) {
    if (t == TriBool::CertainlyTrue) return then_fn();
    if (t == TriBool::CertainlyFalse) return else_fn();
    return hull(guarded(then_fn), guarded(else_fn));
}
}  // namespace detail

template <class F, class G>
auto if_le(const Interval& a, const Interval& b, F&& then_fn, G&& else_fn) -> Interval {
    return detail::select(leq(a, b), then_fn, else_fn);
}
template <class F, class G>
auto if_lt(const Interval& a, const Interval& b, F&& then_fn, G&& else_fn) -> Interval {
    return detail::select(lt(a, b), then_fn, else_fn);
}

// Rejects arguments certainly outside [lo, hi]. Intervals straddling the
// boundary pass and are clamped by the operations that follow.
template <class S>
void domain_check(const S&, double, double, const char*) {}
inline void domain_check(double x, double lo, double hi, const char* what) {
    if (!(lo <= x && x <= hi)) throw DomainError(what);
}
inline void domain_check(const Interval& x, double lo, double hi, const char* what) {
    if (x.hi() < lo || x.lo() > hi) throw DomainError(what);
}

}  // namespace sqdisk
