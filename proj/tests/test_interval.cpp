#include <doctest.h>

#include <mpfr.h>

#include <cmath>
#include <random>

#include "sqdisk/interval.hpp"
#include "sqdisk/scalar.hpp"

using namespace sqdisk;

namespace {

// 256-bit reference value with directed rounding.
struct Big {
    mpfr_t v;
    Big() { mpfr_init2(v, 256); }
    explicit Big(double x) : Big() { mpfr_set_d(v, x, MPFR_RNDN); }
    ~Big() { mpfr_clear(v); }
    Big(const Big&) = delete;
    Big& operator=(const Big&) = delete;
};

// true iff lo <= exact value <= hi, with the exact value bracketed by
// down- and up-rounded MPFR results.
template <class Op>
bool encloses(const Interval& r, Op op) {
    Big down, up;
    op(down.v, MPFR_RNDD);
    op(up.v, MPFR_RNDU);
    return mpfr_cmp_d(down.v, r.lo()) >= 0 && mpfr_cmp_d(up.v, r.hi()) <= 0;
}

double ulp(double x) { return next_up(std::fabs(x)) - std::fabs(x); }

}  // namespace

TEST_CASE("exact integer endpoints") {
    const Interval s = Interval(1, 2) + Interval(3, 4);
    CHECK(s.lo() <= 4.0);
    CHECK(s.hi() >= 6.0);
    CHECK(s.lo() >= next_down(4.0));
    CHECK(s.hi() <= next_up(6.0));

    // endpoint products are 3, -4, -6, 8
    const Interval p = Interval(-1, 2) * Interval(-3, 4);
    CHECK(p.lo() <= -6.0);
    CHECK(p.hi() >= 8.0);
    CHECK(p.lo() >= next_down(-6.0));
    CHECK(p.hi() <= next_up(8.0));
}

TEST_CASE("0.1 + 0.2 encloses 3/10") {
    const Interval r = Interval(0.1) + Interval(0.2);
    CHECK(r.lo() < r.hi());
    // 3/10 is not a double; compare against the exact rational in MPFR.
    Big tenth3;
    mpfr_set_ui(tenth3.v, 3, MPFR_RNDN);
    mpfr_div_ui(tenth3.v, tenth3.v, 10, MPFR_RNDN);
    CHECK(mpfr_cmp_d(tenth3.v, r.lo()) > 0);
    CHECK(mpfr_cmp_d(tenth3.v, r.hi()) < 0);
    // the exact sum of the two doubles is enclosed as well
    CHECK(encloses(r, [](mpfr_t out, mpfr_rnd_t rnd) {
        Big a(0.1), b(0.2);
        mpfr_add(out, a.v, b.v, rnd);
    }));
}

TEST_CASE("division") {
    const Interval q = Interval(1, 2) / Interval(4, 8);
    CHECK(q.contains(0.125));
    CHECK(q.contains(0.5));
    CHECK_THROWS_AS(Interval(1, 2) / Interval(-1, 1), DomainError);
    CHECK_THROWS_AS(Interval(1, 2) / Interval(0, 1), DomainError);
    CHECK(!total::div(Interval(1), Interval(-1, 1)).is_finite());
}

TEST_CASE("sqrt") {
    const Interval a = sqrt(Interval(4, 9));
    CHECK(a.lo() <= 2.0);
    CHECK(a.hi() >= 3.0);
    CHECK(a.width() <= 3.0 * ulp(3.0) + 1.0);

    const Interval z = sqrt(Interval(0, 0));
    CHECK(z.lo() == 0.0);
    CHECK(z.hi() == 0.0);

    const Interval r2 = sqrt(Interval(2));
    CHECK(encloses(r2, [](mpfr_t out, mpfr_rnd_t rnd) {
        Big two(2.0);
        mpfr_sqrt(out, two.v, rnd);
    }));
    CHECK(r2.width() <= 4.0 * ulp(std::sqrt(2.0)));

    CHECK_THROWS_AS(sqrt(Interval(-2, -1)), DomainError);
    // partially out of domain: clamped
    const Interval c = sqrt(Interval(-1, 4));
    CHECK(c.lo() == 0.0);
    CHECK(c.hi() >= 2.0);
}

TEST_CASE("acos") {
    const Interval one = acos(Interval(1));
    CHECK(one.lo() == 0.0);
    CHECK(one.hi() <= 1e-15);

    const Interval m1 = acos(Interval(-1));
    CHECK(encloses(m1, [](mpfr_t out, mpfr_rnd_t rnd) { mpfr_const_pi(out, rnd); }));

    const Interval h = acos(Interval(0, 0.5));
    // [pi/3, pi/2]
    Big third, half;
    mpfr_const_pi(third.v, MPFR_RNDD);
    mpfr_div_ui(third.v, third.v, 3, MPFR_RNDD);
    mpfr_const_pi(half.v, MPFR_RNDU);
    mpfr_div_ui(half.v, half.v, 2, MPFR_RNDU);
    CHECK(mpfr_cmp_d(third.v, h.lo()) >= 0);
    CHECK(mpfr_cmp_d(half.v, h.hi()) <= 0);

    CHECK_THROWS_AS(acos(Interval(1.5, 2)), DomainError);
    CHECK_THROWS_AS(acos(Interval(-3, -1.01)), DomainError);
}

TEST_CASE("min max square abs") {
    const Interval a = max(Interval(0, 1), Interval(2, 3));
    CHECK(a.lo() == 2.0);
    CHECK(a.hi() == 3.0);
    const Interval s = square(Interval(-2, 1));
    CHECK(s.lo() == 0.0);
    CHECK(s.hi() >= 4.0);
    CHECK(s.hi() <= next_up(4.0));
    const Interval m = min(Interval(-1, 5), Interval(0, 2));
    CHECK(m.lo() == -1.0);
    CHECK(m.hi() == 2.0);
    const Interval ab = abs(Interval(-3, 1));
    CHECK(ab.lo() == 0.0);
    CHECK(ab.hi() == 3.0);
    const Interval n = -Interval(1, 2);
    CHECK(n.lo() == -2.0);
    CHECK(n.hi() == -1.0);
}

TEST_CASE("comparisons") {
    CHECK(leq(Interval(1, 2), Interval(3, 4)) == TriBool::CertainlyTrue);
    CHECK(leq(Interval(3, 4), Interval(1, 2)) == TriBool::CertainlyFalse);
    CHECK(leq(Interval(1, 3), Interval(2, 4)) == TriBool::Unknown);
    CHECK(leq(Interval(1, 2), Interval(2, 3)) == TriBool::CertainlyTrue);
    CHECK(lt(Interval(1, 2), Interval(2, 3)) == TriBool::Unknown);
    CHECK(lt(Interval(2, 3), Interval(1, 2)) == TriBool::CertainlyFalse);
    CHECK(gt(Interval(5), Interval(1, 2)) == TriBool::CertainlyTrue);
    CHECK(geq(Interval::entire(), Interval(0)) == TriBool::Unknown);
}

TEST_CASE("TriBool logic") {
    const TriBool T = TriBool::CertainlyTrue, F = TriBool::CertainlyFalse, U = TriBool::Unknown;
    CHECK((T && U) == U);
    CHECK((F && U) == F);
    CHECK((T || U) == T);
    CHECK((F || U) == U);
    CHECK(!U == U);
    CHECK(!T == F);
}

TEST_CASE("constructor rejects reversed endpoints") {
    CHECK_THROWS_AS(Interval(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(Interval(std::nan(""), 1), std::invalid_argument);
}

TEST_CASE("ratio encloses the rational") {
    const Interval r = Interval::ratio(1, 3);
    Big third;
    mpfr_set_ui(third.v, 1, MPFR_RNDN);
    mpfr_div_ui(third.v, third.v, 3, MPFR_RNDN);
    CHECK(mpfr_cmp_d(third.v, r.lo()) > 0);
    CHECK(mpfr_cmp_d(third.v, r.hi()) < 0);
}

TEST_CASE("if_le hull on unknown and error branch") {
    const Interval x(0.5, 1.5);
    const Interval r = if_le(x, Interval(1.0), [&] { return Interval(0.0); }, [&] { return Interval(10.0); });
    CHECK(r.lo() == 0.0);
    CHECK(r.hi() == 10.0);
    const Interval e = if_le(x, Interval(1.0), [&] { return Interval(0.0); }, [&]() -> Interval { throw DomainError("x"); });
    CHECK(!e.is_finite());
    const Interval t = if_le(Interval(0, 0.5), Interval(1.0), [&] { return Interval(3.0); }, [&] { return Interval(10.0); });
    CHECK(t.lo() == 3.0);
    CHECK(t.hi() == 3.0);
}

TEST_CASE("subnormal products stay enclosed") {
    const double tiny = 0x1p-1070;
    const Interval p = Interval(tiny) * Interval(0.75);
    CHECK(p.contains(0x3p-1072));
    CHECK(p.lo() < p.hi());
    const Interval q = Interval(0x1p-600) * Interval(0x1p-600);
    CHECK(q.lo() <= 0.0);
    CHECK(q.hi() > 0.0);
}

TEST_CASE("containment fuzz") {
    std::mt19937_64 rng(20261015);
    std::uniform_real_distribution<double> U(-4.0, 4.0);
    std::uniform_real_distribution<double> V(0.0, 1.0);
    auto rand_iv = [&] {
        double a = U(rng), b = U(rng);
        if (a > b) std::swap(a, b);
        return Interval(a, b);
    };
    auto inside = [&](const Interval& x) { return x.lo() + V(rng) * (x.hi() - x.lo()); };
    int bad = 0;
    for (int i = 0; i < 20000; ++i) {
        const Interval a = rand_iv(), b = rand_iv();
        Big x(inside(a)), y(inside(b));
        const int op = i % 8;
        Big down, up;
        Interval r;
        switch (op) {
        case 0: r = a + b; mpfr_add(down.v, x.v, y.v, MPFR_RNDD); mpfr_add(up.v, x.v, y.v, MPFR_RNDU); break;
        case 1: r = a - b; mpfr_sub(down.v, x.v, y.v, MPFR_RNDD); mpfr_sub(up.v, x.v, y.v, MPFR_RNDU); break;
        case 2: r = a * b; mpfr_mul(down.v, x.v, y.v, MPFR_RNDD); mpfr_mul(up.v, x.v, y.v, MPFR_RNDU); break;
        case 3:
            if (b.contains(0.0)) continue;
            r = a / b; mpfr_div(down.v, x.v, y.v, MPFR_RNDD); mpfr_div(up.v, x.v, y.v, MPFR_RNDU); break;
        case 4: {
            const Interval pa = abs(a);
            Big px(inside(pa));
            r = sqrt(pa); mpfr_sqrt(down.v, px.v, MPFR_RNDD); mpfr_sqrt(up.v, px.v, MPFR_RNDU); break;
        }
        case 5: {
            const Interval c = Interval(std::max(a.lo() / 4.0, -1.0), std::min(a.hi() / 4.0, 1.0));
            Big cx(inside(c));
            r = acos(c); mpfr_acos(down.v, cx.v, MPFR_RNDD); mpfr_acos(up.v, cx.v, MPFR_RNDU); break;
        }
        case 6: r = square(a); mpfr_sqr(down.v, x.v, MPFR_RNDD); mpfr_sqr(up.v, x.v, MPFR_RNDU); break;
        default: r = max(a, b); mpfr_max(down.v, x.v, y.v, MPFR_RNDD); mpfr_set(up.v, down.v, MPFR_RNDU); break;
        }
        if (mpfr_cmp_d(down.v, r.lo()) < 0 || mpfr_cmp_d(up.v, r.hi()) > 0) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("monotone inclusion") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
        double a = U(rng), b = U(rng), c = U(rng), d = U(rng);
        if (a > b) std::swap(a, b);
        if (c > d) std::swap(c, d);
        const Interval x(a, b), y(c, d);
        const Interval xs(a + (b - a) / 3, b - (b - a) / 3), ys(c + (d - c) / 4, d);
        CHECK((xs + ys).subset_of(x + y));
        CHECK((xs * ys).subset_of(x * y));
        CHECK(square(xs).subset_of(square(x)));
        CHECK(min(xs, ys).subset_of(min(x, y)));
    }
}

TEST_CASE("comparison soundness") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    std::uniform_real_distribution<double> V(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        double a = U(rng), b = U(rng), c = U(rng), d = U(rng);
        if (a > b) std::swap(a, b);
        if (c > d) std::swap(c, d);
        const TriBool t = leq(Interval(a, b), Interval(c, d));
        for (int k = 0; k < 10; ++k) {
            const double x = a + V(rng) * (b - a), y = c + V(rng) * (d - c);
            if (t == TriBool::CertainlyTrue) CHECK(x <= y);
            if (t == TriBool::CertainlyFalse) CHECK(x > y);
        }
    }
}
