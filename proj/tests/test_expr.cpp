#include <doctest.h>

#include <cmath>
#include <random>

#include "sqdisk/bounds.hpp"
#include "sqdisk/expr.hpp"

using namespace sqdisk;
using expr::Expr;
using expr::Graph;
using expr::GraphScope;
using expr::Op;

TEST_CASE("hash consing shares identical nodes") {
    Graph g;
    GraphScope scope(g);
    const Expr x = Expr::variable(0);
    const Expr a = sqrt(x + 1.0);
    const std::size_t n = g.size();
    const Expr b = sqrt(x + 1.0);
    CHECK(a.id() == b.id());
    CHECK(g.size() == n);
    CHECK(min(x, x).id() == x.id());
}

TEST_CASE("constant folding") {
    Graph g;
    GraphScope scope(g);
    const Expr c = sqrt(Expr(2.0)) * 3.0;
    CHECK(g.node(c.id()).op == Op::Const);
    CHECK(g.node(c.id()).value.contains(3.0 * std::sqrt(2.0)));
    CHECK(g.node(c.id()).point == doctest::Approx(3.0 * std::sqrt(2.0)));
}

TEST_CASE("select folds on certain conditions") {
    Graph g;
    GraphScope scope(g);
    const Expr x = Expr::variable(0);
    const Expr y = Expr::variable(1);
    const Expr s = expr::if_le(Expr(1.0), Expr(2.0), [&] { return x; }, [&] { return y; });
    CHECK(s.id() == x.id());
    const Expr same = expr::if_le(x, y, [&] { return x + 1.0; }, [&] { return x + 1.0; });
    CHECK(g.node(same.id()).op == Op::Add);
}

TEST_CASE("interval evaluation hulls undecided branches") {
    Graph g;
    GraphScope scope(g);
    const Expr x = Expr::variable(0);
    const Expr s = expr::if_le(x, Expr(1.0), [&] { return Expr(0.0); }, [&] { return x * 10.0; });
    std::vector<Interval> out(g.size());
    std::vector<Interval> box{Interval(0.5, 2.0)};
    g.eval_interval(box, out, 0, g.size());
    CHECK(out[s.id()].lo() <= 0.0);
    CHECK(out[s.id()].hi() >= 20.0);
    box[0] = Interval(0.0, 0.5);
    g.eval_interval(box, out, 0, g.size());
    CHECK(out[s.id()].lo() == 0.0);
    CHECK(out[s.id()].hi() == 0.0);
}

TEST_CASE("domain errors") {
    Graph g;
    GraphScope scope(g);
    const Expr x = Expr::variable(0);
    const Expr r = sqrt(x);
    const Expr d = 1.0 / x;
    std::vector<double> v(g.size());
    const double p[] = {-1.0};
    g.eval_real(p, v);
    CHECK(std::isnan(v[r.id()]));
    std::vector<Interval> out(g.size());
    const Interval box[] = {Interval(-1.0, 1.0)};
    g.eval_interval(box, out, 0, g.size());
    CHECK(!out[d.id()].is_finite());
    CHECK(out[r.id()].contains(0.0));
    const Interval neg[] = {Interval(-2.0, -1.0)};
    g.eval_interval(neg, out, 0, g.size());
    CHECK(!out[r.id()].is_finite());
}

TEST_CASE("graph evaluation matches direct generic evaluation") {
    Graph g;
    GraphScope scope(g);
    const Expr s1 = Expr::variable(0);
    const Expr h1 = Expr::variable(1);
    const Expr h2 = Expr::variable(2);
    const Expr sn = Expr::variable(3);
    const Expr f = F_SC(s1, std::vector<Expr>{h1, h2}, sn, true);
    const Expr m = F_MSC1(s1, h1, h2, sn, sn);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<Interval> out(g.size());
    std::vector<double> real(g.size());
    int n = 0;
    while (n < 5000) {
        const double a = 0.295 + U(rng) * (std::sqrt(1.6) - 0.295);
        const double b = a * U(rng), c = b * U(rng), d = c * U(rng);
        if (T_inv(a) - b - c < -1.0) continue;
        ++n;
        const double p[] = {a, b, c, d};
        g.eval_real(p, real);
        const double direct = F_SC(a, std::vector<double>{b, c}, d, true);
        CHECK(real[f.id()] == doctest::Approx(direct).epsilon(1e-12));

        const Interval box[] = {Interval(a), Interval(b), Interval(c), Interval(d)};
        g.eval_interval(box, out, 0, g.size());
        CHECK(out[f.id()].contains(direct));
        if (T_inv(a) - b - c - d >= -1.0 && T_inv(a) - b - c - d <= 0.0) {
            CHECK(out[m.id()].contains(F_MSC1(a, b, c, d, d)));
        }
    }
}

TEST_CASE("segment area node is monotone-exact") {
    Graph g;
    GraphScope scope(g);
    const Expr t = Expr::variable(0);
    const Expr a = segment_area_below(t);
    std::vector<Interval> out(g.size());
    const Interval box[] = {Interval(-0.3, 0.4)};
    g.eval_interval(box, out, 0, g.size());
    const Interval r = out[a.id()];
    CHECK(r.contains(segment_area_below(-0.3)));
    CHECK(r.contains(segment_area_below(0.4)));
    CHECK(r.width() < segment_area_below(-0.3) - segment_area_below(0.4) + 1e-12);
}
