#include <algorithm>
#include <cmath>

#include "sqdisk/bounds.hpp"
#include "sqdisk/prover.hpp"

namespace sqdisk {

namespace {

using expr::Expr;

Interval s1_range() {
    return Interval::unchecked(Interval::ratio(295, 1000).lo(), total::sqrt(Interval::ratio(8, 5)).hi());
}

Interval side_range() { return Interval::unchecked(0.0, total::sqrt(Interval::ratio(8, 5)).hi()); }

Expr eight_fifths() { return ratio<Expr>(8, 5); }

void require_s1_range(SystemBuilder& b, const Expr& s1) {
    b.require(ratio<Expr>(295, 1000), Rel::Le, s1);
    b.require(s1, Rel::Le, sqrt_ratio<Expr>(8, 5));
}

ConstraintSystem lemma_tp(int which) {
    SystemBuilder b(which == 1 ? "LEMMA_TP1" : "LEMMA_TP2");
    const Expr s1 = b.var("s1", s1_range());
    require_s1_range(b, s1);
    const Expr t = T_inv(s1);
    const Expr ell1 = sqrt(1.0 - square(t)) - 0.5 * s1;
    b.require(ell1, Rel::Le, s1);
    const auto [f1, f2] = F_TP(s1);
    return b.conclude(which == 1 ? f1 : f2, Rel::Le, Expr(1.0));
}

// s1 >= h1 >= ... >= hk >= sn > 0 and the range of s1.
struct ChainVars {
    Expr s1;
    std::vector<Expr> h;
    Expr sn;
};

ChainVars chain(SystemBuilder& b, int k) {
    ChainVars c;
    c.s1 = b.var("s1", s1_range());
    for (int i = 1; i <= k; ++i) c.h.push_back(b.var("h" + std::to_string(i), side_range()));
    c.sn = b.var("sn", side_range());
    require_s1_range(b, c.s1);
    Expr prev = c.s1;
    for (const Expr& h : c.h) {
        b.require(h, Rel::Le, prev);
        prev = h;
    }
    b.require(c.sn, Rel::Le, prev);
    return c;
}

ConstraintSystem lemma_sc1() {
    SystemBuilder b("LEMMA_SC1");
    const ChainVars c = chain(b, 1);
    const Expr& s1 = c.s1;
    const Expr& h1 = c.h[0];
    const Expr& sn = c.sn;
    const Expr t = T_inv(s1);
    const Expr z = z_below(s1, c.h);
    b.require(Expr(0.0), Rel::Lt, z);
    b.require(z, Rel::Lt, sn);
    b.require(h1, Rel::Le, t + 1.0);
    const Expr w1 = chord_width(t, h1);
    b.require_any({b.atom(s1, Rel::Gt, sqrt_ratio<Expr>(1, 2)), b.atom(w1, Rel::Lt, 2.0 * h1),
                   b.atom(square(s1) + square(h1) + 2.0 * square(sn), Rel::Lt, ratio<Expr>(39, 25))});
    return b.conclude(F_SC(s1, c.h, sn, true), Rel::Gt, eight_fifths());
}

ConstraintSystem lemma_sc(int k, bool above_sigma) {
    SystemBuilder b("LEMMA_SC" + std::to_string(k) + (above_sigma ? "_SIGMA" : ""));
    const ChainVars c = chain(b, k);
    const Expr t = T_inv(c.s1);
    Expr sum(0.0);
    for (const Expr& h : c.h) sum = sum + h;
    b.require(sum, Rel::Le, 1.0 + t);
    const Expr z = z_below(c.s1, c.h);
    b.require(Expr(0.0), Rel::Lt, z);
    b.require(z, Rel::Lt, c.sn);
    if (above_sigma) b.require(sigma(c.s1), Rel::Lt, c.sn);
    return b.conclude(F_SC(c.s1, c.h, c.sn, !above_sigma), Rel::Gt, eight_fifths());
}

ConstraintSystem lemma_msc_neg() {
    SystemBuilder b("LEMMA_MSC_NEG");
    const Expr s1 = b.var("s1", s1_range());
    std::vector<Expr> h;
    for (int i = 1; i <= 4; ++i) h.push_back(b.var("h" + std::to_string(i), side_range()));
    require_s1_range(b, s1);
    b.require(h[0], Rel::Le, s1);
    for (int i = 1; i < 4; ++i) b.require(h[i], Rel::Le, h[i - 1]);
    b.require(Expr(0.0), Rel::Lt, h[3]);
    const Expr H4 = 1.0 + T_inv(s1) - h[0] - h[1] - h[2];
    b.require(Expr(0.0), Rel::Le, H4);
    b.require(H4, Rel::Le, Expr(1.0));
    return b.conclude(F_MSC1(s1, h[0], h[1], h[2], h[3]), Rel::Gt, eight_fifths());
}

ConstraintSystem lemma_msc_pos() {
    SystemBuilder b("LEMMA_MSC_POS");
    const Expr s1 = b.var("s1", s1_range());
    const Expr h1 = b.var("h1", side_range());
    const Expr h2 = b.var("h2", side_range());
    const Expr h3 = b.var("h3", side_range());
    const Expr hj = b.var("hj1", side_range());
    const Expr dy = b.var("dy", side_range());
    require_s1_range(b, s1);
    b.require(h1, Rel::Le, s1);
    b.require(h2, Rel::Le, h1);
    b.require(h3, Rel::Le, h2);
    b.require(hj, Rel::Le, h3);
    b.require(Expr(0.0), Rel::Lt, T_inv(s1) - h1 - h2 - h3);
    b.require(dy, Rel::Le, h3);
    return b.conclude(F_MSC2(s1, h1, h2, h3, hj, dy), Rel::Gt, eight_fifths());
}

}  // namespace

std::vector<ConstraintSystem> lemma_catalog() {
    std::vector<ConstraintSystem> out;
    out.push_back(lemma_tp(1));
    out.push_back(lemma_tp(2));
    out.push_back(lemma_sc1());
    for (int k = 2; k <= 4; ++k) out.push_back(lemma_sc(k, false));
    for (int k = 5; k <= 7; ++k) out.push_back(lemma_sc(k, true));
    out.push_back(lemma_msc_neg());
    out.push_back(lemma_msc_pos());
    return out;
}

std::vector<std::string> lemma_names() {
    return {"LEMMA_TP1", "LEMMA_TP2", "LEMMA_SC1", "LEMMA_SC2", "LEMMA_SC3", "LEMMA_SC4",
            "LEMMA_SC5_SIGMA", "LEMMA_SC6_SIGMA", "LEMMA_SC7_SIGMA", "LEMMA_MSC_NEG", "LEMMA_MSC_POS"};
}

std::optional<ConstraintSystem> find_lemma(const std::string& name) {
    if (name == "LEMMA_TP1") return lemma_tp(1);
    if (name == "LEMMA_TP2") return lemma_tp(2);
    if (name == "LEMMA_SC1") return lemma_sc1();
    for (int k = 2; k <= 4; ++k) {
        if (name == "LEMMA_SC" + std::to_string(k)) return lemma_sc(k, false);
    }
    for (int k = 5; k <= 7; ++k) {
        const std::string base = "LEMMA_SC" + std::to_string(k);
        if (name == base + "_SIGMA" || name == base + "\u03c3") return lemma_sc(k, true);
    }
    if (name == "LEMMA_MSC_NEG") return lemma_msc_neg();
    if (name == "LEMMA_MSC_POS") return lemma_msc_pos();
    return std::nullopt;
}

ProverConfig default_config(const ConstraintSystem& system) {
    ProverConfig cfg;
    cfg.min_width.assign(system.variables.size(), cfg.default_min_width);
    cfg.split_policy = SplitPolicy::WidestRelative;
    return cfg;
}

}  // namespace sqdisk
