#pragma once

// Lower bounds on the area packed into subcontainers and pockets, and the
// composite functions whose inequalities the prover certifies.

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sqdisk/geometry.hpp"

namespace sqdisk {

template <class S>
void b1_contract(const S&, const S&, const S&) {}

inline void b1_contract(double h, double w, double h_next) {
    if (w < 2.0 * h || h_next > h || h_next < 0.0) {
        throw ContractError("B1 requires w >= 2h >= 2h_next >= 0");
    }
}

template <class S>
S B1(const S& h, const S& w, const S& h_next) {
    b1_contract(h, w, h_next);
    const S t1 = 0.5 * h * w + 0.25 * square(h);
    const S t2 = square(h) + (w - h - h_next) * h_next;
    const S t3 = 0.5 * h * (w + h) - square(h_next);
    return max(t1, max(t2, t3));
}

template <class S>
S B2(const S& h, const S& w, const S& h_next) {
    return if_lt(
        w, h + h_next, [&] { return square(h); },
        [&] {
            return if_lt(
                w, 2.0 * h, [&] { return square(h) + square(h_next); }, [&] { return B1(h, w, h_next); });
        });
}

template <class S>
S B3(const S& a, const S& h, const S& w, const S& h_next) {
    const S y = max(S(0.0), y_residual(a, h, w, h_next));
    const S h2 = square(h);
    return max(h2 + y * h_next, h2 + min(square(y), 2.0 * square(h_next)));
}

template <class S>
S B4(const S& a, const S& h, const S& w, const S& h_next) {
    return max(B2(h, w, h_next), B3(a, h, w, h_next));
}

template <class S>
S B5(const S& h, const S& H, const S& A_next) {
    return A_next + square(h) - H * h;
}

template <class S>
S B6(const S& H_R, const S& W_R, const S& h_next) {
    return 0.5 * H_R * W_R + 0.25 * h_next * H_R;
}

template <class S>
S E(const S& s1, const S& sn) {
    const S sg = sigma(s1);
    return if_le(
        sn, sg, [&] { return ratio<S>(83, 100) * square(sg); }, [&] { return S(0.0); });
}

template <class S>
std::pair<S, S> F_TP(const S& s1) {
    const S sg = sigma(s1);
    const S q = sg * sqrt_ratio<S>(1, 8);  // sigma / (2 sqrt 2)
    const S x1 = 0.5 * s1 + q;
    const S x2 = 0.5 * s1 + ratio<S>(129, 200) * sg;
    const S y1 = if_le(
        s1, s1_star<S>(), [&] { return T_inv(s1) + sg + q; }, [&] { return 0.5 * sg + q; });
    const S y2 = if_le(
        s1, s1_star<S>(), [&] { return T_inv(s1) + ratio<S>(129, 100) * sg; },
        [&] { return -0.5 * sg + ratio<S>(129, 100) * sg; });
    return {square(x1) + square(y1), square(x2) + square(y2)};
}

// s1^2 + sn^2 + [E] + sum of B4 over the k subcontainers.
template <class S>
S F_SC(const S& s1, std::span<const S> heights, const S& sn, bool include_E) {
    S total = square(s1) + square(sn);
    if (include_E) total = total + E(s1, sn);
    S a = T_inv(s1);
    for (std::size_t i = 0; i < heights.size(); ++i) {
        const S& h = heights[i];
        const S& h_next = i + 1 < heights.size() ? heights[i + 1] : sn;
        total = total + B4(a, h, chord_width(a, h), h_next);
        a = a - h;
    }
    return total;
}

template <class S>
S F_SC(const S& s1, const std::vector<S>& heights, const S& sn, bool include_E) {
    return F_SC(s1, std::span<const S>(heights), sn, include_E);
}

template <class S>
S F_MSC1(const S& s1, const S& h1, const S& h2, const S& h3, const S& h4) {
    const S sg = sigma(s1);
    const S a1 = T_inv(s1);
    const S a2 = a1 - h1;
    const S a3 = a2 - h2;
    const S a4 = a3 - h3;
    S total = square(s1) + ratio<S>(83, 100) * square(sg);
    total = total + B4(a1, h1, chord_width(a1, h1), h2);
    total = total + B4(a2, h2, chord_width(a2, h2), h3);
    total = total + B4(a3, h3, chord_width(a3, h3), h4);
    const S H4 = 1.0 + a4;
    const S A5 = segment_area_below_clamped(-(a4 - h4));
    return total + B5(h4, H4, A5);
}

template <class S>
S F_MSC2(const S& s1, const S& h1, const S& h2, const S& h3, const S& h_jnext, const S& delta_y) {
    const S sg = sigma(s1);
    const S a1 = T_inv(s1);
    const S a2 = a1 - h1;
    const S a3 = a2 - h2;
    S total = square(s1) + ratio<S>(83, 100) * square(sg);
    total = total + B4(a1, h1, chord_width(a1, h1), h2);
    total = total + B4(a2, h2, chord_width(a2, h2), h3);
    const S H_R = a3 + delta_y;
    const S W_R = chord_width(a3, H_R);
    const S A_next = segment_area_below_clamped(delta_y + h_jnext);
    return total + B6(H_R, W_R, h_jnext) + B5(h_jnext, 1.0 - delta_y, A_next);
}

}  // namespace sqdisk
