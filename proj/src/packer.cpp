#include "sqdisk/packer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sqdisk {

namespace {

// Slack for comparisons of lengths that are equal in exact arithmetic.
constexpr double kFitEps = 1e-12;

constexpr double kC1Half = 0.694;
constexpr double kC1Pocket = 0.295;

}  // namespace

double Instance::total_area() const {
    double a = 0.0;
    for (double s : sides) a += s * s;
    return a;
}

void check_instance(const Instance& instance) {
    for (std::size_t i = 0; i < instance.sides.size(); ++i) {
        const double s = instance.sides[i];
        if (!std::isfinite(s) || s <= 0.0) {
            throw InputError("side " + std::to_string(i) + " is not a positive finite number");
        }
    }
}

const char* to_string(CaseTag c) {
    switch (c) {
    case CaseTag::C1: return "C1";
    case CaseTag::C2: return "C2";
    default: return "C3";
    }
}

const char* to_string(FailureReason r) {
    return r == FailureReason::AreaExceedsGuarantee ? "AreaExceedsGuarantee" : "NoPlacementFound";
}

const char* to_string(Region r) {
    switch (r) {
    case Region::Pocket: return "pocket";
    case Region::Container: return "container";
    case Region::TopLeft: return "top-left";
    case Region::TopRight: return "top-right";
    default: return "subcontainer";
    }
}

std::vector<std::size_t> sorted_order(const std::vector<double>& sides) {
    std::vector<std::size_t> order(sides.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sides[a] > sides[b]; });
    return order;
}

CaseTag select_case(const std::vector<double>& sorted_sides) {
    if (sorted_sides.empty()) return CaseTag::C1;
    const double s1 = sorted_sides[0];
    if (s1 <= kC1Pocket) return CaseTag::C1;
    double top4 = 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(4, sorted_sides.size()); ++i) top4 += sorted_sides[i] * sorted_sides[i];
    if (s1 <= 1.0 / std::sqrt(2.0) && top4 >= 39.0 / 25.0) return CaseTag::C2;
    return CaseTag::C3;
}

ShelfResult shelf_pack(double width, double height, const std::vector<double>& squares) {
    // shelves run along the shorter side; compute in the frame where that is the x axis
    const bool columns = height < width;
    const double len = columns ? height : width;
    const double depth = columns ? width : height;
    ShelfResult r;
    double shelf_y = 0.0;
    double shelf_h = -1.0;
    double cursor = 0.0;
    for (std::size_t i = 0; i < squares.size(); ++i) {
        const double s = squares[i];
        if (shelf_h < 0.0) {
            if (s > len + kFitEps || s > depth + kFitEps) {
                r.failed_at = i;
                return r;
            }
            shelf_h = s;
        } else if (cursor + s > len + kFitEps) {
            shelf_y += shelf_h;
            shelf_h = s;
            cursor = 0.0;
            if (shelf_y + s > depth + kFitEps) {
                r.failed_at = i;
                return r;
            }
        }
        r.placed.push_back(columns ? PlacedSquare{shelf_y, cursor, s} : PlacedSquare{cursor, shelf_y, s});
        cursor += s;
    }
    return r;
}

std::optional<SlidePlacement> refined_shelf_place(double x, double s, double y0, double lo, double hi, double tol) {
    if (hi - lo < s - kFitEps) return std::nullopt;
    if (square_in_disk({x, y0, s}, tol)) return SlidePlacement{y0, false};
    if (!(lo <= 0.0 && 0.0 <= hi)) return std::nullopt;
    const double r = std::max(std::fabs(x), std::fabs(x + s));
    const double reach = 1.0 + 0.5 * tol;
    if (r >= reach) return std::nullopt;
    const double hy = std::sqrt(reach * reach - r * r);
    const double y_lo = std::max(lo, -hy);
    const double y_hi = std::min(hi, hy) - s;
    if (y_lo > y_hi) return std::nullopt;
    const double y = std::clamp(y0, y_lo, y_hi);
    if (!square_in_disk({x, y, s}, tol)) return std::nullopt;
    return SlidePlacement{y, true};
}

PackState::PackState(double s1, double tol) : tol_(tol), s1_(s1) {
    first_ = {-0.5 * s1, T_inv(s1), s1};
    geom_ = pocket_geometry(s1);
    pocket_top_ = std::sqrt(1.0 - 0.25 * s1 * s1);
}

std::optional<PackState::Placement> PackState::pocket_horizontal(PocketCursor& pc, double s) {
    const double inner = -0.5 * s1_;
    if (pc.open) {
        const double x = pc.cursor - s;
        if (auto p = refined_shelf_place(x, s, pc.lane, pc.lane, pc.lane + pc.thickness, tol_)) {
            pc.cursor = x;
            return Placement{{x, p->y, s}, Region::TopLeft, 0, p->slid, pc.lane, pc.lane + pc.thickness};
        }
    }
    const double lane = pc.open ? pc.lane + pc.thickness : geom_.bottom_y;
    const double x = inner - s;
    if (auto p = refined_shelf_place(x, s, lane, lane, lane + s, tol_)) {
        pc = {true, lane, s, x};
        return Placement{{x, p->y, s}, Region::TopLeft, 0, p->slid, lane, lane + s};
    }
    return std::nullopt;
}

std::optional<PackState::Placement> PackState::pocket_vertical(PocketCursor& pc, double s) {
    const double bottom = geom_.bottom_y;
    if (pc.open) {
        const double x = pc.lane - s;
        if (auto p = refined_shelf_place(x, s, pc.cursor, pc.cursor, pocket_top_, tol_)) {
            pc.cursor = p->y + s;
            return Placement{{x, p->y, s}, Region::TopLeft, 0, p->slid, bottom, pocket_top_};
        }
    }
    const double lane = pc.open ? pc.lane - pc.thickness : -0.5 * s1_;
    const double x = lane - s;
    if (auto p = refined_shelf_place(x, s, bottom, bottom, pocket_top_, tol_)) {
        pc = {true, lane, s, p->y + s};
        return Placement{{x, p->y, s}, Region::TopLeft, 0, p->slid, bottom, pocket_top_};
    }
    return std::nullopt;
}

std::optional<PackState::Placement> PackState::try_pocket(PocketCursor& pc, double s, bool mirrored, int id) {
    auto p = horizontal_pocket_shelves() ? pocket_horizontal(pc, s) : pocket_vertical(pc, s);
    if (!p) return std::nullopt;
    if (mirrored) {
        p->square.x = -p->square.x - s;
        p->region = Region::TopRight;
    }
    p->container = id;
    return p;
}

std::optional<PackState::Placement> PackState::top_pack_try(double s) {
    if (s > geom_.sigma + kFitEps) return std::nullopt;
    if (auto p = try_pocket(left_, s, false, 0)) return p;
    return try_pocket(right_, s, true, 1);
}

std::optional<PackState::Placement> PackState::place_in_column(const Sub& sub, double x, double s, double cursor) {
    const double lo = sub.from_top ? sub.bottom : cursor;
    const double hi = sub.from_top ? cursor : sub.top;
    const double y0 = sub.from_top ? cursor - s : cursor;
    auto p = refined_shelf_place(x, s, y0, lo, hi, tol_);
    if (!p) return std::nullopt;
    return Placement{{x, p->y, s}, Region::Subcontainer, 0, p->slid, sub.bottom, sub.top};
}

std::optional<PackState::Placement> PackState::try_sub(Sub& sub, double s) {
    if (auto p = place_in_column(sub, sub.col_x, s, sub.cursor)) {
        sub.cursor = sub.from_top ? p->square.y : p->square.y + s;
        return p;
    }
    const double x = sub.col_x + sub.col_width;
    const double start = sub.from_top ? sub.top : sub.bottom;
    if (auto p = place_in_column(sub, x, s, start)) {
        sub.col_x = x;
        sub.col_width = s;
        sub.cursor = sub.from_top ? p->square.y : p->square.y + s;
        return p;
    }
    return std::nullopt;
}

std::optional<PackState::Placement> PackState::bottom_pack(double s) {
    if (!sub_state_.empty()) {
        if (auto p = try_sub(sub_state_.back(), s)) {
            p->container = static_cast<int>(sub_state_.size()) - 1;
            return p;
        }
    }
    const double top = sub_state_.empty() ? first_.y : sub_state_.back().bottom;
    const double bottom = top - s;
    if (bottom < -1.0 - tol_) return std::nullopt;
    const double w = 2.0 * std::sqrt(std::max(0.0, std::min(1.0 - top * top, 1.0 - bottom * bottom)));
    if (w < s - tol_) return std::nullopt;
    const double x = -0.5 * std::max(w, s);
    if (!square_in_disk({x, bottom, s}, tol_)) return std::nullopt;

    Sub sub;
    sub.top = top;
    sub.bottom = bottom;
    sub.from_top = std::fabs(top) <= std::fabs(bottom);
    sub.col_x = x;
    sub.col_width = s;
    sub.cursor = sub.from_top ? bottom : top;
    sub_state_.push_back(sub);
    subs_.push_back({top, s, sub.from_top});
    return Placement{{x, bottom, s}, Region::Subcontainer, static_cast<int>(sub_state_.size()) - 1, false, bottom, top};
}

namespace {

void fail(PackResult& r, const Instance& instance, std::size_t index, std::size_t rank) {
    Failure f;
    f.reason = instance.total_area() > DiskConstants::critical_area ? FailureReason::AreaExceedsGuarantee
                                                                    : FailureReason::NoPlacementFound;
    f.failed_index = index;
    f.failed_rank = rank;
    r.failure = f;
}

void record(PackResult& r, std::size_t index, const PlacedSquare& sq, Region region, int container, bool slid,
            double band_lo, double band_hi) {
    r.packing.placements[index] = sq;
    r.trace.push_back({index, region, container, slid, band_lo, band_hi});
}

// Places sorted[first..] into a square container with lower-left corner (ox, oy).
void fill_container(PackResult& r, const Instance& instance, const std::vector<std::size_t>& order,
                    std::size_t first, double ox, double oy, double side) {
    std::vector<double> rest;
    for (std::size_t k = first; k < order.size(); ++k) rest.push_back(instance.sides[order[k]]);
    const ShelfResult shelves = shelf_pack(side, side, rest);
    for (std::size_t k = 0; k < shelves.placed.size(); ++k) {
        const PlacedSquare& p = shelves.placed[k];
        record(r, order[first + k], {ox + p.x, oy + p.y, p.side}, Region::Container, 0, false, oy + p.y,
               oy + p.y + p.side);
    }
    if (shelves.failed_at) {
        const std::size_t rank = first + *shelves.failed_at;
        fail(r, instance, order[rank], rank);
    }
}

void pack_c1(PackResult& r, const Instance& instance, const std::vector<std::size_t>& order) {
    const double h = 0.5 * kC1Pocket;
    const PlacedSquare pockets[4] = {
        {-h, kC1Half, kC1Pocket},
        {kC1Half, -h, kC1Pocket},
        {-h, -kC1Half - kC1Pocket, kC1Pocket},
        {-kC1Half - kC1Pocket, -h, kC1Pocket},
    };
    const std::size_t head = std::min<std::size_t>(4, order.size());
    for (std::size_t k = 0; k < head; ++k) {
        const PlacedSquare& c = pockets[k];
        record(r, order[k], {c.x, c.y, instance.sides[order[k]]}, Region::Pocket, static_cast<int>(k), false, c.y,
               c.y + c.side);
    }
    fill_container(r, instance, order, head, -kC1Half, -kC1Half, 2.0 * kC1Half);
}

void pack_c2(PackResult& r, const Instance& instance, const std::vector<std::size_t>& order) {
    const double g = std::sqrt(0.5);
    const PlacedSquare cells[4] = {{-g, 0.0, g}, {0.0, 0.0, g}, {-g, -g, g}, {0.0, -g, g}};
    const std::size_t head = std::min<std::size_t>(4, order.size());
    for (std::size_t k = 0; k < head; ++k) {
        const PlacedSquare& c = cells[k];
        record(r, order[k], {c.x, c.y, instance.sides[order[k]]}, Region::Pocket, static_cast<int>(k), false, c.y,
               c.y + c.side);
    }
    const double side = std::sqrt(2.0) / 5.0;
    fill_container(r, instance, order, head, -0.5 * side, g, side);
}

void pack_c3(PackResult& r, const Instance& instance, const std::vector<std::size_t>& order, double tol) {
    const double s1 = instance.sides[order[0]];
    if (s1 > std::sqrt(2.0)) {
        fail(r, instance, order[0], 0);
        return;
    }
    PackState state(s1, tol);
    record(r, order[0], state.first(), Region::TopLeft, -1, false, state.first().y, state.first().y + s1);
    for (std::size_t k = 1; k < order.size(); ++k) {
        const double s = instance.sides[order[k]];
        auto p = state.top_pack_try(s);
        if (!p) p = state.bottom_pack(s);
        if (!p) {
            fail(r, instance, order[k], k);
            break;
        }
        record(r, order[k], p->square, p->region, p->container, p->slid, p->band_lo, p->band_hi);
    }
    r.subcontainers = state.subcontainers();
}

}  // namespace

PackResult pack(const Instance& instance, const PackOptions& options) {
    check_instance(instance);
    PackResult r;
    r.packing.placements.assign(instance.sides.size(), PlacedSquare{});
    if (instance.sides.empty()) return r;
    const std::vector<std::size_t> order = sorted_order(instance.sides);
    std::vector<double> sorted(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) sorted[k] = instance.sides[order[k]];
    r.case_tag = select_case(sorted);
    switch (r.case_tag) {
    case CaseTag::C1: pack_c1(r, instance, order); break;
    case CaseTag::C2: pack_c2(r, instance, order); break;
    case CaseTag::C3: pack_c3(r, instance, order, options.tol); break;
    }
    return r;
}

ValidationReport validate(const Packing& packing, double tol) {
    ValidationReport rep;
    const auto& ps = packing.placements;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (!(ps[i].side > 0.0) || !square_in_disk(ps[i], tol)) rep.outside.push_back(i);
    }
    std::vector<std::size_t> by_x(ps.size());
    std::iota(by_x.begin(), by_x.end(), std::size_t{0});
    std::sort(by_x.begin(), by_x.end(), [&](std::size_t a, std::size_t b) { return ps[a].x < ps[b].x; });
    for (std::size_t a = 0; a < by_x.size(); ++a) {
        const PlacedSquare& p = ps[by_x[a]];
        for (std::size_t b = a + 1; b < by_x.size(); ++b) {
            const PlacedSquare& q = ps[by_x[b]];
            if (q.x >= p.x + p.side - 2.0 * tol) break;
            if (squares_overlap(p, q, tol)) {
                rep.overlaps.emplace_back(std::min(by_x[a], by_x[b]), std::max(by_x[a], by_x[b]));
            }
        }
    }
    std::sort(rep.overlaps.begin(), rep.overlaps.end());
    return rep;
}

}  // namespace sqdisk
