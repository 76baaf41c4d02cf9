#include "sqdisk/prover.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>

namespace sqdisk {

const char* to_string(ProofStatus s) {
    switch (s) {
    case ProofStatus::Proved: return "Proved";
    case ProofStatus::Undecided: return "Undecided";
    default: return "Disproved";
    }
}

TriBool eval_atom(const Atom& a, std::span<const Interval> values) {
    const Interval& l = values[static_cast<std::size_t>(a.lhs)];
    const Interval& r = values[static_cast<std::size_t>(a.rhs)];
    switch (a.rel) {
    case Rel::Le: return leq(l, r);
    case Rel::Lt: return lt(l, r);
    case Rel::Ge: return geq(l, r);
    default: return gt(l, r);
    }
}

TriBool eval_clause(const Clause& c, std::span<const Interval> values) {
    TriBool t = TriBool::CertainlyFalse;
    for (const Atom& a : c) {
        t = t || eval_atom(a, values);
        if (t == TriBool::CertainlyTrue) break;
    }
    return t;
}

namespace {

bool holds_real(const Atom& a, std::span<const double> v) {
    const double l = v[static_cast<std::size_t>(a.lhs)];
    const double r = v[static_cast<std::size_t>(a.rhs)];
    if (std::isnan(l) || std::isnan(r)) return false;
    switch (a.rel) {
    case Rel::Le: return l <= r;
    case Rel::Lt: return l < r;
    case Rel::Ge: return l >= r;
    default: return l > r;
    }
}

// A bound x REL y with both sides plain variables or constants.
struct SimpleBound {
    int lhs_var = -1;  // -1 when lhs is a constant
    int rhs_var = -1;
    Interval lhs_const;
    Interval rhs_const;
};

// Precomputed evaluation schedule for one system.
class Engine {
public:
    Engine(const ConstraintSystem& sys, const ProverConfig& cfg) : sys_(sys), cfg_(cfg) {
        const std::size_t n = sys.variables.size();
        min_width_.assign(n, cfg.default_min_width);
        for (std::size_t i = 0; i < std::min(n, cfg.min_width.size()); ++i) min_width_[i] = cfg.min_width[i];
        for (const Variable& v : sys.variables) initial_width_.push_back(std::max(v.range.width(), 1e-300));

        for (const Clause& c : sys.hypotheses) {
            expr::NodeId top = 0;
            for (const Atom& a : c) top = std::max({top, a.lhs, a.rhs});
            clauses_.push_back({&c, static_cast<std::size_t>(top) + 1});
            if (c.size() == 1) add_bound(c[0]);
        }
        std::stable_sort(clauses_.begin(), clauses_.end(),
                         [](const ClauseRef& a, const ClauseRef& b) { return a.end < b.end; });
        concl_end_ = static_cast<std::size_t>(std::max(sys.conclusion.lhs, sys.conclusion.rhs)) + 1;
    }

    std::size_t node_count() const { return sys_.graph->size(); }
    std::size_t var_count() const { return sys_.variables.size(); }
    const ConstraintSystem& system() const { return sys_; }
    const ProverConfig& config() const { return cfg_; }

    enum class Kind { Pruned, Split, Leaf, Counterexample };
    struct Outcome {
        Kind kind = Kind::Pruned;
        int split_var = -1;
    };

    // Contracts the box in place, then classifies it.
    Outcome process(std::vector<Interval>& box, int depth, std::vector<Interval>& scratch) const {
        if (!contract(box)) return {Kind::Pruned, -1};
        const expr::Graph& g = *sys_.graph;
        std::size_t done = 0;
        bool all_true = true;
        for (const ClauseRef& c : clauses_) {
            if (c.end > done) {
                g.eval_interval(box, scratch, done, c.end);
                done = c.end;
            }
            const TriBool t = eval_clause(*c.clause, scratch);
            if (t == TriBool::CertainlyFalse) return {Kind::Pruned, -1};
            if (t != TriBool::CertainlyTrue) all_true = false;
        }
        if (concl_end_ > done) g.eval_interval(box, scratch, done, concl_end_);
        const TriBool concl = eval_atom(sys_.conclusion, scratch);
        if (concl == TriBool::CertainlyTrue) return {Kind::Pruned, -1};
        if (concl == TriBool::CertainlyFalse && all_true && confirm_mid(box)) return {Kind::Counterexample, -1};
        const int v = depth >= cfg_.max_depth ? -1 : pick(box);
        if (v < 0) return {confirm_mid(box) ? Kind::Counterexample : Kind::Leaf, -1};
        return {Kind::Split, v};
    }

    static std::pair<std::vector<Interval>, std::vector<Interval>> split(const std::vector<Interval>& box, int v) {
        const auto i = static_cast<std::size_t>(v);
        const double m = box[i].mid();
        std::pair<std::vector<Interval>, std::vector<Interval>> halves{box, box};
        halves.first[i] = Interval::unchecked(box[i].lo(), m);
        halves.second[i] = Interval::unchecked(m, box[i].hi());
        return halves;
    }

    std::vector<Interval> root() const {
        std::vector<Interval> box;
        for (const Variable& v : sys_.variables) box.push_back(v.range);
        return box;
    }

    std::vector<double> midpoint(const std::vector<Interval>& box) const {
        std::vector<double> p;
        for (const Interval& x : box) p.push_back(x.mid());
        return p;
    }

    bool confirm_mid(const std::vector<Interval>& box) const {
        const std::vector<double> p = midpoint(box);
        return confirm_counterexample(sys_, p);
    }

private:
    struct ClauseRef {
        const Clause* clause;
        std::size_t end;
    };

    void add_bound(const Atom& a) {
        const expr::Graph& g = *sys_.graph;
        const expr::Node& l = g.node(a.lhs);
        const expr::Node& r = g.node(a.rhs);
        const auto simple = [](const expr::Node& n) { return n.op == expr::Op::Var || n.op == expr::Op::Const; };
        if (!simple(l) || !simple(r)) return;
        SimpleBound b;
        const expr::Node& lo_side = (a.rel == Rel::Le || a.rel == Rel::Lt) ? l : r;
        const expr::Node& hi_side = (a.rel == Rel::Le || a.rel == Rel::Lt) ? r : l;
        b.lhs_var = lo_side.op == expr::Op::Var ? lo_side.var : -1;
        b.rhs_var = hi_side.op == expr::Op::Var ? hi_side.var : -1;
        b.lhs_const = lo_side.value;
        b.rhs_const = hi_side.value;
        if (b.lhs_var < 0 && b.rhs_var < 0) return;
        bounds_.push_back(b);
    }

    // Removes parts of the box violating some lhs <= rhs bound between
    // variables and constants. Returns false when the box becomes empty.
    bool contract(std::vector<Interval>& box) const {
        for (int pass = 0; pass < 2; ++pass) {
            for (const SimpleBound& b : bounds_) {
                const Interval l = b.lhs_var >= 0 ? box[static_cast<std::size_t>(b.lhs_var)] : b.lhs_const;
                const Interval r = b.rhs_var >= 0 ? box[static_cast<std::size_t>(b.rhs_var)] : b.rhs_const;
                if (l.lo() > r.hi()) return false;
                if (b.lhs_var >= 0) box[static_cast<std::size_t>(b.lhs_var)] = Interval::unchecked(l.lo(), std::min(l.hi(), r.hi()));
                if (b.rhs_var >= 0) box[static_cast<std::size_t>(b.rhs_var)] = Interval::unchecked(std::max(r.lo(), l.lo()), r.hi());
            }
        }
        return true;
    }

    int pick(const std::vector<Interval>& box) const {
        int best = -1;
        double best_score = 0.0;
        for (std::size_t i = 0; i < box.size(); ++i) {
            const double w = box[i].width();
            if (!(w > min_width_[i])) continue;
            if (cfg_.split_policy == SplitPolicy::EarliestAboveMin) return static_cast<int>(i);
            const double score = w / initial_width_[i];
            if (score > best_score) {
                best_score = score;
                best = static_cast<int>(i);
            }
        }
        return best;
    }

    const ConstraintSystem& sys_;
    const ProverConfig& cfg_;
    std::vector<double> min_width_;
    std::vector<double> initial_width_;
    std::vector<ClauseRef> clauses_;
    std::vector<SimpleBound> bounds_;
    std::size_t concl_end_ = 0;
};

Box to_box(const ConstraintSystem& sys, const std::vector<Interval>& dims) { return make_box(sys, dims); }

Box degenerate(const ConstraintSystem& sys, const std::vector<double>& p) {
    std::vector<Interval> dims;
    for (double x : p) dims.emplace_back(x);
    return make_box(sys, dims);
}

std::size_t box_bytes(std::size_t vars) { return sizeof(std::vector<Interval>) + vars * sizeof(Interval) + 2 * sizeof(int); }

}  // namespace

Box make_box(const ConstraintSystem& system, std::span<const Interval> dims) {
    Box b;
    for (std::size_t i = 0; i < dims.size(); ++i) b.dims.emplace_back(system.variables[i].name, dims[i]);
    return b;
}

bool confirm_counterexample(const ConstraintSystem& system, std::span<const double> point) {
    std::vector<double> v(system.graph->size());
    system.graph->eval_real(point, v);
    for (const Clause& c : system.hypotheses) {
        bool any = false;
        for (const Atom& a : c) any = any || holds_real(a, v);
        if (!any) return false;
    }
    const double l = v[static_cast<std::size_t>(system.conclusion.lhs)];
    const double r = v[static_cast<std::size_t>(system.conclusion.rhs)];
    if (std::isnan(l) || std::isnan(r)) return false;
    return !holds_real(system.conclusion, v);
}

bool confirm_counterexample(const ConstraintSystem& system, const Box& box) {
    std::vector<double> p;
    for (const auto& d : box.dims) p.push_back(d.second.mid());
    return confirm_counterexample(system, p);
}

ProofResult prove_serial(const ConstraintSystem& system, const ProverConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    const Engine eng(system, config);
    ProofResult res;
    std::vector<Interval> scratch(eng.node_count());
    struct Item {
        std::vector<Interval> box;
        int depth;
    };
    std::vector<Item> stack;
    stack.push_back({eng.root(), 0});
    std::size_t peak = 1;
    bool undecided = false;
    while (!stack.empty()) {
        Item it = std::move(stack.back());
        stack.pop_back();
        ++res.stats.boxes_explored;
        res.stats.max_depth = std::max(res.stats.max_depth, it.depth);
        if (config.max_boxes != 0 && res.stats.boxes_explored > config.max_boxes) {
            undecided = true;
            if (res.undecided.size() < config.max_reported_boxes) res.undecided.push_back(to_box(system, it.box));
            break;
        }
        const Engine::Outcome out = eng.process(it.box, it.depth, scratch);
        if (out.kind == Engine::Kind::Counterexample) {
            res.status = ProofStatus::Disproved;
            res.witness = degenerate(system, eng.midpoint(it.box));
            break;
        }
        if (out.kind == Engine::Kind::Leaf) {
            undecided = true;
            if (res.undecided.size() < config.max_reported_boxes) res.undecided.push_back(to_box(system, it.box));
            continue;
        }
        if (out.kind == Engine::Kind::Split) {
            auto [lo, hi] = Engine::split(it.box, out.split_var);
            stack.push_back({std::move(hi), it.depth + 1});
            stack.push_back({std::move(lo), it.depth + 1});
            peak = std::max(peak, stack.size());
        }
    }
    if (res.status != ProofStatus::Disproved && undecided) res.status = ProofStatus::Undecided;
    res.stats.peak_memory_bytes = peak * box_bytes(eng.var_count()) + eng.node_count() * sizeof(Interval);
    res.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

namespace {

struct SharedState {
    const Engine* eng = nullptr;
    std::atomic<std::uint64_t> boxes{0};
    std::atomic<int> max_depth{0};
    std::atomic<std::int64_t> live{0};
    std::atomic<std::int64_t> peak_live{0};
    std::atomic<bool> stop{false};
    std::atomic<bool> undecided{false};
    std::mutex mu;
    ProofResult* res = nullptr;
    std::vector<std::vector<Interval>>* scratch = nullptr;
};

void atomic_max(std::atomic<int>& a, int v) {
    int cur = a.load(std::memory_order_relaxed);
    while (v > cur && !a.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
}
void atomic_max(std::atomic<std::int64_t>& a, std::int64_t v) {
    std::int64_t cur = a.load(std::memory_order_relaxed);
    while (v > cur && !a.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
}

void explore(SharedState& st, std::vector<Interval> box, int depth) {
    while (!st.stop.load(std::memory_order_relaxed)) {
        const Engine& eng = *st.eng;
        const std::uint64_t n = st.boxes.fetch_add(1, std::memory_order_relaxed) + 1;
        atomic_max(st.max_depth, depth);
        const ProverConfig& cfg = eng.config();
        if (cfg.max_boxes != 0 && n > cfg.max_boxes) {
            st.undecided = true;
            st.stop = true;
            std::lock_guard<std::mutex> lock(st.mu);
            if (st.res->undecided.size() < cfg.max_reported_boxes) st.res->undecided.push_back(to_box(eng.system(), box));
            break;
        }
        auto& scratch = (*st.scratch)[static_cast<std::size_t>(omp_get_thread_num())];
        const Engine::Outcome out = eng.process(box, depth, scratch);
        if (out.kind == Engine::Kind::Pruned) break;
        if (out.kind == Engine::Kind::Counterexample) {
            std::lock_guard<std::mutex> lock(st.mu);
            if (!st.res->witness) {
                st.res->status = ProofStatus::Disproved;
                st.res->witness = degenerate(eng.system(), eng.midpoint(box));
            }
            st.stop = true;
            break;
        }
        if (out.kind == Engine::Kind::Leaf) {
            st.undecided = true;
            std::lock_guard<std::mutex> lock(st.mu);
            if (st.res->undecided.size() < cfg.max_reported_boxes) st.res->undecided.push_back(to_box(eng.system(), box));
            break;
        }
        auto halves = Engine::split(box, out.split_var);
        atomic_max(st.peak_live, st.live.fetch_add(1, std::memory_order_relaxed) + 1);
#pragma omp task default(none) firstprivate(depth) shared(st) firstprivate(halves)
        {
            explore(st, std::move(halves.second), depth + 1);
            st.live.fetch_sub(1, std::memory_order_relaxed);
        }
        box = std::move(halves.first);
        ++depth;
    }
}

}  // namespace

ProofResult prove_parallel(const ConstraintSystem& system, const ProverConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    const Engine eng(system, config);
    ProofResult res;
    const int workers = std::max(1, config.worker_count);
    std::vector<std::vector<Interval>> scratch(static_cast<std::size_t>(workers), std::vector<Interval>(eng.node_count()));
    SharedState st;
    st.eng = &eng;
    st.res = &res;
    st.scratch = &scratch;
#pragma omp parallel num_threads(workers) default(none) shared(st, eng)
    {
#pragma omp single
        explore(st, eng.root(), 0);
    }
    if (res.status != ProofStatus::Disproved && st.undecided) res.status = ProofStatus::Undecided;
    res.stats.boxes_explored = st.boxes.load();
    res.stats.max_depth = st.max_depth.load();
    res.stats.peak_memory_bytes = static_cast<std::size_t>(st.peak_live.load() + workers) * box_bytes(eng.var_count()) +
                                  static_cast<std::size_t>(workers) * eng.node_count() * sizeof(Interval);
    res.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

ProofResult prove(const ConstraintSystem& system, const ProverConfig& config) {
    return config.worker_count <= 1 ? prove_serial(system, config) : prove_parallel(system, config);
}

SystemBuilder::SystemBuilder(std::string name) : graph_(std::make_shared<expr::Graph>()), scope_(*graph_) {
    sys_.name = std::move(name);
}

expr::Expr SystemBuilder::var(const std::string& name, Interval range) {
    const int index = static_cast<int>(sys_.variables.size());
    sys_.variables.push_back({name, range});
    return expr::Expr::variable(index);
}

void SystemBuilder::require(expr::Expr lhs, Rel rel, expr::Expr rhs) { sys_.hypotheses.push_back({atom(lhs, rel, rhs)}); }

void SystemBuilder::require_any(std::vector<Atom> atoms) { sys_.hypotheses.push_back(std::move(atoms)); }

ConstraintSystem SystemBuilder::conclude(expr::Expr lhs, Rel rel, expr::Expr rhs) {
    sys_.conclusion = atom(lhs, rel, rhs);
    sys_.graph = graph_;
    return sys_;
}

}  // namespace sqdisk
