#pragma once

// Expression DAG over interval-valued nodes. Formulas written against the
// generic scalar interface are instantiated with Expr to record them once
// as a graph; the prover then evaluates the graph on every box.
//
// Nodes are appended in topological order. Identical nodes are shared
// (hash-consing) and operations on constants are folded at build time.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "sqdisk/scalar.hpp"

namespace sqdisk::expr {

using NodeId = std::int32_t;

enum class Op : std::uint8_t {
    Const,
    Var,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Sqr,
    Sqrt,
    Acos,
    SegmentArea,
    Min,
    Max,
    SelectLe,  // args: a, b, then, else
    SelectLt,
};

struct Node {
    Op op = Op::Const;
    NodeId args[4] = {-1, -1, -1, -1};
    Interval value;     // Const only
    double point = 0.0; // Const only
    int var = -1;       // Var only
};

class Graph {
public:
    NodeId constant(const Interval& enclosure, double point);
    NodeId variable(int index);
    NodeId unary(Op op, NodeId a);
    NodeId binary(Op op, NodeId a, NodeId b);
    NodeId select(Op op, NodeId a, NodeId b, NodeId then_id, NodeId else_id);

    const Node& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
    std::size_t size() const { return nodes_.size(); }
    int variable_count() const { return var_count_; }

    // Evaluates nodes [from, to) in interval semantics. Domain errors and
    // non-finite values yield the whole line.
    void eval_interval(std::span<const Interval> vars, std::span<Interval> out, std::size_t from,
                       std::size_t to) const;
    // Plain double evaluation; domain errors yield NaN.
    void eval_real(std::span<const double> vars, std::span<double> out) const;

private:
    struct Key {
        Op op;
        NodeId args[4];
        double lo;
        double hi;
        double point;
        int var;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };

    NodeId intern(const Node& n);
    bool is_const(NodeId id) const { return node(id).op == Op::Const; }

    std::vector<Node> nodes_;
    std::unordered_map<Key, NodeId, KeyHash> index_;
    int var_count_ = 0;
};

// Evaluates a single node on an interval box, filling the supplied buffer.
Interval eval_node(const Graph& g, NodeId id, std::span<const Interval> vars);

// Graph used by Expr construction on the current thread.
class GraphScope {
public:
    explicit GraphScope(Graph& g);
    ~GraphScope();
    GraphScope(const GraphScope&) = delete;
    GraphScope& operator=(const GraphScope&) = delete;

    static Graph& current();

private:
    Graph* previous_;
};

class Expr {
public:
    Expr() = default;
    Expr(double x);  // NOLINT: constants mix freely with expressions
    static Expr from_id(NodeId id) {
        Expr e;
        e.id_ = id;
        return e;
    }
    static Expr variable(int index) { return from_id(GraphScope::current().variable(index)); }

    NodeId id() const { return id_; }

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);

private:
    NodeId id_ = -1;
};

Expr sqrt(const Expr& a);
Expr acos(const Expr& a);
Expr square(const Expr& a);
Expr min(const Expr& a, const Expr& b);
Expr max(const Expr& a, const Expr& b);
Expr segment_area_below(const Expr& t);

template <class F, class G>
Expr if_le(const Expr& a, const Expr& b, F&& then_fn, G&& else_fn) {
    const Expr t = then_fn();
    const Expr e = else_fn();
    return Expr::from_id(GraphScope::current().select(Op::SelectLe, a.id(), b.id(), t.id(), e.id()));
}

template <class F, class G>
Expr if_lt(const Expr& a, const Expr& b, F&& then_fn, G&& else_fn) {
    const Expr t = then_fn();
    const Expr e = else_fn();
    return Expr::from_id(GraphScope::current().select(Op::SelectLt, a.id(), b.id(), t.id(), e.id()));
}

}  // namespace sqdisk::expr

namespace sqdisk {
template <>
inline expr::Expr lift<expr::Expr>(const Interval& enclosure, double point) {
    return expr::Expr::from_id(expr::GraphScope::current().constant(enclosure, point));
}
}  // namespace sqdisk
