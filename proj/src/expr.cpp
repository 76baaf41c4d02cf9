#include "sqdisk/expr.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sqdisk/geometry.hpp"

namespace sqdisk::expr {

namespace {

thread_local Graph* tls_graph = nullptr;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Interval total_segment_area(const Interval& t) {
    if (!t.is_finite() || t.hi() < -1.0 || t.lo() > 1.0) return Interval::entire();
    return segment_area_below(Interval::unchecked(std::max(t.lo(), -1.0), std::min(t.hi(), 1.0)));
}

Interval apply(Op op, const Interval& a, const Interval& b) {
    switch (op) {
    case Op::Add: return total::add(a, b);
    case Op::Sub: return total::sub(a, b);
    case Op::Mul: return total::mul(a, b);
    case Op::Div: return total::div(a, b);
    case Op::Neg: return total::neg(a);
    case Op::Sqr: return total::square(a);
    case Op::Sqrt: return total::sqrt(a);
    case Op::Acos: return total::acos(a);
    case Op::SegmentArea: return total_segment_area(a);
    case Op::Min: return total::min(a, b);
    case Op::Max: return total::max(a, b);
    default: break;
    }
    throw std::logic_error("apply: not an arithmetic op");
}

double apply_real(Op op, double a, double b) {
    switch (op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div: return b == 0.0 ? kNaN : a / b;
    case Op::Neg: return -a;
    case Op::Sqr: return a * a;
    case Op::Sqrt: return a < 0.0 ? kNaN : std::sqrt(a);
    case Op::Acos: return (a < -1.0 || a > 1.0) ? kNaN : std::acos(a);
    case Op::SegmentArea: return (a < -1.0 || a > 1.0) ? kNaN : std::acos(a) - a * std::sqrt(1.0 - a * a);
    case Op::Min: return (std::isnan(a) || std::isnan(b)) ? kNaN : std::min(a, b);
    case Op::Max: return (std::isnan(a) || std::isnan(b)) ? kNaN : std::max(a, b);
    default: break;
    }
    throw std::logic_error("apply_real: not an arithmetic op");
}

TriBool compare(Op op, const Interval& a, const Interval& b) {
    return op == Op::SelectLe ? leq(a, b) : lt(a, b);
}

}  // namespace

std::size_t Graph::KeyHash::operator()(const Key& k) const {
    std::size_t h = static_cast<std::size_t>(k.op);
    const auto mix = [&h](std::uint64_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (NodeId a : k.args) mix(static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)));
    mix(std::bit_cast<std::uint64_t>(k.lo));
    mix(std::bit_cast<std::uint64_t>(k.hi));
    mix(std::bit_cast<std::uint64_t>(k.point));
    mix(static_cast<std::uint64_t>(k.var));
    return h;
}

NodeId Graph::intern(const Node& n) {
    Key key{n.op, {n.args[0], n.args[1], n.args[2], n.args[3]}, n.value.lo(), n.value.hi(), n.point, n.var};
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    const auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(n);
    index_.emplace(key, id);
    return id;
}

NodeId Graph::constant(const Interval& enclosure, double point) {
    Node n;
    n.op = Op::Const;
    n.value = enclosure;
    n.point = point;
    return intern(n);
}

NodeId Graph::variable(int index) {
    Node n;
    n.op = Op::Var;
    n.var = index;
    var_count_ = std::max(var_count_, index + 1);
    return intern(n);
}

NodeId Graph::unary(Op op, NodeId a) {
    if (is_const(a)) {
        const Node& na = node(a);
        return constant(apply(op, na.value, Interval()), apply_real(op, na.point, 0.0));
    }
    Node n;
    n.op = op;
    n.args[0] = a;
    return intern(n);
}

NodeId Graph::binary(Op op, NodeId a, NodeId b) {
    if (is_const(a) && is_const(b)) {
        const Node& na = node(a);
        const Node& nb = node(b);
        return constant(apply(op, na.value, nb.value), apply_real(op, na.point, nb.point));
    }
    if ((op == Op::Min || op == Op::Max) && a == b) return a;
    Node n;
    n.op = op;
    n.args[0] = a;
    n.args[1] = b;
    return intern(n);
}

NodeId Graph::select(Op op, NodeId a, NodeId b, NodeId then_id, NodeId else_id) {
    if (then_id == else_id) return then_id;
    if (is_const(a) && is_const(b)) {
        const TriBool t = compare(op, node(a).value, node(b).value);
        if (t == TriBool::CertainlyTrue) return then_id;
        if (t == TriBool::CertainlyFalse) return else_id;
    }
    Node n;
    n.op = op;
    n.args[0] = a;
    n.args[1] = b;
    n.args[2] = then_id;
    n.args[3] = else_id;
    return intern(n);
}

void Graph::eval_interval(std::span<const Interval> vars, std::span<Interval> out, std::size_t from,
                          std::size_t to) const {
    for (std::size_t i = from; i < to; ++i) {
        const Node& n = nodes_[i];
        switch (n.op) {
        case Op::Const: out[i] = n.value; break;
        case Op::Var: out[i] = vars[static_cast<std::size_t>(n.var)]; break;
        case Op::SelectLe:
        case Op::SelectLt: {
            const TriBool t = compare(n.op, out[n.args[0]], out[n.args[1]]);
            if (t == TriBool::CertainlyTrue) {
                out[i] = out[n.args[2]];
            } else if (t == TriBool::CertainlyFalse) {
                out[i] = out[n.args[3]];
            } else {
                out[i] = hull(out[n.args[2]], out[n.args[3]]);
            }
            break;
        }
        default: out[i] = apply(n.op, out[n.args[0]], n.args[1] >= 0 ? out[n.args[1]] : Interval()); break;
        }
    }
}

void Graph::eval_real(std::span<const double> vars, std::span<double> out) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        switch (n.op) {
        case Op::Const: out[i] = n.point; break;
        case Op::Var: out[i] = vars[static_cast<std::size_t>(n.var)]; break;
        case Op::SelectLe:
        case Op::SelectLt: {
            const double a = out[n.args[0]];
            const double b = out[n.args[1]];
            if (std::isnan(a) || std::isnan(b)) {
                out[i] = kNaN;
            } else {
                const bool c = n.op == Op::SelectLe ? a <= b : a < b;
                out[i] = c ? out[n.args[2]] : out[n.args[3]];
            }
            break;
        }
        default: out[i] = apply_real(n.op, out[n.args[0]], n.args[1] >= 0 ? out[n.args[1]] : 0.0); break;
        }
    }
}

Interval eval_node(const Graph& g, NodeId id, std::span<const Interval> vars) {
    std::vector<Interval> buf(static_cast<std::size_t>(id) + 1);
    g.eval_interval(vars, buf, 0, buf.size());
    return buf.back();
}

GraphScope::GraphScope(Graph& g) : previous_(tls_graph) { tls_graph = &g; }
GraphScope::~GraphScope() { tls_graph = previous_; }

Graph& GraphScope::current() {
    if (tls_graph == nullptr) throw std::logic_error("expression built outside a GraphScope");
    return *tls_graph;
}

Expr::Expr(double x) : id_(GraphScope::current().constant(Interval(x), x)) {}

Expr operator+(const Expr& a, const Expr& b) { return Expr::from_id(GraphScope::current().binary(Op::Add, a.id(), b.id())); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::from_id(GraphScope::current().binary(Op::Sub, a.id(), b.id())); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::from_id(GraphScope::current().binary(Op::Mul, a.id(), b.id())); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::from_id(GraphScope::current().binary(Op::Div, a.id(), b.id())); }
Expr operator-(const Expr& a) { return Expr::from_id(GraphScope::current().unary(Op::Neg, a.id())); }

Expr sqrt(const Expr& a) { return Expr::from_id(GraphScope::current().unary(Op::Sqrt, a.id())); }
Expr acos(const Expr& a) { return Expr::from_id(GraphScope::current().unary(Op::Acos, a.id())); }
Expr square(const Expr& a) { return Expr::from_id(GraphScope::current().unary(Op::Sqr, a.id())); }
Expr min(const Expr& a, const Expr& b) { return Expr::from_id(GraphScope::current().binary(Op::Min, a.id(), b.id())); }
Expr max(const Expr& a, const Expr& b) { return Expr::from_id(GraphScope::current().binary(Op::Max, a.id(), b.id())); }
Expr segment_area_below(const Expr& t) {
    return Expr::from_id(GraphScope::current().unary(Op::SegmentArea, t.id()));
}

}  // namespace sqdisk::expr
