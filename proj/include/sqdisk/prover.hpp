#pragma once

// Branch-and-prune refutation over boxes. A system is proved when every box
// of the search space is shown to violate a hypothesis or to satisfy the
// conclusion under interval evaluation.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqdisk/expr.hpp"

namespace sqdisk {

enum class Rel : std::uint8_t { Le, Lt, Ge, Gt };

struct Atom {
    expr::NodeId lhs = -1;
    Rel rel = Rel::Le;
    expr::NodeId rhs = -1;
};

// Disjunction of atoms.
using Clause = std::vector<Atom>;

struct Variable {
    std::string name;
    Interval range;
};

struct ConstraintSystem {
    std::string name;
    std::vector<Variable> variables;
    std::shared_ptr<const expr::Graph> graph;
    std::vector<Clause> hypotheses;  // conjunction
    Atom conclusion;
};

struct Box {
    std::vector<std::pair<std::string, Interval>> dims;
};

enum class ProofStatus : std::uint8_t { Proved, Undecided, Disproved };
const char* to_string(ProofStatus s);

struct ProofStats {
    std::uint64_t boxes_explored = 0;
    int max_depth = 0;
    double wall_seconds = 0.0;
    std::size_t peak_memory_bytes = 0;  // estimate: live boxes times box size
};

struct ProofResult {
    ProofStatus status = ProofStatus::Proved;
    std::vector<Box> undecided;    // capped at ProverConfig::max_reported_boxes
    std::optional<Box> witness;    // degenerate box at a confirmed counterexample
    ProofStats stats;
};

enum class SplitPolicy : std::uint8_t {
    EarliestAboveMin,  // first variable in declaration order wider than its minimum
    WidestRelative,    // variable with the largest width relative to its initial range
};

struct ProverConfig {
    int max_depth = 60;
    std::vector<double> min_width;  // per variable; empty means default_min_width for all
    double default_min_width = 1e-4;
    int worker_count = 1;
    SplitPolicy split_policy = SplitPolicy::EarliestAboveMin;
    std::uint64_t max_boxes = 0;  // 0 = unbounded; exceeding it yields Undecided
    std::size_t max_reported_boxes = 16;
};

// Tri-state truth of an atom, clause or the whole hypothesis set on a box.
TriBool eval_atom(const Atom& a, std::span<const Interval> values);
TriBool eval_clause(const Clause& c, std::span<const Interval> values);

// Midpoint check in plain reals: true iff every hypothesis holds and the
// conclusion fails there.
bool confirm_counterexample(const ConstraintSystem& system, const Box& box);
bool confirm_counterexample(const ConstraintSystem& system, std::span<const double> point);

// Serial depth-first reference implementation.
ProofResult prove_serial(const ConstraintSystem& system, const ProverConfig& config);
// OpenMP task-parallel implementation; same status as prove_serial.
ProofResult prove_parallel(const ConstraintSystem& system, const ProverConfig& config);
// Dispatches on config.worker_count.
ProofResult prove(const ConstraintSystem& system, const ProverConfig& config);

Box make_box(const ConstraintSystem& system, std::span<const Interval> dims);

// Helper for assembling systems from generic formulas.
class SystemBuilder {
public:
    explicit SystemBuilder(std::string name);

    expr::Expr var(const std::string& name, Interval range);
    void require(expr::Expr lhs, Rel rel, expr::Expr rhs);
    void require_any(std::vector<Atom> atoms);
    Atom atom(expr::Expr lhs, Rel rel, expr::Expr rhs) const { return {lhs.id(), rel, rhs.id()}; }
    ConstraintSystem conclude(expr::Expr lhs, Rel rel, expr::Expr rhs);

private:
    std::shared_ptr<expr::Graph> graph_;
    expr::GraphScope scope_;
    ConstraintSystem sys_;
};

// The automatic lemmas.
std::vector<ConstraintSystem> lemma_catalog();
std::optional<ConstraintSystem> find_lemma(const std::string& name);
std::vector<std::string> lemma_names();

// Per-lemma defaults calibrated for the catalog.
ProverConfig default_config(const ConstraintSystem& system);

}  // namespace sqdisk
