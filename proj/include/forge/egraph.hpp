#pragma once

#include "forge/expr.hpp"
#include "forge/rules.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <vector>

namespace forge {

using ClassId = std::uint32_t;

struct NodeLabel {
    enum class Kind : std::uint8_t { Const, Var, Operator };
    Kind kind = Kind::Var;
    Op op = Op::Add;    // when Operator
    RationalPi value;   // when Const

    static NodeLabel constant(RationalPi v)
    {
        NodeLabel l;
        l.kind = Kind::Const;
        l.value = v;
        return l;
    }
    static NodeLabel var_x()
    {
        NodeLabel l;
        l.kind = Kind::Var;
        return l;
    }
    static NodeLabel operation(Op op)
    {
        NodeLabel l;
        l.kind = Kind::Operator;
        l.op = op;
        return l;
    }

    bool is_thefunc() const { return kind == Kind::Operator && op == Op::TheFunc; }
    friend bool operator==(const NodeLabel&, const NodeLabel&) = default;
};

struct ENode {
    NodeLabel label;
    std::vector<ClassId> kids;
    friend bool operator==(const ENode&, const ENode&) = default;
};

struct ENodeHash {
    std::size_t operator()(const ENode& n) const;
};

// Per-class analysis data, recomputed to fixpoint on every rebuild:
// the folded constant value (if any) and whether the class contains a
// representative with no thefunc call.
struct EClass {
    std::vector<ENode> nodes;
    std::optional<RationalPi> constant;
    bool thefunc_free = false;
};

struct RunBudget {
    int max_iterations = 4;
    std::size_t max_enodes = 100000;
    double timeout_seconds = 30.0;
};

enum class StopReason { Saturated, IterationLimit, NodeLimit, Timeout };

std::string_view stop_reason_name(StopReason r);

struct RunReport {
    int iterations = 0;
    StopReason stop = StopReason::Saturated;
    std::size_t enodes = 0;
    std::size_t classes = 0;

    bool exhausted() const { return stop != StopReason::Saturated; }
};

// Thrown when two distinct foldable constants end up in one e-class,
// which would let the rule set prove 0 = 1. Always a rule-set defect.
struct SoundnessError : std::runtime_error {
    RationalPi first, second;
    SoundnessError(RationalPi a, RationalPi b);
};

// Additive extraction cost: operator units plus, as a tie-breaker, the
// number of negative constant leaves (so x + 2pi beats x - (-2pi) and
// a - b beats 1 + (-2)*... forms of equal size). Lexicographic order
// over componentwise sums keeps the bottom-up extraction optimal.
struct NodeCost {
    std::uint64_t units = 0;
    std::uint64_t neg_consts = 0;

    NodeCost operator+(const NodeCost& o) const
    {
        return {units + o.units, neg_consts + o.neg_consts};
    }
    friend auto operator<=>(const NodeCost&, const NodeCost&) = default;
};

struct ExtractCost {
    // Every operator costs 1 unit plus its children; thefunc costs this
    // much plus its child. 0 makes extraction prefer formulations
    // through the abstract function, 1 is the neutral setting.
    std::uint64_t thefunc_cost = 1;

    NodeCost label_cost(const NodeLabel& l) const
    {
        NodeCost c;
        c.units = l.is_thefunc() ? thefunc_cost : 1;
        if (l.kind == NodeLabel::Kind::Const && l.value.coeff.is_negative())
            c.neg_consts = 1;
        return c;
    }
};

class EGraph {
public:
    explicit EGraph(std::size_t max_enodes = 100000)
        : max_enodes_(max_enodes) {}

    ClassId add_expr(const Expr& e);
    ClassId add_enode(ENode n);
    // Merges two classes; returns the canonical id. May throw
    // SoundnessError when distinct constants collide.
    ClassId merge(ClassId a, ClassId b);
    // Restores congruence and analyses after merges.
    void rebuild();

    ClassId find(ClassId id) const;
    const EClass& eclass(ClassId id) const { return classes_[find(id)]; }
    std::size_t class_count() const;
    std::size_t node_count() const { return live_nodes_; }

    std::optional<RationalPi> constant_of(ClassId id) const { return eclass(id).constant; }
    bool thefunc_free(ClassId id) const { return eclass(id).thefunc_free; }

    // Applies rules iteration-wise (match everything against the frozen
    // graph, then apply all matches, then rebuild) until saturation or
    // budget. Deterministic: rules in given order, matches in e-class
    // id order. Rules flagged unsound are rejected.
    RunReport run(const std::vector<Rule>& rules, const RunBudget& budget);

    Expr extract_best(ClassId id, const ExtractCost& cost) const;
    // One expression per e-node of the class: the node's operator over
    // the best extraction of each child class. Textual duplicates are
    // removed; order follows the class's node list.
    std::vector<Expr> extract_all_nodes(ClassId id, const ExtractCost& cost) const;

    // Fails (returns a description) if congruence or hashcons
    // consistency is violated; used by tests.
    std::optional<std::string> audit() const;

    std::vector<ClassId> canonical_classes() const;
    void dump_dot(std::ostream& os) const;

private:
    struct Extraction;

    ENode canonicalize(ENode n) const;
    std::optional<RationalPi> fold_node(const ENode& n) const;
    void recompute_analyses();
    bool congruence_pass();
    Extraction extract_all(const ExtractCost& cost) const;
    Expr build_expr(const Extraction& ex, ClassId id) const;

    std::size_t max_enodes_ = 100000;
    std::size_t live_nodes_ = 0;
    mutable std::vector<ClassId> parent_;
    std::vector<EClass> classes_;
    std::unordered_map<ENode, ClassId, ENodeHash> hashcons_;
};

// Pattern matching for rewrite rules. A substitution maps the pattern
// variables a, b, c to class ids.
struct PatternSubst {
    std::array<std::int64_t, 3> bind{-1, -1, -1};

    std::optional<ClassId> get(int slot) const
    {
        return bind[slot] < 0 ? std::nullopt : std::make_optional(static_cast<ClassId>(bind[slot]));
    }
};

int pattern_var_slot(const std::string& name);

std::vector<PatternSubst> match_pattern(const EGraph& g, const Expr& pattern, ClassId id);
ClassId instantiate_pattern(EGraph& g, const Expr& pattern, const PatternSubst& subst);

} // namespace forge
