#include "forge/egraph.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <queue>
#include <unordered_set>
#include <set>
#include <sstream>

namespace forge {

std::size_t ENodeHash::operator()(const ENode& n) const
{
    std::size_t h = static_cast<std::size_t>(n.label.kind);
    auto mix = [&h](std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    if (n.label.kind == NodeLabel::Kind::Operator)
        mix(static_cast<std::size_t>(n.label.op));
    else if (n.label.kind == NodeLabel::Kind::Const)
        mix(hash_rational_pi(n.label.value));
    for (ClassId k : n.kids)
        mix(k);
    return h;
}

std::string_view stop_reason_name(StopReason r)
{
    switch (r) {
    case StopReason::Saturated: return "saturated";
    case StopReason::IterationLimit: return "iteration-limit";
    case StopReason::NodeLimit: return "node-limit";
    case StopReason::Timeout: return "timeout";
    }
    return "?";
}

namespace {

std::string rational_pi_text(const RationalPi& v)
{
    if (v.pi_degree == 0)
        return v.coeff.to_string();
    if (v.coeff == Rational::integer(1))
        return "PI";
    return "(* " + v.coeff.to_string() + " PI)";
}

} // namespace

SoundnessError::SoundnessError(RationalPi a, RationalPi b)
    : std::runtime_error("soundness sentinel: e-class asserts " + rational_pi_text(a)
                         + " = " + rational_pi_text(b) + "; the rule set is unsound"),
      first(a), second(b)
{
}

ClassId EGraph::find(ClassId id) const
{
    while (parent_[id] != id) {
        parent_[id] = parent_[parent_[id]];
        id = parent_[id];
    }
    return id;
}

std::size_t EGraph::class_count() const
{
    std::size_t n = 0;
    for (ClassId i = 0; i < parent_.size(); ++i)
        if (find(i) == i)
            ++n;
    return n;
}

std::vector<ClassId> EGraph::canonical_classes() const
{
    std::vector<ClassId> ids;
    for (ClassId i = 0; i < parent_.size(); ++i)
        if (find(i) == i)
            ids.push_back(i);
    return ids;
}

ENode EGraph::canonicalize(ENode n) const
{
    for (ClassId& k : n.kids)
        k = find(k);
    return n;
}

ClassId EGraph::add_enode(ENode n)
{
    n = canonicalize(std::move(n));
    auto it = hashcons_.find(n);
    if (it != hashcons_.end())
        return find(it->second);

    ClassId id = static_cast<ClassId>(parent_.size());
    parent_.push_back(id);
    classes_.emplace_back();
    EClass& cl = classes_.back();
    cl.nodes.push_back(n);
    ++live_nodes_;

    if (auto c = fold_node(n))
        cl.constant = c;
    bool free = true;
    if (n.label.is_thefunc())
        free = false;
    else
        for (ClassId k : n.kids)
            free = free && classes_[find(k)].thefunc_free;
    cl.thefunc_free = free;

    hashcons_.emplace(std::move(n), id);
    return id;
}

ClassId EGraph::add_expr(const Expr& e)
{
    switch (e.kind()) {
    case Expr::Kind::Num:
        return add_enode(ENode{NodeLabel::constant(e.value()), {}});
    case Expr::Kind::Var:
        return add_enode(ENode{NodeLabel::var_x(), {}});
    case Expr::Kind::App: {
        std::vector<ClassId> kids;
        kids.reserve(e.children().size());
        for (const auto& c : e.children())
            kids.push_back(add_expr(*c));
        return add_enode(ENode{NodeLabel::operation(e.op()), std::move(kids)});
    }
    }
    throw std::logic_error("bad expr kind");
}

std::optional<RationalPi> EGraph::fold_node(const ENode& n) const
{
    if (n.label.kind == NodeLabel::Kind::Const)
        return n.label.value;
    if (n.label.kind != NodeLabel::Kind::Operator)
        return std::nullopt;
    std::vector<RationalPi> vals;
    vals.reserve(n.kids.size());
    for (ClassId k : n.kids) {
        const auto& c = classes_[find(k)].constant;
        if (!c)
            return std::nullopt;
        vals.push_back(*c);
    }
    switch (n.label.op) {
    case Op::Add: return rp_add(vals[0], vals[1]);
    case Op::Sub: return rp_sub(vals[0], vals[1]);
    case Op::Mul: return rp_mul(vals[0], vals[1]);
    case Op::Div: return rp_div(vals[0], vals[1]);
    case Op::Neg: return rp_neg(vals[0]);
    default: return std::nullopt;
    }
}

ClassId EGraph::merge(ClassId a, ClassId b)
{
    a = find(a);
    b = find(b);
    if (a == b)
        return a;
    if (b < a)
        std::swap(a, b); // smaller id stays canonical

    EClass& ca = classes_[a];
    EClass& cb = classes_[b];
    if (ca.constant && cb.constant && !(*ca.constant == *cb.constant))
        throw SoundnessError(*ca.constant, *cb.constant);
    if (!ca.constant)
        ca.constant = cb.constant;
    ca.thefunc_free = ca.thefunc_free || cb.thefunc_free;

    ca.nodes.insert(ca.nodes.end(), cb.nodes.begin(), cb.nodes.end());
    cb.nodes.clear();
    cb.nodes.shrink_to_fit();
    parent_[b] = a;
    return a;
}

bool EGraph::congruence_pass()
{
    // From-scratch repair: recanonicalize every node, dedupe within
    // classes, and rebuild the hashcons; congruent duplicates across
    // classes force merges.
    bool merged_any = false;
    hashcons_.clear();
    std::vector<std::pair<ClassId, ClassId>> pending;
    live_nodes_ = 0;
    std::unordered_set<ENode, ENodeHash> in_class;
    for (ClassId id = 0; id < parent_.size(); ++id) {
        if (find(id) != id)
            continue;
        EClass& cl = classes_[id];
        std::vector<ENode> fresh;
        fresh.reserve(cl.nodes.size());
        in_class.clear();
        for (ENode& n : cl.nodes) {
            ENode cn = canonicalize(std::move(n));
            if (!in_class.insert(cn).second)
                continue;
            auto it = hashcons_.find(cn);
            if (it == hashcons_.end()) {
                hashcons_.emplace(cn, id);
            } else if (find(it->second) != id) {
                pending.emplace_back(find(it->second), id);
            }
            fresh.push_back(std::move(cn));
        }
        live_nodes_ += fresh.size();
        cl.nodes = std::move(fresh);
    }
    for (auto [x, y] : pending) {
        if (find(x) != find(y)) {
            merge(x, y);
            merged_any = true;
        }
    }
    return merged_any;
}

void EGraph::recompute_analyses()
{
    // Constants: fixpoint of the fold table over the congruence classes.
    // A conflicting join trips the soundness sentinel.
    for (ClassId id = 0; id < parent_.size(); ++id)
        if (find(id) == id)
            classes_[id].constant.reset();
    bool changed = true;
    while (changed) {
        changed = false;
        for (ClassId id = 0; id < parent_.size(); ++id) {
            if (find(id) != id)
                continue;
            EClass& cl = classes_[id];
            for (const ENode& n : cl.nodes) {
                auto v = fold_node(n);
                if (!v)
                    continue;
                if (!cl.constant) {
                    cl.constant = v;
                    changed = true;
                } else if (!(*cl.constant == *v)) {
                    throw SoundnessError(*cl.constant, *v);
                }
            }
        }
    }

    // thefunc-free: a class qualifies when some node avoids thefunc and
    // has only thefunc-free children.
    for (ClassId id = 0; id < parent_.size(); ++id)
        if (find(id) == id)
            classes_[id].thefunc_free = false;
    changed = true;
    while (changed) {
        changed = false;
        for (ClassId id = 0; id < parent_.size(); ++id) {
            if (find(id) != id)
                continue;
            EClass& cl = classes_[id];
            if (cl.thefunc_free)
                continue;
            for (const ENode& n : cl.nodes) {
                if (n.label.is_thefunc())
                    continue;
                bool free = true;
                for (ClassId k : n.kids)
                    free = free && classes_[find(k)].thefunc_free;
                if (free) {
                    cl.thefunc_free = true;
                    changed = true;
                    break;
                }
            }
        }
    }
}

void EGraph::rebuild()
{
    while (true) {
        bool merged = congruence_pass();
        if (merged)
            continue;
        recompute_analyses();

        // Materialize folded constants as nodes so rules can match the
        // literal (x + (pi - pi) needs a 0 in the class). Structural
        // nodes built purely from constants (a mul of two constant
        // classes and so on) are discarded: the fold analysis already
        // says everything they say, and leaving them in place only
        // grows match surface inside constant classes that manufactures
        // exotic junk. Nodes with at least one non-constant child stay;
        // equalities like an injected term = 0 depend on them.
        bool added = false;
        for (ClassId id = 0; id < parent_.size(); ++id) {
            if (find(id) != id)
                continue;
            EClass& cl = classes_[id];
            if (!cl.constant)
                continue;
            ENode cn{NodeLabel::constant(*cl.constant), {}};
            auto it = hashcons_.find(cn);
            if (it != hashcons_.end() && find(it->second) != id) {
                merge(it->second, id);
                added = true;
                continue;
            }
            bool has_const_node = false;
            std::vector<ENode> kept;
            kept.reserve(cl.nodes.size());
            for (ENode& n : cl.nodes) {
                if (n == cn) {
                    has_const_node = true;
                    kept.push_back(std::move(n));
                    continue;
                }
                bool all_const_kids = true;
                for (ClassId k : n.kids)
                    all_const_kids = all_const_kids && classes_[find(k)].constant.has_value();
                if (all_const_kids && !n.kids.empty()) {
                    hashcons_.erase(n);
                    --live_nodes_;
                    added = true;
                } else if (n.kids.empty() && n.label.kind == NodeLabel::Kind::Const) {
                    // A different spelling of the same value cannot
                    // exist (the sentinel would have tripped); keep.
                    kept.push_back(std::move(n));
                } else {
                    kept.push_back(std::move(n));
                }
            }
            cl.nodes = std::move(kept);
            if (!has_const_node) {
                cl.nodes.push_back(cn);
                hashcons_.emplace(cn, id);
                ++live_nodes_;
                added = true;
            }
        }
        if (!added)
            break;
    }
}

RunReport EGraph::run(const std::vector<Rule>& rules, const RunBudget& budget)
{
    for (const auto& r : rules)
        if (r.status == RuleStatus::FlaggedUnsound)
            throw std::invalid_argument("rule '" + r.name + "' is flagged unsound");

    rebuild();
    RunReport report;
    const auto t0 = std::chrono::steady_clock::now();
    auto timed_out = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
               > budget.timeout_seconds;
    };

    for (int iter = 1; iter <= budget.max_iterations; ++iter) {
        if (timed_out()) {
            report.stop = StopReason::Timeout;
            break;
        }
        std::size_t unions_before = parent_.size() - class_count();
        std::size_t nodes_before = live_nodes_;

        // Root-operator index. Classes whose value is a known constant
        // are not rewritten: everything a rule could say about them is
        // the fold analysis's job, and rewriting them only manufactures
        // structural noise inside constant classes.
        std::vector<ClassId> ids = canonical_classes();
        std::map<Op, std::vector<ClassId>> classes_by_op;
        for (ClassId id : ids) {
            if (classes_[id].constant)
                continue;
            std::uint32_t seen = 0;
            for (const ENode& n : classes_[id].nodes) {
                if (n.label.kind != NodeLabel::Kind::Operator)
                    continue;
                std::uint32_t bit = 1u << static_cast<unsigned>(n.label.op);
                if (seen & bit)
                    continue;
                seen |= bit;
                classes_by_op[n.label.op].push_back(id);
            }
        }

        struct Match {
            std::size_t rule;
            ClassId cls;
            PatternSubst subst;
        };
        std::vector<Match> matches;
        static const std::vector<ClassId> kNone;
        for (std::size_t ri = 0; ri < rules.size(); ++ri) {
            const Expr& lhs = *rules[ri].lhs;
            const std::vector<ClassId>* roots = &kNone;
            if (lhs.is_app()) {
                auto it = classes_by_op.find(lhs.op());
                if (it != classes_by_op.end())
                    roots = &it->second;
            }
            for (ClassId id : *roots) {
                if (find(id) != id)
                    continue;
                for (const auto& s : match_pattern(*this, lhs, id))
                    matches.push_back({ri, id, s});
            }
        }

        bool hit_node_limit = false;
        std::size_t applied = 0;
        for (const auto& m : matches) {
            ClassId rhs = instantiate_pattern(*this, *rules[m.rule].rhs, m.subst);
            merge(find(m.cls), rhs);
            if (live_nodes_ > max_enodes_ || live_nodes_ > budget.max_enodes) {
                hit_node_limit = true;
                break;
            }
            if (++applied % 1024 == 0 && timed_out())
                break;
        }
        rebuild();
        report.iterations = iter;

        if (hit_node_limit) {
            report.stop = StopReason::NodeLimit;
            break;
        }
        if (timed_out()) {
            report.stop = StopReason::Timeout;
            break;
        }
        std::size_t unions_after = parent_.size() - class_count();
        if (unions_after == unions_before && live_nodes_ == nodes_before) {
            report.stop = StopReason::Saturated;
            break;
        }
        if (iter == budget.max_iterations)
            report.stop = StopReason::IterationLimit;
    }

    report.enodes = live_nodes_;
    report.classes = class_count();
    return report;
}

// --------------------------------------------------------------------
// Extraction

namespace {

const NodeCost kInfCost{UINT64_MAX, UINT64_MAX};

int label_rank(const NodeLabel& l)
{
    // thefunc first so that equal-cost formulations through the
    // abstract function win ties; then constants, the variable, and
    // operators with subtraction preferred over addition (ties between
    // a - b and sum-of-negated-terms forms should print as the
    // subtraction).
    if (l.is_thefunc())
        return 0;
    switch (l.kind) {
    case NodeLabel::Kind::Const: return 1;
    case NodeLabel::Kind::Var: return 2;
    case NodeLabel::Kind::Operator:
        return 3 + static_cast<int>(l.op);
    }
    return 99;
}

bool node_preferred(const ENode& a, const ENode& b)
{
    int ra = label_rank(a.label), rb = label_rank(b.label);
    if (ra != rb)
        return ra < rb;
    if (a.label.kind == NodeLabel::Kind::Const && b.label.kind == NodeLabel::Kind::Const) {
        if (!(a.label.value == b.label.value))
            return hash_rational_pi(a.label.value) < hash_rational_pi(b.label.value);
    }
    return a.kids < b.kids;
}

} // namespace

struct EGraph::Extraction {
    std::vector<NodeCost> cost;
    std::vector<const ENode*> pick;
};

// Fixes classes bottom-up in order of increasing best cost, so the
// chosen node's children are always fixed first and the extracted term
// is finite even with zero-cost operators. Dijkstra over the term
// hypergraph: a node becomes a candidate once all its child classes
// are fixed.
EGraph::Extraction EGraph::extract_all(const ExtractCost& cost) const
{
    Extraction ex;
    ex.cost.assign(parent_.size(), kInfCost);
    ex.pick.assign(parent_.size(), nullptr);

    struct Item {
        NodeCost cost;
        ClassId cls;
        const ENode* node;
    };
    auto later = [](const Item& a, const Item& b) {
        if (a.cost != b.cost)
            return a.cost > b.cost;
        if (a.cls != b.cls)
            return a.cls > b.cls;
        return node_preferred(*b.node, *a.node);
    };
    std::priority_queue<Item, std::vector<Item>, decltype(later)> queue(later);

    std::unordered_map<const ENode*, int> waiting;
    std::unordered_map<ClassId, std::vector<std::pair<ClassId, const ENode*>>> watchers;
    std::vector<bool> fixed(parent_.size(), false);

    auto node_cost = [&](const ENode& n) {
        NodeCost c = cost.label_cost(n.label);
        for (ClassId k : n.kids) {
            const NodeCost& kc = ex.cost[find(k)];
            if (kc == kInfCost) {
                c = kInfCost;
                break;
            }
            c = c + kc;
        }
        return c;
    };

    for (ClassId id = 0; id < parent_.size(); ++id) {
        if (find(id) != id)
            continue;
        for (const ENode& n : classes_[id].nodes) {
            if (n.kids.empty()) {
                queue.push({cost.label_cost(n.label), id, &n});
                continue;
            }
            waiting[&n] = static_cast<int>(n.kids.size());
            for (ClassId k : n.kids)
                watchers[find(k)].emplace_back(id, &n);
        }
    }

    while (!queue.empty()) {
        Item it = queue.top();
        queue.pop();
        if (fixed[it.cls])
            continue;
        fixed[it.cls] = true;
        ex.cost[it.cls] = it.cost;
        ex.pick[it.cls] = it.node;
        auto w = watchers.find(it.cls);
        if (w == watchers.end())
            continue;
        for (auto [owner, node] : w->second) {
            auto cnt = waiting.find(node);
            if (cnt == waiting.end())
                continue;
            if (--cnt->second == 0) {
                waiting.erase(cnt);
                if (!fixed[owner])
                    queue.push({node_cost(*node), owner, node});
            }
        }
    }

    // Cost ties between a thefunc node and an ordinary node (e.g.
    // thefunc(-x) vs -(thefunc x) under thefunc cost 0) are settled by
    // the fixing order above, which is arbitrary with respect to this
    // preference. Re-pick thefunc nodes that achieve the optimal class
    // cost whenever doing so keeps the pick graph acyclic; each switch
    // is checked against the current picks, so no cycle can form.
    auto reaches = [&](ClassId from, ClassId target) {
        std::vector<ClassId> stack{find(from)};
        std::set<ClassId> seen;
        while (!stack.empty()) {
            ClassId c = stack.back();
            stack.pop_back();
            if (c == target)
                return true;
            if (!seen.insert(c).second)
                continue;
            const ENode* p = ex.pick[c];
            if (!p)
                continue;
            for (ClassId k : p->kids)
                stack.push_back(find(k));
        }
        return false;
    };
    for (ClassId id = 0; id < parent_.size(); ++id) {
        if (find(id) != id || !ex.pick[id] || ex.pick[id]->label.is_thefunc())
            continue;
        const ENode* best_tf = nullptr;
        for (const ENode& n : classes_[id].nodes) {
            if (!n.label.is_thefunc())
                continue;
            if (node_cost(n) != ex.cost[id])
                continue;
            if (reaches(n.kids[0], id))
                continue;
            if (!best_tf || node_preferred(n, *best_tf))
                best_tf = &n;
        }
        if (best_tf)
            ex.pick[id] = best_tf;
    }
    return ex;
}

Expr EGraph::build_expr(const Extraction& ex, ClassId id) const
{
    id = find(id);
    const ENode* n = ex.pick[id];
    if (!n)
        throw std::logic_error("extraction incomplete: class has no grounded derivation");
    switch (n->label.kind) {
    case NodeLabel::Kind::Const:
        return *Expr::num(n->label.value);
    case NodeLabel::Kind::Var:
        return *Expr::var("x");
    case NodeLabel::Kind::Operator: {
        std::vector<ExprPtr> kids;
        kids.reserve(n->kids.size());
        for (ClassId k : n->kids)
            kids.push_back(std::make_shared<Expr>(build_expr(ex, k)));
        return *Expr::app(n->label.op, std::move(kids));
    }
    }
    throw std::logic_error("bad node label");
}

Expr EGraph::extract_best(ClassId id, const ExtractCost& cost) const
{
    Extraction ex = extract_all(cost);
    return build_expr(ex, id);
}

std::vector<Expr> EGraph::extract_all_nodes(ClassId id, const ExtractCost& cost) const
{
    Extraction ex = extract_all(cost);
    std::vector<Expr> out;
    std::set<std::string> seen;
    for (const ENode& n : classes_[find(id)].nodes) {
        Expr e = [&] {
            switch (n.label.kind) {
            case NodeLabel::Kind::Const:
                return *Expr::num(n.label.value);
            case NodeLabel::Kind::Var:
                return *Expr::var("x");
            case NodeLabel::Kind::Operator: {
                std::vector<ExprPtr> kids;
                kids.reserve(n.kids.size());
                for (ClassId k : n.kids)
                    kids.push_back(std::make_shared<Expr>(build_expr(ex, k)));
                return *Expr::app(n.label.op, std::move(kids));
            }
            }
            throw std::logic_error("bad node label");
        }();
        if (seen.insert(print_expr(e)).second)
            out.push_back(std::move(e));
    }
    return out;
}

std::optional<std::string> EGraph::audit() const
{
    std::unordered_map<ENode, ClassId, ENodeHash> table;
    for (ClassId id = 0; id < parent_.size(); ++id) {
        if (find(id) != id)
            continue;
        for (const ENode& n : classes_[id].nodes) {
            ENode cn = canonicalize(n);
            if (!(cn == n))
                return "node with non-canonical children in class " + std::to_string(id);
            auto [it, inserted] = table.emplace(cn, id);
            if (!inserted && it->second != id)
                return "congruent node in two classes: " + std::to_string(it->second) + " and "
                       + std::to_string(id);
        }
    }
    for (const auto& [node, id] : hashcons_) {
        ENode cn = canonicalize(node);
        auto it = table.find(cn);
        if (it == table.end())
            return "hashcons entry not present in any class";
        if (it->second != find(id))
            return "hashcons entry points at wrong class";
    }
    return std::nullopt;
}

void EGraph::dump_dot(std::ostream& os) const
{
    os << "digraph egraph {\n  compound=true;\n  node [shape=record];\n";
    for (ClassId id = 0; id < parent_.size(); ++id) {
        if (find(id) != id)
            continue;
        os << "  subgraph cluster_" << id << " {\n    label=\"c" << id << "\";\n";
        int i = 0;
        for (const ENode& n : classes_[id].nodes) {
            os << "    n" << id << "_" << i << " [label=\"";
            switch (n.label.kind) {
            case NodeLabel::Kind::Const: os << rational_pi_text(n.label.value); break;
            case NodeLabel::Kind::Var: os << "x"; break;
            case NodeLabel::Kind::Operator: os << op_name(n.label.op); break;
            }
            os << "\"];\n";
            ++i;
        }
        os << "  }\n";
    }
    for (ClassId id = 0; id < parent_.size(); ++id) {
        if (find(id) != id)
            continue;
        int i = 0;
        for (const ENode& n : classes_[id].nodes) {
            for (ClassId k : n.kids)
                os << "  n" << id << "_" << i << " -> n" << find(k) << "_0;\n";
            ++i;
        }
    }
    os << "}\n";
}

// --------------------------------------------------------------------
// Pattern matching

int pattern_var_slot(const std::string& name)
{
    if (name == "a")
        return 0;
    if (name == "b")
        return 1;
    if (name == "c")
        return 2;
    return -1;
}

namespace {

void match_rec(const EGraph& g, const Expr& pat, ClassId id,
               PatternSubst subst, std::vector<PatternSubst>& out)
{
    id = g.find(id);
    switch (pat.kind()) {
    case Expr::Kind::Var: {
        int slot = pattern_var_slot(pat.name());
        if (slot < 0)
            return; // x never appears in rule patterns
        auto bound = subst.get(slot);
        if (bound) {
            if (*bound == id)
                out.push_back(subst);
            return;
        }
        subst.bind[slot] = id;
        out.push_back(subst);
        return;
    }
    case Expr::Kind::Num: {
        const auto& c = g.eclass(id).constant;
        if (c && *c == pat.value())
            out.push_back(subst);
        return;
    }
    case Expr::Kind::App: {
        for (const ENode& n : g.eclass(id).nodes) {
            if (n.label.kind != NodeLabel::Kind::Operator || n.label.op != pat.op()
                || n.kids.size() != pat.children().size())
                continue;
            std::vector<PatternSubst> partial{subst};
            for (std::size_t i = 0; i < n.kids.size() && !partial.empty(); ++i) {
                std::vector<PatternSubst> next;
                for (const auto& s : partial)
                    match_rec(g, *pat.child(i), n.kids[i], s, next);
                partial = std::move(next);
            }
            out.insert(out.end(), partial.begin(), partial.end());
        }
        return;
    }
    }
}

} // namespace

std::vector<PatternSubst> match_pattern(const EGraph& g, const Expr& pattern, ClassId id)
{
    std::vector<PatternSubst> out;
    match_rec(g, pattern, id, PatternSubst{}, out);
    return out;
}

ClassId instantiate_pattern(EGraph& g, const Expr& pattern, const PatternSubst& subst)
{
    switch (pattern.kind()) {
    case Expr::Kind::Var: {
        int slot = pattern_var_slot(pattern.name());
        auto id = subst.get(slot < 0 ? 0 : slot);
        if (slot < 0 || !id)
            throw std::logic_error("unbound pattern variable during instantiation");
        return *id;
    }
    case Expr::Kind::Num:
        return g.add_enode(ENode{NodeLabel::constant(pattern.value()), {}});
    case Expr::Kind::App: {
        std::vector<ClassId> kids;
        kids.reserve(pattern.children().size());
        for (const auto& c : pattern.children())
            kids.push_back(instantiate_pattern(g, *c, subst));
        return g.add_enode(ENode{NodeLabel::operation(pattern.op()), std::move(kids)});
    }
    }
    throw std::logic_error("bad pattern kind");
}

} // namespace forge
