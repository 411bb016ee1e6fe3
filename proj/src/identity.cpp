#include "forge/identity.hpp"

#include <algorithm>

namespace forge {

std::string_view classification_name(Classification c)
{
    switch (c) {
    case Classification::Candidate: return "candidate";
    case Classification::Duplicate: return "duplicate";
    case Classification::Composite: return "composite";
    case Classification::Trivial: return "trivial";
    case Classification::Definitional: return "definitional";
    case Classification::Core: return "core";
    }
    return "?";
}

bool Identity::is_trivial() const
{
    return rhs->is_app() && rhs->op() == Op::TheFunc && rhs->child(0)->is_var()
           && rhs->child(0)->name() == "x";
}

Identity Identity::from_rhs(ExprPtr rhs_in)
{
    Identity id;
    id.rhs = std::move(rhs_in);
    id.thefunc_count = id.rhs->count_op(Op::TheFunc);
    id.cost = synthesis_cost(*id.rhs);
    id.decomposition = decompose(id);
    if (id.is_trivial())
        id.classification = Classification::Trivial;
    return id;
}

std::uint64_t synthesis_cost(const Expr& e)
{
    std::uint64_t c = (e.is_app() && e.op() == Op::TheFunc) ? 0 : 1;
    if (e.is_app())
        for (const auto& k : e.children())
            c += synthesis_cost(*k);
    return c;
}

namespace {

// Replaces the unique thefunc subtree with the hole variable y.
ExprPtr carve_hole(const ExprPtr& e)
{
    if (e->is_app() && e->op() == Op::TheFunc)
        return Expr::var("y");
    if (!e->is_app())
        return e;
    std::vector<ExprPtr> kids;
    kids.reserve(e->children().size());
    for (const auto& c : e->children())
        kids.push_back(carve_hole(c));
    return Expr::app(e->op(), std::move(kids));
}

ExprPtr find_thefunc_arg(const ExprPtr& e)
{
    if (e->is_app() && e->op() == Op::TheFunc)
        return e->child(0);
    if (e->is_app())
        for (const auto& c : e->children())
            if (auto t = find_thefunc_arg(c))
                return t;
    return nullptr;
}

} // namespace

std::optional<std::pair<ExprPtr, ExprPtr>> decompose(const Identity& i)
{
    if (i.thefunc_count != 1)
        return std::nullopt;
    ExprPtr s = carve_hole(i.rhs);
    ExprPtr t = find_thefunc_arg(i.rhs);
    return std::make_pair(std::move(s), std::move(t));
}

std::vector<Rule> defining_rules(const ExprPtr& f)
{
    ExprPtr body_pattern = substitute_var(f, "x", Expr::var("a"));
    if (body_pattern->is_var())
        return {}; // f(x) = x: the seed union says everything there is to say
    ExprPtr call = Expr::unary(Op::TheFunc, Expr::var("a"));

    Rule fwd;
    fwd.name = "def-thefunc";
    fwd.lhs = body_pattern;
    fwd.rhs = call;
    fwd.status = RuleStatus::CuratedSound;

    Rule rev;
    rev.name = "def-thefunc-rev";
    rev.lhs = call;
    rev.rhs = body_pattern;
    rev.status = RuleStatus::CuratedSound;

    return {fwd, rev};
}

SynthesisResult synthesize(const ExprPtr& f, const std::vector<Rule>& rules,
                           const SynthesisConfig& config, EGraph* graph_out)
{
    if (f->contains_op(Op::TheFunc))
        throw std::invalid_argument("benchmark expression already calls thefunc");
    auto vars = f->variables();
    for (const auto& v : vars)
        if (v != "x")
            throw std::invalid_argument("benchmark expression uses variable '" + v + "'");

    SynthesisResult result;
    EGraph g(config.budget.max_enodes);
    ClassId f_id = g.add_expr(*f);
    ClassId seed = g.add_expr(*Expr::unary(Op::TheFunc, Expr::var("x")));
    g.merge(f_id, seed);
    g.rebuild();

    std::vector<Rule> all = rules;
    for (auto& r : defining_rules(f))
        all.push_back(std::move(r));

    result.run = g.run(all, config.budget);

    ExtractCost cost{0};
    std::vector<Expr> exprs = g.extract_all_nodes(g.find(seed), cost);
    result.raw_extractions = exprs.size();

    for (Expr& e : exprs) {
        auto rhs = std::make_shared<Expr>(std::move(e));
        if (rhs->count_op(Op::TheFunc) == 0) {
            ++result.thefunc_free_discarded;
            continue;
        }
        result.candidates.push_back(Identity::from_rhs(std::move(rhs)));
    }

    std::stable_sort(result.candidates.begin(), result.candidates.end(),
                     [](const Identity& a, const Identity& b) { return a.cost < b.cost; });
    if (result.candidates.size() > config.candidate_cap) {
        result.candidates.resize(config.candidate_cap);
        result.capped = true;
    }

    if (graph_out)
        *graph_out = std::move(g);
    return result;
}

} // namespace forge
