#include "forge/filter.hpp"

namespace forge {

FilterOutcome is_definitional_direct(const Identity& i, const std::vector<Rule>& rules,
                                     const RunBudget& budget)
{
    FilterOutcome out;
    EGraph g(budget.max_enodes);
    ClassId root = g.add_expr(*i.rhs);
    g.rebuild();
    RunReport run = g.run(rules, budget);
    out.definitional = g.thefunc_free(root);
    out.budget_exhausted = run.exhausted();
    return out;
}

FilterOutcome is_definitional_equation(const Identity& i, const ExprPtr& /*f*/,
                                       const std::vector<Rule>& rules, const RunBudget& budget)
{
    FilterOutcome out;
    EGraph g(budget.max_enodes);
    ClassId fx = g.add_expr(*Expr::unary(Op::TheFunc, Expr::var("x")));
    ClassId diff = g.add_expr(*Expr::binary(Op::Sub, Expr::unary(Op::TheFunc, Expr::var("x")), i.rhs));
    ClassId zero = g.add_expr(*Expr::integer(0));
    g.merge(diff, zero);
    g.rebuild();
    RunReport run = g.run(rules, budget);
    out.definitional = g.thefunc_free(fx);
    out.budget_exhausted = run.exhausted();
    return out;
}

} // namespace forge
