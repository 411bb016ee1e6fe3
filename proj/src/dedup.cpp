#include "forge/dedup.hpp"

#include <map>

namespace forge {

DedupResult dedup(const std::vector<Identity>& candidates, const std::vector<Rule>& rules,
                  const RunBudget& budget)
{
    DedupResult result;
    EGraph g(budget.max_enodes);
    ClassId anchor = g.add_expr(*Expr::unary(Op::TheFunc, Expr::var("x")));
    std::vector<ClassId> ids;
    ids.reserve(candidates.size());
    for (const auto& c : candidates)
        ids.push_back(g.add_expr(*c.rhs));
    g.rebuild();

    result.run = g.run(rules, budget);
    result.budget_exhausted = result.run.exhausted();

    std::map<ClassId, std::size_t> group_of;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        ClassId cls = g.find(ids[i]);
        auto it = group_of.find(cls);
        if (it == group_of.end()) {
            group_of.emplace(cls, result.groups.size());
            result.groups.push_back({i});
        } else {
            result.groups[it->second].push_back(i);
        }
    }

    ExtractCost cost{1};
    result.representatives.reserve(result.groups.size());
    ClassId trivial_cls = g.find(anchor);
    for (std::size_t gi = 0; gi < result.groups.size(); ++gi) {
        ClassId cls = g.find(ids[result.groups[gi][0]]);
        if (cls == trivial_cls)
            result.trivial_group = gi;
        Identity rep = Identity::from_rhs(std::make_shared<Expr>(g.extract_best(cls, cost)));
        result.representatives.push_back(std::move(rep));
    }
    return result;
}

} // namespace forge
