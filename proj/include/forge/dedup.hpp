#pragma once

#include "forge/identity.hpp"

#include <cstddef>
#include <vector>

namespace forge {

struct DedupResult {
    // Partition of candidate indices; groups ordered by their smallest
    // member. One representative per group, extracted with thefunc
    // cost 1 from the dedup e-graph.
    std::vector<std::vector<std::size_t>> groups;
    std::vector<Identity> representatives;
    // Group merged with the bare thefunc(x) term, if any.
    std::size_t trivial_group = static_cast<std::size_t>(-1);
    bool budget_exhausted = false;
    RunReport run;

    bool has_trivial_group() const { return trivial_group != static_cast<std::size_t>(-1); }
};

// Phase 2a: groups candidates that are equal for every possible
// meaning of thefunc. The e-graph holds every candidate plus the bare
// term thefunc(x) and runs the rule set *without* the defining rules,
// so the function symbol stays uninterpreted. Budget exhaustion can
// only under-merge, which keeps the grouping conservative.
DedupResult dedup(const std::vector<Identity>& candidates, const std::vector<Rule>& rules,
                  const RunBudget& budget);

} // namespace forge
