#pragma once

#include "forge/identity.hpp"

namespace forge {

struct FilterOutcome {
    bool definitional = false;
    bool budget_exhausted = false; // when set and not definitional, the verdict is conservative
};

// Phase 3a: an identity is definitional when its right-hand side is
// equal, for arbitrary thefunc, to an expression that never calls
// thefunc. Detected by the thefunc-free class analysis after running
// the rules (without the defining equality) on the rhs alone.
FilterOutcome is_definitional_direct(const Identity& i, const std::vector<Rule>& rules,
                                     const RunBudget& budget);

// Phase 3b: inject the equation thefunc(x) - rhs = 0 into an e-graph
// (thefunc otherwise uninterpreted) and ask whether thefunc(x) itself
// becomes equal to a thefunc-free expression. Catches definitional
// identities that only the equation as a whole can expose.
FilterOutcome is_definitional_equation(const Identity& i, const ExprPtr& f,
                                       const std::vector<Rule>& rules, const RunBudget& budget);

} // namespace forge
