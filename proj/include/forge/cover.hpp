#pragma once

#include "forge/identity.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace forge {

// A proven composition fact: I_i after I_j is equal, for every meaning
// of thefunc, to I_k.
struct CoverageFact {
    std::size_t i = 0, j = 0, k = 0;
    friend bool operator==(const CoverageFact&, const CoverageFact&) = default;
    friend auto operator<=>(const CoverageFact&, const CoverageFact&) = default;
};

// Substitutes inner into every thefunc call of outer:
// (I_outer ∘ I_inner)(x) with thefunc(u) becoming inner.rhs[x := u].
ExprPtr compose_identities(const Identity& outer, const Identity& inner);

struct FactResult {
    std::vector<CoverageFact> facts;                               // sorted, deduplicated
    std::vector<std::pair<std::size_t, std::size_t>> collapses;    // I_i ∘ I_j ≡ thefunc(x)
    bool budget_exhausted = false;
    RunReport run;
};

// Phase 2b discovery: one e-graph holding every identity and all n^2
// pairwise compositions, rules run with thefunc uninterpreted. A fact
// is emitted whenever a composition lands in an identity's class; a
// collapse when it lands in the class of the bare thefunc(x).
FactResult discover_facts(const std::vector<Identity>& identities,
                          const std::vector<Rule>& rules, const RunBudget& budget);

struct Derivation {
    std::size_t k = 0;       // covered identity
    std::size_t via_i = 0;   // fact that covered it
    std::size_t via_j = 0;
    std::uint64_t age = 0;   // derivation weight; core members have age 1
};

struct CoreResult {
    std::vector<std::size_t> core;          // sorted identity indices
    std::vector<Derivation> certificate;    // how each non-core identity is covered
};

// Minimum-cardinality core: smallest S such that the monotone closure
// of S under the facts covers everything. Exact search by increasing
// cardinality over the fact targets (identities no fact can produce
// are mandatory); first feasible subset in lexicographic order wins.
// The closure's finite derivations are exactly what positive age
// variables demand, so self-supporting facts like (k,k,k) never cover.
CoreResult minimize_core(std::size_t n, const std::vector<CoverageFact>& facts);

// The same problem in CPLEX LP text form (binary membership and
// selector variables, integer ages with big-M = n + 1) for external
// cross-checking.
std::string emit_lp(std::size_t n, const std::vector<CoverageFact>& facts);

} // namespace forge
