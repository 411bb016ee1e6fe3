#pragma once

#include "forge/egraph.hpp"
#include "forge/expr.hpp"
#include "forge/rules.hpp"

#include <optional>
#include <vector>

namespace forge {

enum class Classification {
    Candidate,
    Duplicate,     // equal to another candidate for every meaning of thefunc
    Composite,     // covered by a composition of core identities
    Trivial,       // exactly thefunc(x)
    Definitional,  // restates the definition of f
    Core,
};

std::string_view classification_name(Classification c);

// A candidate equality f(x) = rhs[thefunc := f]. When rhs contains a
// single thefunc call the identity has the range-reduction form
// s(f(t(x))) and carries its decomposition.
struct Identity {
    ExprPtr rhs;
    int thefunc_count = 0;
    std::optional<std::pair<ExprPtr, ExprPtr>> decomposition; // (s over y, t over x)
    Classification classification = Classification::Candidate;
    std::uint64_t cost = 0;

    static Identity from_rhs(ExprPtr rhs);
    bool is_trivial() const;
};

// s/t split for single-call identities: s is the rhs with the thefunc
// subtree replaced by the hole variable y, t is the call's argument.
std::optional<std::pair<ExprPtr, ExprPtr>> decompose(const Identity& i);

// The two directed rules encoding thefunc(a) = f(a). Empty when the
// body is a bare variable (the seed union already covers that case).
std::vector<Rule> defining_rules(const ExprPtr& f);

struct SynthesisConfig {
    RunBudget budget;
    std::size_t candidate_cap = 512;
};

struct SynthesisResult {
    std::vector<Identity> candidates; // lowest extraction cost first
    std::size_t raw_extractions = 0;
    std::size_t thefunc_free_discarded = 0;
    bool capped = false;
    RunReport run;
};

// Phase 1: seed an e-graph with thefunc(x) = f(x), saturate, and
// harvest every formulation of the seed class that still calls
// thefunc. May throw SoundnessError (fatal for the benchmark).
SynthesisResult synthesize(const ExprPtr& f, const std::vector<Rule>& rules,
                           const SynthesisConfig& config,
                           EGraph* graph_out = nullptr);

std::uint64_t synthesis_cost(const Expr& e);

} // namespace forge
