#pragma once

#include "forge/domain.hpp"
#include "forge/expr.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace forge {

enum class RuleStatus { CuratedSound, Validated, FlaggedUnsound };

std::string_view rule_status_name(RuleStatus s);

// A directed (or bidirectional) rewrite over patterns in a, b, c.
struct Rule {
    std::string name;
    ExprPtr lhs;
    ExprPtr rhs;
    bool bidirectional = false;
    RuleStatus status = RuleStatus::CuratedSound;
};

struct RuleFileError : std::runtime_error {
    int line;
    RuleFileError(std::string msg, int line_no)
        : std::runtime_error(std::move(msg)), line(line_no) {}
};

// Text format, one rule per line:
//   name: LHS => RHS     directed
//   name: LHS <=> RHS    bidirectional
// with `;` comments. Pattern variables are a, b, c. Duplicate names and
// right-hand variables unbound on the left are rejected.
std::vector<Rule> parse_rules(std::string_view text);
std::vector<Rule> load_rules(const std::string& path);

// Expands bidirectional rules into two directed rules (forward, then
// reverse with a `-rev` suffix), preserving file order.
std::vector<Rule> rule_closure(const std::vector<Rule>& rules);

struct RuleValidation {
    RuleStatus status = RuleStatus::Validated;
    std::map<std::string, double> witness; // assignment reproducing the violation
    std::string reason;
};

// Sampling falsifier for rule soundness. An e-graph merge asserts the
// two sides equal wherever either is defined, so a safe rule needs both
// sides defined on the same set and numerically equal there. Pattern
// variables are drawn from a fixed grid crossed with `samples` random
// assignments; a mismatch in definedness or value flags the rule with a
// concrete witness. This is a falsifier, not a prover.
RuleValidation validate_rule(const Rule& r, const DomainTable& table, int samples,
                             std::uint64_t seed = 0x5eedf00dULL);

} // namespace forge
