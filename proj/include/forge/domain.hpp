#pragma once

#include "forge/expr.hpp"

#include <map>
#include <optional>
#include <vector>

namespace forge {

// Invalid-domain predicate shapes for the operators that can be
// undefined over the reals. All other operators are everywhere-defined
// given defined arguments.
enum class DomainPredicate {
    SecondArgZero,       // a/b, atan2(y, x): divisor / second arg is 0
    OutsideUnitInterval, // asin, acos: |arg| > 1
    NonPositive,         // log: arg <= 0
    AtMostMinusOne,      // log1p: arg <= -1
    Negative,            // sqrt: arg < 0
};

class DomainTable {
public:
    static const DomainTable& standard();

    std::optional<DomainPredicate> predicate(Op op) const;
    const std::vector<Op>& restricted_ops() const { return restricted_; }

    // Predicate check on long double arguments (evaluators with other
    // scalar types implement the same switch themselves).
    bool invalid(Op op, const std::vector<long double>& args) const;

private:
    std::map<Op, DomainPredicate> predicates_;
    std::vector<Op> restricted_;
};

} // namespace forge
