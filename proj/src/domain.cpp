#include "forge/domain.hpp"

namespace forge {

const DomainTable& DomainTable::standard()
{
    static const DomainTable table = [] {
        DomainTable t;
        auto put = [&t](Op op, DomainPredicate p) {
            t.predicates_.emplace(op, p);
            t.restricted_.push_back(op);
        };
        put(Op::Div, DomainPredicate::SecondArgZero);
        put(Op::Asin, DomainPredicate::OutsideUnitInterval);
        put(Op::Acos, DomainPredicate::OutsideUnitInterval);
        put(Op::Log, DomainPredicate::NonPositive);
        put(Op::Log1p, DomainPredicate::AtMostMinusOne);
        put(Op::Sqrt, DomainPredicate::Negative);
        put(Op::Atan2, DomainPredicate::SecondArgZero);
        return t;
    }();
    return table;
}

std::optional<DomainPredicate> DomainTable::predicate(Op op) const
{
    auto it = predicates_.find(op);
    if (it == predicates_.end())
        return std::nullopt;
    return it->second;
}

bool DomainTable::invalid(Op op, const std::vector<long double>& args) const
{
    auto p = predicate(op);
    if (!p)
        return false;
    switch (*p) {
    case DomainPredicate::SecondArgZero: return args[1] == 0.0L;
    case DomainPredicate::OutsideUnitInterval: return args[0] < -1.0L || args[0] > 1.0L;
    case DomainPredicate::NonPositive: return args[0] <= 0.0L;
    case DomainPredicate::AtMostMinusOne: return args[0] <= -1.0L;
    case DomainPredicate::Negative: return args[0] < 0.0L;
    }
    return false;
}

} // namespace forge
