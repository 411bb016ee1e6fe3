#include "forge/cover.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace forge {

ExprPtr compose_identities(const Identity& outer, const Identity& inner)
{
    return substitute_thefunc(outer.rhs, inner.rhs);
}

FactResult discover_facts(const std::vector<Identity>& identities,
                          const std::vector<Rule>& rules, const RunBudget& budget)
{
    FactResult result;
    const std::size_t n = identities.size();
    if (n == 0)
        return result;

    EGraph g(budget.max_enodes);
    ClassId anchor = g.add_expr(*Expr::unary(Op::TheFunc, Expr::var("x")));
    std::vector<ClassId> id_cls(n);
    for (std::size_t k = 0; k < n; ++k)
        id_cls[k] = g.add_expr(*identities[k].rhs);
    std::vector<std::vector<ClassId>> comp_cls(n, std::vector<ClassId>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            comp_cls[i][j] = g.add_expr(*compose_identities(identities[i], identities[j]));
    g.rebuild();

    result.run = g.run(rules, budget);
    result.budget_exhausted = result.run.exhausted();

    std::set<CoverageFact> facts;
    ClassId trivial_cls = g.find(anchor);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            ClassId c = g.find(comp_cls[i][j]);
            if (c == trivial_cls)
                result.collapses.emplace_back(i, j);
            for (std::size_t k = 0; k < n; ++k)
                if (c == g.find(id_cls[k]))
                    facts.insert({i, j, k});
        }
    }
    result.facts.assign(facts.begin(), facts.end());
    return result;
}

namespace {

// Fixpoint closure with derivation recording. Facts fire in input
// order; a fact covers its target once both inputs are covered, and
// the recorded age is the sum of the inputs' ages (core members have
// age 1), which keeps every derivation finite and acyclic.
bool close_over(std::size_t n, const std::vector<CoverageFact>& facts,
                const std::vector<std::size_t>& seed,
                std::vector<Derivation>* certificate)
{
    std::vector<std::uint64_t> age(n, 0); // 0 = uncovered
    for (std::size_t s : seed)
        age[s] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& f : facts) {
            if (age[f.k] != 0 || age[f.i] == 0 || age[f.j] == 0)
                continue;
            age[f.k] = age[f.i] + age[f.j];
            if (certificate)
                certificate->push_back({f.k, f.i, f.j, age[f.k]});
            changed = true;
        }
    }
    return std::all_of(age.begin(), age.end(), [](std::uint64_t a) { return a != 0; });
}

} // namespace

CoreResult minimize_core(std::size_t n, const std::vector<CoverageFact>& facts)
{
    for (const auto& f : facts)
        if (f.i >= n || f.j >= n || f.k >= n)
            throw std::invalid_argument("coverage fact references an invalid identity index");

    CoreResult result;
    if (n == 0)
        return result;

    // Identities no fact can produce must be in every feasible core.
    std::vector<bool> is_target(n, false);
    for (const auto& f : facts)
        is_target[f.k] = true;
    std::vector<std::size_t> mandatory, optional;
    for (std::size_t k = 0; k < n; ++k)
        (is_target[k] ? optional : mandatory).push_back(k);

    std::vector<std::size_t> chosen;
    auto feasible = [&](const std::vector<std::size_t>& extra,
                        std::vector<Derivation>* cert) {
        std::vector<std::size_t> seed = mandatory;
        seed.insert(seed.end(), extra.begin(), extra.end());
        return close_over(n, facts, seed, cert);
    };

    // Increasing cardinality, lexicographic subsets of the optional
    // identities: the first feasible set is the minimum, with ties
    // preferring lower indices.
    for (std::size_t extra = 0; extra <= optional.size(); ++extra) {
        std::vector<std::size_t> pick(extra);
        // Standard combination enumeration in lexicographic order.
        std::vector<std::size_t> idx(extra);
        for (std::size_t i = 0; i < extra; ++i)
            idx[i] = i;
        bool more = true;
        while (more) {
            for (std::size_t i = 0; i < extra; ++i)
                pick[i] = optional[idx[i]];
            std::vector<Derivation> cert;
            if (feasible(pick, &cert)) {
                result.core = mandatory;
                result.core.insert(result.core.end(), pick.begin(), pick.end());
                std::sort(result.core.begin(), result.core.end());
                result.certificate = std::move(cert);
                return result;
            }
            if (extra == 0)
                break;
            // advance combination
            std::size_t i = extra;
            while (i > 0) {
                --i;
                if (idx[i] != i + optional.size() - extra) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < extra; ++j)
                        idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0)
                    more = false;
            }
        }
    }

    // Unreachable: taking everything always covers everything.
    result.core.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        result.core[k] = k;
    return result;
}

std::string emit_lp(std::size_t n, const std::vector<CoverageFact>& facts)
{
    const std::uint64_t big_m = n + 1;
    std::ostringstream os;
    os << "\\ core-identity selection: minimize core size subject to\n";
    os << "\\ every identity being covered by membership (age 1) or by a\n";
    os << "\\ composition fact whose age is the sum of its inputs' ages.\n";
    os << "Minimize\n obj:";
    for (std::size_t k = 0; k < n; ++k)
        os << (k ? " + I" : " I") << k + 1;
    os << "\nSubject To\n";

    std::vector<std::vector<std::size_t>> facts_for(n);
    for (std::size_t fi = 0; fi < facts.size(); ++fi)
        facts_for[facts[fi].k].push_back(fi);

    for (std::size_t k = 0; k < n; ++k) {
        // Disjunction: self-selection or one of the covering facts.
        os << " cover" << k + 1 << ": u" << k + 1 << "_self";
        for (std::size_t fi : facts_for[k])
            os << " + u_f" << fi + 1;
        os << " >= 1\n";
        os << " self" << k + 1 << ": u" << k + 1 << "_self - I" << k + 1 << " <= 0\n";
        // Selected self-cover forces age 1 (ages are >= 1 by bounds).
        os << " selfage" << k + 1 << ": a" << k + 1 << " + " << big_m << " u" << k + 1
           << "_self <= " << big_m + 1 << "\n";
    }
    for (std::size_t fi = 0; fi < facts.size(); ++fi) {
        const auto& f = facts[fi];
        // Selected fact forces a_k = a_i + a_j (two-sided big-M).
        os << " age" << fi + 1 << "lo: a" << f.k + 1 << " - a" << f.i + 1 << " - a" << f.j + 1
           << " + " << big_m << " u_f" << fi + 1 << " <= " << big_m << "\n";
        os << " age" << fi + 1 << "hi: a" << f.i + 1 << " + a" << f.j + 1 << " - a" << f.k + 1
           << " + " << 2 * big_m << " u_f" << fi + 1 << " <= " << 2 * big_m << "\n";
    }
    os << "Bounds\n";
    for (std::size_t k = 0; k < n; ++k)
        os << " 1 <= a" << k + 1 << " <= " << big_m << "\n";
    os << "Generals\n";
    for (std::size_t k = 0; k < n; ++k)
        os << " a" << k + 1 << "\n";
    os << "Binaries\n";
    for (std::size_t k = 0; k < n; ++k)
        os << " I" << k + 1 << "\n u" << k + 1 << "_self\n";
    for (std::size_t fi = 0; fi < facts.size(); ++fi)
        os << " u_f" << fi + 1 << "\n";
    os << "End\n";
    return os.str();
}

} // namespace forge
