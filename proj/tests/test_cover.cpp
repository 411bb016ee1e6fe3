#include "forge/cover.hpp"
#include "forge/dedup.hpp"
#include "forge/identity.hpp"
#include "forge/verify.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

#ifndef FORGE_DATA_DIR
#define FORGE_DATA_DIR "data"
#endif

using namespace forge;

namespace {

const std::vector<Rule>& shipped_rules()
{
    static const std::vector<Rule> rules =
        rule_closure(load_rules(std::string(FORGE_DATA_DIR) + "/default.rules"));
    return rules;
}

Identity ident(const char* text)
{
    return Identity::from_rhs(parse_expr(text, {"x"}));
}

// Reference solver: try every subset, smallest first, using the same
// closure feasibility but none of the search-space pruning.
std::vector<std::size_t> brute_force_core(std::size_t n, const std::vector<CoverageFact>& facts)
{
    std::vector<std::size_t> best;
    bool found = false;
    for (std::size_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<bool> covered(n, false);
        std::size_t size = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (mask & (1u << k)) {
                covered[k] = true;
                ++size;
            }
        if (found && size >= best.size())
            continue;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& f : facts)
                if (covered[f.i] && covered[f.j] && !covered[f.k]) {
                    covered[f.k] = true;
                    changed = true;
                }
        }
        if (std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) {
            std::vector<std::size_t> subset;
            for (std::size_t k = 0; k < n; ++k)
                if (mask & (1u << k))
                    subset.push_back(k);
            if (!found || subset.size() < best.size()) {
                best = subset;
                found = true;
            }
        }
    }
    return best;
}

} // namespace

TEST_CASE("dedup groups candidates equal for every meaning of thefunc")
{
    RunBudget budget;
    budget.max_iterations = 4;

    std::vector<Identity> cands = {ident("(thefunc x)"), ident("(+ 0 (thefunc x))")};
    DedupResult r = dedup(cands, shipped_rules(), budget);
    REQUIRE(r.groups.size() == 1);
    CHECK(r.has_trivial_group());
    CHECK(print_expr(r.representatives[0].rhs) == "(thefunc x)");

    std::vector<Identity> distinct = {ident("(fabs (thefunc x))"), ident("(thefunc x)")};
    DedupResult r2 = dedup(distinct, shipped_rules(), budget);
    CHECK(r2.groups.size() == 2);

    std::vector<Identity> lone = {ident("(- (thefunc (- x)))")};
    DedupResult r3 = dedup(lone, shipped_rules(), budget);
    REQUIRE(r3.groups.size() == 1);
    CHECK_FALSE(r3.has_trivial_group());
}

TEST_CASE("dedup grouping is a partition")
{
    SynthesisConfig cfg;
    cfg.budget.max_iterations = 4;
    auto synth = synthesize(parse_expr("(/ (sin x) 2)"), shipped_rules(), cfg);
    DedupResult r = dedup(synth.candidates, shipped_rules(), cfg.budget);
    std::vector<int> seen(synth.candidates.size(), 0);
    for (const auto& g : r.groups)
        for (std::size_t i : g)
            seen[i]++;
    for (int s : seen)
        CHECK(s == 1);
    CHECK(r.groups.size() == r.representatives.size());
}

TEST_CASE("grouped candidates agree for 20 random interpretations of thefunc")
{
    SynthesisConfig cfg;
    cfg.budget.max_iterations = 4;
    auto synth = synthesize(parse_expr("(/ (sin x) 2)"), shipped_rules(), cfg);
    DedupResult r = dedup(synth.candidates, shipped_rules(), cfg.budget);

    static const char* interps[20] = {
        "x", "(* 2 x)", "(* x x)", "(+ x 1)", "(- x)", "(* x (* x x))", "(/ x 2)",
        "(sin x)", "(cos x)", "(exp x)", "(tanh x)", "(+ (* x x) x)", "(- 1 x)",
        "(* 1/2 (+ x 1))", "(sinh x)", "(atan x)", "(+ (sin x) x)", "(* -2 x)",
        "(cbrt x)", "(+ (exp x) (* x x))",
    };

    int comparisons = 0;
    for (const auto& group : r.groups) {
        if (group.size() < 2)
            continue;
        const ExprPtr& a = synth.candidates[group[0]].rhs;
        for (std::size_t m = 1; m < group.size() && comparisons < 40; ++m) {
            const ExprPtr& b = synth.candidates[group[m]].rhs;
            for (const char* gtext : interps) {
                ExprPtr g = parse_expr(gtext);
                VerifyResult v =
                    verify_equal(substitute_thefunc(a, g), substitute_thefunc(b, g), 32, 1e-10);
                CAPTURE(print_expr(a));
                CAPTURE(print_expr(b));
                CAPTURE(gtext);
                REQUIRE((v.pass || v.all_undefined));
            }
            ++comparisons;
        }
    }
    CHECK(comparisons >= 5);
}

TEST_CASE("compose substitutes the inner identity into every call")
{
    Identity period = ident("(thefunc (+ x (* 2 PI)))");
    ExprPtr twice = compose_identities(period, period);
    CHECK(print_expr(twice) == "(thefunc (+ (+ x (* 2 PI)) (* 2 PI)))");

    Identity trivial = ident("(thefunc x)");
    Identity parity = ident("(- (thefunc (- x)))");
    CHECK(print_expr(compose_identities(trivial, parity)) == "(- (thefunc (- x)))");
    CHECK(print_expr(compose_identities(parity, parity)) == "(- (- (thefunc (- (- x)))))");
}

TEST_CASE("discover_facts proves period composition and parity collapse")
{
    RunBudget budget;
    budget.max_iterations = 4;
    std::vector<Identity> ids = {ident("(thefunc (+ x (* 2 PI)))"),
                                 ident("(thefunc (+ x (* 4 PI)))"),
                                 ident("(- (thefunc (- x)))")};
    FactResult facts = discover_facts(ids, shipped_rules(), budget);
    CHECK(std::find(facts.facts.begin(), facts.facts.end(), CoverageFact{0, 0, 1})
          != facts.facts.end());
    bool parity_collapses = false;
    for (auto [i, j] : facts.collapses)
        parity_collapses |= (i == 2 && j == 2);
    CHECK(parity_collapses);

    CHECK(discover_facts({}, shipped_rules(), budget).facts.empty());
}

TEST_CASE("minimize_core matches the worked examples")
{
    // two identities, the first composed with itself gives the second
    CoreResult r = minimize_core(2, {{0, 0, 1}});
    CHECK(r.core == std::vector<std::size_t>{0});
    REQUIRE(r.certificate.size() == 1);
    CHECK(r.certificate[0].k == 1);
    CHECK(r.certificate[0].age == 2);

    // cyclic self-support cannot cover
    CoreResult cyc = minimize_core(1, {{0, 0, 0}});
    CHECK(cyc.core == std::vector<std::size_t>{0});

    // two generators both needed
    CoreResult two = minimize_core(3, {{0, 1, 2}, {1, 0, 2}});
    CHECK(two.core == std::vector<std::size_t>{0, 1});

    CHECK(minimize_core(0, {}).core.empty());
    CHECK_THROWS_AS(minimize_core(2, {{0, 5, 1}}), std::invalid_argument);
}

TEST_CASE("certificates replay to cover everything")
{
    std::vector<CoverageFact> facts = {{0, 0, 1}, {1, 0, 2}, {2, 2, 3}};
    CoreResult r = minimize_core(4, facts);
    CHECK(r.core == std::vector<std::size_t>{0});
    std::vector<bool> covered(4, false);
    for (std::size_t c : r.core)
        covered[c] = true;
    for (const auto& d : r.certificate) {
        CHECK(covered[d.via_i]);
        CHECK(covered[d.via_j]);
        CHECK_FALSE(covered[d.k]); // acyclic: each identity derived once
        covered[d.k] = true;
        CHECK(d.age >= 2);
    }
    CHECK(std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }));
}

TEST_CASE("solver equals brute force on random instances")
{
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + rng() % 10;
        std::size_t nfacts = rng() % 30;
        std::vector<CoverageFact> facts;
        for (std::size_t i = 0; i < nfacts; ++i)
            facts.push_back({rng() % n, rng() % n, rng() % n});
        CoreResult mine = minimize_core(n, facts);
        auto reference = brute_force_core(n, facts);
        CAPTURE(n);
        CAPTURE(nfacts);
        CHECK(mine.core.size() == reference.size());
    }
}

TEST_CASE("adding facts never grows the core")
{
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 2 + rng() % 8;
        std::vector<CoverageFact> facts;
        std::size_t prev = minimize_core(n, facts).core.size();
        for (int step = 0; step < 6; ++step) {
            facts.push_back({rng() % n, rng() % n, rng() % n});
            std::size_t now = minimize_core(n, facts).core.size();
            CHECK(now <= prev);
            prev = now;
        }
    }
}

TEST_CASE("LP emission carries the age-constrained encoding")
{
    std::string lp = emit_lp(2, {{0, 0, 1}});
    CHECK(lp.find("Minimize") != std::string::npos);
    CHECK(lp.find("obj: I1 + I2") != std::string::npos);
    CHECK(lp.find("cover1: u1_self >= 1") != std::string::npos);
    CHECK(lp.find("cover2: u2_self + u_f1 >= 1") != std::string::npos);
    // big-M = n + 1 = 3 appears in the age linearization
    CHECK(lp.find("a2 - a1 - a1 + 3 u_f1 <= 3") != std::string::npos);
    CHECK(lp.find("Binaries") != std::string::npos);
    CHECK(lp.find("Generals") != std::string::npos);
    CHECK(lp.find("End") != std::string::npos);
}
