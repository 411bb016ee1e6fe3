#include "forge/dedup.hpp"
#include "forge/identity.hpp"
#include "forge/rules.hpp"
#include "forge/verify.hpp"

#include <doctest.h>

#include <set>

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

SynthesisResult synth(const char* text, int iters = 4)
{
    SynthesisConfig cfg;
    cfg.budget.max_iterations = iters;
    return synthesize(parse_expr(text), shipped_rules(), cfg);
}

bool has_candidate(const SynthesisResult& r, const std::string& printed)
{
    for (const auto& c : r.candidates)
        if (print_expr(c.rhs) == printed)
            return true;
    return false;
}

} // namespace

TEST_CASE("defining rules encode thefunc(a) = f(a)")
{
    auto rules = defining_rules(parse_expr("(sin x)"));
    REQUIRE(rules.size() == 2);
    CHECK(print_expr(rules[0].lhs) == "(sin a)");
    CHECK(print_expr(rules[0].rhs) == "(thefunc a)");
    CHECK(print_expr(rules[1].lhs) == "(thefunc a)");
    // f(x) = x has no pattern form; the seed union carries it
    CHECK(defining_rules(parse_expr("x")).empty());
}

TEST_CASE("synthesis on sin finds the classical identities")
{
    auto r = synth("(sin x)");
    CHECK(has_candidate(r, "(- (thefunc (- x)))"));
    CHECK(has_candidate(r, "(thefunc (- PI x))"));
    CHECK(has_candidate(r, "(thefunc (+ x (* 2 PI)))"));
    CHECK(has_candidate(r, "(thefunc x)")); // the trivial identity survives extraction
    CHECK(r.thefunc_free_discarded > 0);
    CHECK(r.raw_extractions == r.candidates.size() + r.thefunc_free_discarded);
}

TEST_CASE("synthesis on tan(x) - sin(x) discovers oddness")
{
    auto r = synth("(- (tan x) (sin x))");
    CHECK(has_candidate(r, "(- (thefunc (- x)))"));
}

TEST_CASE("synthesis on 1 + cos(x) reproduces the two-call definitional identity")
{
    auto r = synth("(+ 1 (cos x))");
    // The canonical shape; extraction ties may print an equal-cost
    // variant, so membership is checked up to provable equivalence in
    // a thefunc-uninterpreted e-graph.
    ExprPtr canonical = parse_expr("(- (- 1 (thefunc x)) (- (- (thefunc x)) (cos x)))", {"x"});
    bool found = false;
    for (const auto& c : r.candidates) {
        if (c.thefunc_count != 2)
            continue;
        EGraph g;
        ClassId a = g.add_expr(*c.rhs);
        ClassId b = g.add_expr(*canonical);
        RunBudget budget;
        budget.max_iterations = 4;
        g.run(shipped_rules(), budget);
        if (g.find(a) == g.find(b)) {
            found = true;
            break;
        }
    }
    CHECK(found);
}

TEST_CASE("synthesis on sin(x)/2 finds the self-referential identity")
{
    auto r = synth("(/ (sin x) 2)");
    CHECK(has_candidate(r, "(- (sin x) (thefunc x))"));
}

TEST_CASE("candidates are pairwise distinct and numerically valid")
{
    auto r = synth("(/ (sin x) 2)");
    ExprPtr f = parse_expr("(/ (sin x) 2)");
    std::set<std::string> texts;
    for (const auto& c : r.candidates)
        texts.insert(print_expr(c.rhs));
    CHECK(texts.size() == r.candidates.size());

    int verified = 0;
    for (const auto& c : r.candidates) {
        VerifyResult v = verify_identity(f, c.rhs, 64, 1e-10);
        CAPTURE(print_expr(c.rhs));
        REQUIRE(v.pass);
        ++verified;
    }
    CHECK(verified > 50);
}

TEST_CASE("candidate cap keeps the cheapest candidates and reports it")
{
    SynthesisConfig cfg;
    cfg.budget.max_iterations = 4;
    cfg.candidate_cap = 10;
    auto r = synthesize(parse_expr("(sin x)"), shipped_rules(), cfg);
    CHECK(r.capped);
    REQUIRE(r.candidates.size() == 10);
    for (std::size_t i = 1; i < r.candidates.size(); ++i)
        CHECK(r.candidates[i - 1].cost <= r.candidates[i].cost);
    CHECK(r.candidates[0].is_trivial());
}

TEST_CASE("synthesize rejects malformed inputs")
{
    SynthesisConfig cfg;
    CHECK_THROWS_AS(synthesize(parse_expr("(thefunc x)", {"x"}), shipped_rules(), cfg),
                    std::invalid_argument);
}

TEST_CASE("decompose splits single-call identities into s and t")
{
    Identity parity = Identity::from_rhs(parse_expr("(- (thefunc (- x)))", {"x"}));
    REQUIRE(parity.decomposition.has_value());
    CHECK(print_expr(parity.decomposition->first) == "(- y)");
    CHECK(print_expr(parity.decomposition->second) == "(- x)");

    Identity reflect = Identity::from_rhs(parse_expr("(thefunc (- PI x))", {"x"}));
    REQUIRE(reflect.decomposition.has_value());
    CHECK(print_expr(reflect.decomposition->first) == "y");
    CHECK(print_expr(reflect.decomposition->second) == "(- PI x)");

    Identity twocall =
        Identity::from_rhs(parse_expr("(+ (thefunc x) (- (thefunc x) (sin x)))", {"x"}));
    CHECK(twocall.thefunc_count == 2);
    CHECK_FALSE(twocall.decomposition.has_value());
    CHECK_FALSE(decompose(twocall).has_value());
}
