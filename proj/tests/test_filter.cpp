#include "forge/filter.hpp"
#include "forge/rules.hpp"
#include "forge/verify.hpp"

#include <doctest.h>

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

RunBudget budget()
{
    RunBudget b;
    b.max_iterations = 4;
    return b;
}

} // namespace

TEST_CASE("direct filter detects the 1+cos definitional identity")
{
    Identity i = ident("(- (- 1 (thefunc x)) (- (- (thefunc x)) (cos x)))");
    FilterOutcome out = is_definitional_direct(i, shipped_rules(), budget());
    CHECK(out.definitional);
}

TEST_CASE("direct filter keeps single-call identities")
{
    CHECK_FALSE(is_definitional_direct(ident("(- (thefunc (- x)))"), shipped_rules(), budget())
                    .definitional);
    // the trivial identity is never definitional
    CHECK_FALSE(is_definitional_direct(ident("(thefunc x)"), shipped_rules(), budget())
                    .definitional);
}

TEST_CASE("direct filter: cancelling sine terms do not free the root")
{
    // rhs = thefunc(x) + (sin x - sin x): the sines cancel but the root
    // still needs thefunc
    Identity i = ident("(+ (thefunc x) (- (sin x) (sin x)))");
    FilterOutcome out = is_definitional_direct(i, shipped_rules(), budget());
    CHECK_FALSE(out.definitional);
}

TEST_CASE("equation filter on the trivial identity yields nothing")
{
    Identity i = ident("(thefunc x)");
    FilterOutcome out =
        is_definitional_equation(i, parse_expr("(sin x)"), shipped_rules(), budget());
    CHECK_FALSE(out.definitional);
}

TEST_CASE("equation filter derives the definition from sin(x) - f(x)")
{
    // f = sin(x)/2 generates f(x) = sin(x) - f(x); the equation as a
    // whole rearranges to 2 f(x) = sin(x)
    Identity i = ident("(- (sin x) (thefunc x))");
    FilterOutcome out =
        is_definitional_equation(i, parse_expr("(/ (sin x) 2)"), shipped_rules(), budget());
    CHECK(out.definitional);
}

TEST_CASE("equation filter catches the 1+cos identity too")
{
    Identity i = ident("(- (- 1 (thefunc x)) (- (- (thefunc x)) (cos x)))");
    FilterOutcome out =
        is_definitional_equation(i, parse_expr("(+ 1 (cos x))"), shipped_rules(), budget());
    CHECK(out.definitional);
}

TEST_CASE("equation filter keeps genuine range reductions")
{
    Identity parity = ident("(- (thefunc (- x)))");
    CHECK_FALSE(is_definitional_equation(parity, parse_expr("(sin x)"), shipped_rules(), budget())
                    .definitional);
    Identity reflect = ident("(thefunc (- PI x))");
    CHECK_FALSE(is_definitional_equation(reflect, parse_expr("(sin x)"), shipped_rules(), budget())
                    .definitional);
}

TEST_CASE("verify_identity accepts true identities of sin")
{
    ExprPtr f = parse_expr("(sin x)");
    VerifyResult reflect = verify_identity(f, parse_expr("(thefunc (- PI x))", {"x"}), 256, 1e-10);
    CHECK(reflect.pass);
    CHECK(reflect.defined_points > 200);
}

TEST_CASE("verify_identity rejects the sign-flipped shift with a witness")
{
    ExprPtr f = parse_expr("(sin x)");
    VerifyResult v = verify_identity(f, parse_expr("(thefunc (+ x PI))", {"x"}), 256, 1e-10);
    CHECK_FALSE(v.pass);
    CHECK(v.witness.has_value());
    // the witness really does separate the two sides
    double x0 = *v.witness;
    auto lhs = eval_point(f, x0);
    auto rhs = eval_point(parse_expr("(sin (+ x PI))"), x0);
    REQUIRE(lhs.has_value());
    REQUIRE(rhs.has_value());
    CHECK(std::abs(*lhs - *rhs) > 1e-6);
}

TEST_CASE("verify_identity accepts the period identity of tan - sin")
{
    ExprPtr f = parse_expr("(- (tan x) (sin x))");
    VerifyResult v =
        verify_identity(f, parse_expr("(thefunc (+ x (* 2 PI)))", {"x"}), 256, 1e-10);
    CHECK(v.pass);
}

TEST_CASE("verify_identity skips undefined points but fails all-undefined")
{
    // f defined only for x > 0; the identity holds there
    ExprPtr f = parse_expr("(- (log (+ x 1)) (log x))");
    VerifyResult v = verify_identity(f, parse_expr("(thefunc x)", {"x"}), 256, 1e-10);
    CHECK(v.pass);
    CHECK(v.defined_points < 256);
    CHECK(v.defined_points > 0);

    // nowhere-defined input cannot pass
    ExprPtr nowhere = parse_expr("(log (- -1 (* x x)))");
    VerifyResult bad = verify_identity(nowhere, parse_expr("(thefunc x)", {"x"}), 64, 1e-10);
    CHECK_FALSE(bad.pass);
    CHECK(bad.all_undefined);
}
