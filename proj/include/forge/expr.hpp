#pragma once

#include "forge/rational.hpp"

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace forge {

enum class Op : std::uint8_t {
    Add, Sub, Mul, Div, Neg, Fabs, Sqrt, Cbrt, Pow, Floor,
    Sin, Cos, Tan, Asin, Acos, Atan, Sinh, Cosh, Tanh,
    Exp, Log, Expm1, Log1p, Atan2,
    TheFunc,
};

int op_arity(Op op);
std::string_view op_name(Op op);

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable term tree. Variables are named so the same type doubles as
// a rewrite pattern (pattern variables a/b/c) and as the reconstruction
// template s(y); benchmark expressions only ever contain x.
class Expr {
public:
    enum class Kind : std::uint8_t { Num, Var, App };

    static ExprPtr num(RationalPi value);
    static ExprPtr integer(std::int64_t n) { return num(RationalPi::integer(n)); }
    static ExprPtr pi() { return num(RationalPi::pi()); }
    static ExprPtr var(std::string name);
    static ExprPtr app(Op op, std::vector<ExprPtr> children);
    static ExprPtr unary(Op op, ExprPtr a);
    static ExprPtr binary(Op op, ExprPtr a, ExprPtr b);

    Kind kind() const { return kind_; }
    bool is_num() const { return kind_ == Kind::Num; }
    bool is_var() const { return kind_ == Kind::Var; }
    bool is_app() const { return kind_ == Kind::App; }

    const RationalPi& value() const { return value_; }
    const std::string& name() const { return name_; }
    Op op() const { return op_; }
    const std::vector<ExprPtr>& children() const { return children_; }
    const ExprPtr& child(std::size_t i) const { return children_[i]; }

    std::size_t size() const;  // node count
    int depth() const;
    int count_op(Op op) const;
    bool contains_op(Op op) const { return count_op(op) > 0; }
    std::set<std::string> variables() const;

    friend bool expr_equal(const Expr& a, const Expr& b);

private:
    Kind kind_;
    RationalPi value_;
    std::string name_;
    Op op_ = Op::Add;
    std::vector<ExprPtr> children_;
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::string msg, std::size_t pos)
        : std::runtime_error(std::move(msg)), position(pos) {}
};

// Parses one s-expression. `allowed_vars` is the set of acceptable
// variable names; anything else is rejected. `(* q PI)` with a rational
// literal q is normalized to a single constant node, as is bare `PI`,
// so print/parse round-trips are structural.
ExprPtr parse_expr(std::string_view text, const std::set<std::string>& allowed_vars = {"x"});

std::string print_expr(const ExprPtr& e);
std::string print_expr(const Expr& e);

// Replaces every occurrence of variable `name` with `replacement`.
ExprPtr substitute_var(const ExprPtr& e, const std::string& name, const ExprPtr& replacement);

// Replaces every application thefunc(u) with body[var := u], bottom-up.
ExprPtr substitute_thefunc(const ExprPtr& e, const ExprPtr& body, const std::string& var = "x");

// Folds constant subtrees using exact RationalPi arithmetic for
// + - * neg and division by a nonzero rational. Anything unfoldable
// (1/0, pi*pi, overflow) is left untouched.
ExprPtr fold_constants(const ExprPtr& e);

// The constant normalization parse applies: collapses the canonical
// pi-multiple surface form (* q PI) into a single constant node.
// parse(print(e)) structurally equals normalize_constants(e).
ExprPtr normalize_constants(const ExprPtr& e);

} // namespace forge
