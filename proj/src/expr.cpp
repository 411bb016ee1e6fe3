#include "forge/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace forge {

namespace {

struct OpInfo {
    Op op;
    std::string_view name;
    int arity;
};

// Surface names. `-` is resolved by arity during parse (unary neg,
// binary sub); both print as `-`.
constexpr std::array<OpInfo, 25> kOps = {{
    {Op::Add, "+", 2},
    {Op::Sub, "-", 2},
    {Op::Mul, "*", 2},
    {Op::Div, "/", 2},
    {Op::Neg, "-", 1},
    {Op::Fabs, "fabs", 1},
    {Op::Sqrt, "sqrt", 1},
    {Op::Cbrt, "cbrt", 1},
    {Op::Pow, "pow", 2},
    {Op::Floor, "floor", 1},
    {Op::Sin, "sin", 1},
    {Op::Cos, "cos", 1},
    {Op::Tan, "tan", 1},
    {Op::Asin, "asin", 1},
    {Op::Acos, "acos", 1},
    {Op::Atan, "atan", 1},
    {Op::Sinh, "sinh", 1},
    {Op::Cosh, "cosh", 1},
    {Op::Tanh, "tanh", 1},
    {Op::Exp, "exp", 1},
    {Op::Log, "log", 1},
    {Op::Expm1, "expm1", 1},
    {Op::Log1p, "log1p", 1},
    {Op::Atan2, "atan2", 2},
    {Op::TheFunc, "thefunc", 1},
}};

const OpInfo* lookup_op(std::string_view name, int arity)
{
    for (const auto& info : kOps)
        if (info.name == name && info.arity == arity)
            return &info;
    return nullptr;
}

bool known_op_name(std::string_view name)
{
    for (const auto& info : kOps)
        if (info.name == name)
            return true;
    return false;
}

} // namespace

int op_arity(Op op)
{
    for (const auto& info : kOps)
        if (info.op == op)
            return info.arity;
    return 0;
}

std::string_view op_name(Op op)
{
    for (const auto& info : kOps)
        if (info.op == op)
            return info.name;
    return "?";
}

ExprPtr Expr::num(RationalPi value)
{
    auto e = std::make_shared<Expr>();
    e->kind_ = Kind::Num;
    e->value_ = value;
    return e;
}

ExprPtr Expr::var(std::string name)
{
    auto e = std::make_shared<Expr>();
    e->kind_ = Kind::Var;
    e->name_ = std::move(name);
    return e;
}

ExprPtr Expr::app(Op op, std::vector<ExprPtr> children)
{
    if (static_cast<int>(children.size()) != op_arity(op))
        throw std::invalid_argument("arity mismatch building expression");
    auto e = std::make_shared<Expr>();
    e->kind_ = Kind::App;
    e->op_ = op;
    e->children_ = std::move(children);
    return e;
}

ExprPtr Expr::unary(Op op, ExprPtr a)
{
    return app(op, {std::move(a)});
}

ExprPtr Expr::binary(Op op, ExprPtr a, ExprPtr b)
{
    return app(op, {std::move(a), std::move(b)});
}

std::size_t Expr::size() const
{
    std::size_t n = 1;
    for (const auto& c : children_)
        n += c->size();
    return n;
}

int Expr::depth() const
{
    int d = 0;
    for (const auto& c : children_)
        d = std::max(d, c->depth());
    return d + 1;
}

int Expr::count_op(Op op) const
{
    int n = (kind_ == Kind::App && op_ == op) ? 1 : 0;
    for (const auto& c : children_)
        n += c->count_op(op);
    return n;
}

std::set<std::string> Expr::variables() const
{
    std::set<std::string> vars;
    if (kind_ == Kind::Var) {
        vars.insert(name_);
        return vars;
    }
    for (const auto& c : children_) {
        auto sub = c->variables();
        vars.insert(sub.begin(), sub.end());
    }
    return vars;
}

bool expr_equal(const Expr& a, const Expr& b)
{
    if (a.kind_ != b.kind_)
        return false;
    switch (a.kind_) {
    case Expr::Kind::Num:
        return a.value_ == b.value_;
    case Expr::Kind::Var:
        return a.name_ == b.name_;
    case Expr::Kind::App:
        if (a.op_ != b.op_ || a.children_.size() != b.children_.size())
            return false;
        for (std::size_t i = 0; i < a.children_.size(); ++i)
            if (!expr_equal(*a.children_[i], *b.children_[i]))
                return false;
        return true;
    }
    return false;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b)
{
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return expr_equal(*a, *b);
}

// --------------------------------------------------------------------
// Parsing

namespace {

struct Token {
    enum class Type { LParen, RParen, Atom, End };
    Type type;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next()
    {
        skip_ws();
        if (pos_ >= text_.size())
            return {Token::Type::End, "", pos_};
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            return {Token::Type::LParen, "(", pos_ - 1};
        }
        if (c == ')') {
            ++pos_;
            return {Token::Type::RParen, ")", pos_ - 1};
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))
               && text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';')
            ++pos_;
        if (pos_ == start)
            throw ParseError("unexpected character", pos_);
        return {Token::Type::Atom, std::string(text_.substr(start, pos_ - start)), start};
    }

    Token peek()
    {
        std::size_t save = pos_;
        Token t = next();
        pos_ = save;
        return t;
    }

private:
    void skip_ws()
    {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ';') { // comment to end of line
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

bool is_rational_literal(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t i = 0;
    if (s[0] == '-') {
        if (s.size() == 1)
            return false;
        i = 1;
    }
    bool digits = false, slash = false, denom_digits = false;
    for (; i < s.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            (slash ? denom_digits : digits) = true;
        } else if (s[i] == '/' && !slash && digits) {
            slash = true;
        } else {
            return false;
        }
    }
    return digits && (!slash || denom_digits);
}

Rational parse_rational(const std::string& s, std::size_t pos)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rational::integer(std::stoll(s));
        std::int64_t n = std::stoll(s.substr(0, slash));
        std::int64_t d = std::stoll(s.substr(slash + 1));
        return Rational(n, d);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad numeric literal '" + s + "'", pos);
    } catch (const std::out_of_range&) {
        throw ParseError("numeric literal out of range '" + s + "'", pos);
    }
}

// Recognizes (* q PI) built from a rational literal and the pi constant
// and collapses it to the exact constant q*pi.
ExprPtr normalize_pi_product(Op op, const std::vector<ExprPtr>& kids)
{
    if (op != Op::Mul)
        return nullptr;
    const auto& l = kids[0];
    const auto& r = kids[1];
    if (l->is_num() && l->value().is_rational() && r->is_num() && r->value() == RationalPi::pi()) {
        auto v = rp_mul(l->value(), r->value());
        if (v)
            return Expr::num(*v);
    }
    return nullptr;
}

class Parser {
public:
    Parser(std::string_view text, const std::set<std::string>& allowed_vars)
        : lex_(text), vars_(allowed_vars) {}

    ExprPtr parse_top()
    {
        ExprPtr e = parse_one();
        Token t = lex_.next();
        if (t.type != Token::Type::End)
            throw ParseError("trailing input after expression", t.pos);
        return e;
    }

private:
    ExprPtr parse_one()
    {
        Token t = lex_.next();
        switch (t.type) {
        case Token::Type::End:
            throw ParseError("unexpected end of input", t.pos);
        case Token::Type::RParen:
            throw ParseError("unexpected ')'", t.pos);
        case Token::Type::Atom:
            return parse_atom(t);
        case Token::Type::LParen:
            return parse_list(t);
        }
        throw ParseError("unreachable", t.pos);
    }

    ExprPtr parse_atom(const Token& t)
    {
        if (is_rational_literal(t.text))
            return Expr::num(RationalPi(parse_rational(t.text, t.pos), 0));
        if (t.text == "PI")
            return Expr::pi();
        if (vars_.count(t.text))
            return Expr::var(t.text);
        if (known_op_name(t.text))
            throw ParseError("operator '" + t.text + "' used without arguments", t.pos);
        throw ParseError("unknown variable '" + t.text + "' (only "
                             + joined_vars() + " allowed)",
                         t.pos);
    }

    ExprPtr parse_list(const Token& open)
    {
        Token head = lex_.next();
        if (head.type != Token::Type::Atom)
            throw ParseError("expected operator after '('", head.pos);
        std::vector<ExprPtr> kids;
        while (true) {
            Token t = lex_.peek();
            if (t.type == Token::Type::RParen) {
                lex_.next();
                break;
            }
            if (t.type == Token::Type::End)
                throw ParseError("missing ')'", open.pos);
            kids.push_back(parse_one());
        }
        const OpInfo* info = lookup_op(head.text, static_cast<int>(kids.size()));
        if (!info) {
            if (known_op_name(head.text))
                throw ParseError("wrong arity for operator '" + head.text + "'", head.pos);
            throw ParseError("unknown operator '" + head.text + "'", head.pos);
        }
        if (auto c = normalize_pi_product(info->op, kids))
            return c;
        return Expr::app(info->op, std::move(kids));
    }

    std::string joined_vars() const
    {
        std::string s;
        for (const auto& v : vars_) {
            if (!s.empty())
                s += ", ";
            s += "'" + v + "'";
        }
        return s.empty() ? "none" : s;
    }

    Lexer lex_;
    const std::set<std::string>& vars_;
};

void print_rec(const Expr& e, std::string& out)
{
    switch (e.kind()) {
    case Expr::Kind::Num: {
        const RationalPi& v = e.value();
        if (v.pi_degree == 0) {
            out += v.coeff.to_string();
        } else if (v.coeff == Rational::integer(1)) {
            out += "PI";
        } else {
            out += "(* ";
            out += v.coeff.to_string();
            out += " PI)";
        }
        return;
    }
    case Expr::Kind::Var:
        out += e.name();
        return;
    case Expr::Kind::App: {
        out += '(';
        out += op_name(e.op());
        for (const auto& c : e.children()) {
            out += ' ';
            print_rec(*c, out);
        }
        out += ')';
        return;
    }
    }
}

} // namespace

ExprPtr parse_expr(std::string_view text, const std::set<std::string>& allowed_vars)
{
    Parser p(text, allowed_vars);
    return p.parse_top();
}

std::string print_expr(const Expr& e)
{
    std::string out;
    print_rec(e, out);
    return out;
}

std::string print_expr(const ExprPtr& e)
{
    return print_expr(*e);
}

ExprPtr substitute_var(const ExprPtr& e, const std::string& name, const ExprPtr& replacement)
{
    if (e->is_var())
        return e->name() == name ? replacement : e;
    if (!e->is_app())
        return e;
    std::vector<ExprPtr> kids;
    kids.reserve(e->children().size());
    bool changed = false;
    for (const auto& c : e->children()) {
        auto nc = substitute_var(c, name, replacement);
        changed |= (nc != c);
        kids.push_back(std::move(nc));
    }
    return changed ? Expr::app(e->op(), std::move(kids)) : e;
}

ExprPtr substitute_thefunc(const ExprPtr& e, const ExprPtr& body, const std::string& var)
{
    if (!e->is_app())
        return e;
    std::vector<ExprPtr> kids;
    kids.reserve(e->children().size());
    for (const auto& c : e->children())
        kids.push_back(substitute_thefunc(c, body, var));
    if (e->op() == Op::TheFunc)
        return substitute_var(body, var, kids[0]);
    return Expr::app(e->op(), std::move(kids));
}

namespace {

std::optional<RationalPi> fold_app(Op op, const std::vector<ExprPtr>& kids)
{
    for (const auto& k : kids)
        if (!k->is_num())
            return std::nullopt;
    switch (op) {
    case Op::Add:
        return rp_add(kids[0]->value(), kids[1]->value());
    case Op::Sub:
        return rp_sub(kids[0]->value(), kids[1]->value());
    case Op::Mul:
        return rp_mul(kids[0]->value(), kids[1]->value());
    case Op::Div:
        return rp_div(kids[0]->value(), kids[1]->value());
    case Op::Neg:
        return rp_neg(kids[0]->value());
    default:
        return std::nullopt;
    }
}

} // namespace

ExprPtr normalize_constants(const ExprPtr& e)
{
    if (!e->is_app())
        return e;
    std::vector<ExprPtr> kids;
    kids.reserve(e->children().size());
    bool changed = false;
    for (const auto& c : e->children()) {
        auto nc = normalize_constants(c);
        changed |= (nc != c);
        kids.push_back(std::move(nc));
    }
    if (auto c = normalize_pi_product(e->op(), kids))
        return c;
    return changed ? Expr::app(e->op(), std::move(kids)) : e;
}

ExprPtr fold_constants(const ExprPtr& e)
{
    if (!e->is_app())
        return e;
    std::vector<ExprPtr> kids;
    kids.reserve(e->children().size());
    bool changed = false;
    for (const auto& c : e->children()) {
        auto nc = fold_constants(c);
        changed |= (nc != c);
        kids.push_back(std::move(nc));
    }
    if (auto v = fold_app(e->op(), kids))
        return Expr::num(*v);
    return changed ? Expr::app(e->op(), std::move(kids)) : e;
}

} // namespace forge
