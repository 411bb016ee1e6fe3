#include "forge/verify.hpp"

#include "forge/domain.hpp"

#include <mpfr.h>

#include <cmath>
#include <sstream>

namespace forge {

namespace {

class Big {
public:
    Big()
    {
        // The default exponent range caps magnitudes near 2^(2^30),
        // which exp(1e9) exceeds; widen it so overflow on the sampling
        // grids never masquerades as undefinedness.
        static thread_local const bool widened = [] {
            mpfr_set_emin(mpfr_get_emin_min());
            mpfr_set_emax(mpfr_get_emax_max());
            return true;
        }();
        (void)widened;
        mpfr_init2(v_, kEvalPrecisionBits);
        mpfr_set_nan(v_);
    }
    Big(const Big& o) : Big() { mpfr_set(v_, o.v_, MPFR_RNDN); }
    Big(Big&& o) noexcept : Big() { mpfr_swap(v_, o.v_); }
    Big& operator=(const Big& o)
    {
        if (this != &o)
            mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Big& operator=(Big&& o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Big() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    static Big from_double(double d)
    {
        Big b;
        mpfr_set_d(b.v_, d, MPFR_RNDN);
        return b;
    }

    static const Big& cached_pi()
    {
        static const thread_local Big pi = [] {
            Big p;
            mpfr_const_pi(p.v_, MPFR_RNDN);
            return p;
        }();
        return pi;
    }

    static Big from_rational_pi(const RationalPi& r)
    {
        Big b;
        mpfr_set_si(b.v_, r.coeff.num, MPFR_RNDN);
        mpfr_div_si(b.v_, b.v_, r.coeff.den, MPFR_RNDN);
        if (r.pi_degree == 1)
            mpfr_mul(b.v_, b.v_, cached_pi().v_, MPFR_RNDN);
        return b;
    }

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

struct EvalCtx {
    const std::map<std::string, double>* env = nullptr;
    bool thefunc_interp = false;
};

std::optional<Big> eval_big(const Expr& e, const EvalCtx& ctx);

bool predicate_trips(DomainPredicate p, const std::vector<Big>& args)
{
    switch (p) {
    case DomainPredicate::SecondArgZero:
        return args[1].is_zero();
    case DomainPredicate::OutsideUnitInterval:
        return mpfr_cmp_si(args[0].get(), -1) < 0 || mpfr_cmp_si(args[0].get(), 1) > 0;
    case DomainPredicate::NonPositive:
        return mpfr_cmp_si(args[0].get(), 0) <= 0;
    case DomainPredicate::AtMostMinusOne:
        return mpfr_cmp_si(args[0].get(), -1) <= 0;
    case DomainPredicate::Negative:
        return mpfr_cmp_si(args[0].get(), 0) < 0;
    }
    return false;
}

std::optional<Big> apply_big(Op op, std::vector<Big>& a)
{
    Big r;
    switch (op) {
    case Op::Add: mpfr_add(r.get(), a[0].get(), a[1].get(), MPFR_RNDN); break;
    case Op::Sub: mpfr_sub(r.get(), a[0].get(), a[1].get(), MPFR_RNDN); break;
    case Op::Mul: mpfr_mul(r.get(), a[0].get(), a[1].get(), MPFR_RNDN); break;
    case Op::Div: mpfr_div(r.get(), a[0].get(), a[1].get(), MPFR_RNDN); break;
    case Op::Neg: mpfr_neg(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Fabs: mpfr_abs(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Sqrt: mpfr_sqrt(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Cbrt: mpfr_cbrt(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Pow: mpfr_pow(r.get(), a[0].get(), a[1].get(), MPFR_RNDN); break;
    case Op::Floor: mpfr_floor(r.get(), a[0].get()); break;
    case Op::Sin: mpfr_sin(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Cos: mpfr_cos(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Tan: mpfr_tan(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Asin: mpfr_asin(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Acos: mpfr_acos(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Atan: mpfr_atan(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Sinh: mpfr_sinh(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Cosh: mpfr_cosh(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Tanh: mpfr_tanh(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Exp: mpfr_exp(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Log: mpfr_log(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Expm1: mpfr_expm1(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Log1p: mpfr_log1p(r.get(), a[0].get(), MPFR_RNDN); break;
    case Op::Atan2: mpfr_atan2(r.get(), a[0].get(), a[1].get(), MPFR_RNDN); break;
    case Op::TheFunc: return std::nullopt;
    }
    if (!r.is_finite())
        return std::nullopt;
    return r;
}

std::optional<Big> eval_big(const Expr& e, const EvalCtx& ctx)
{
    switch (e.kind()) {
    case Expr::Kind::Num:
        return Big::from_rational_pi(e.value());
    case Expr::Kind::Var: {
        if (!ctx.env)
            return std::nullopt;
        auto it = ctx.env->find(e.name());
        if (it == ctx.env->end())
            return std::nullopt;
        return Big::from_double(it->second);
    }
    case Expr::Kind::App: {
        std::vector<Big> args;
        args.reserve(e.children().size());
        for (const auto& c : e.children()) {
            auto v = eval_big(*c, ctx);
            if (!v)
                return std::nullopt;
            args.push_back(std::move(*v));
        }
        if (e.op() == Op::TheFunc) {
            if (!ctx.thefunc_interp)
                return std::nullopt;
            Big r;
            mpfr_sin(r.get(), args[0].get(), MPFR_RNDN);
            mpfr_add(r.get(), r.get(), args[0].get(), MPFR_RNDN);
            if (!r.is_finite())
                return std::nullopt;
            return r;
        }
        if (auto p = DomainTable::standard().predicate(e.op()))
            if (predicate_trips(*p, args))
                return std::nullopt;
        return apply_big(e.op(), args);
    }
    }
    return std::nullopt;
}

// |a-b| <= tol * max(|a|, |b|), with an absolute floor of 2^-96. The
// floor is the oracle's noise level: true identities can cancel
// intermediates of order 1 down to values near zero, leaving only
// rounding residue (~2^-192 times the largest intermediate), which must
// not be read as a violation. Genuine violations differ by the scale of
// the values themselves, far above the floor.
bool values_agree(const Big& a, const Big& b, double tol, double* rel_err_out = nullptr)
{
    Big diff, ma, mb;
    mpfr_sub(diff.get(), a.get(), b.get(), MPFR_RNDN);
    mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
    mpfr_abs(ma.get(), a.get(), MPFR_RNDN);
    mpfr_abs(mb.get(), b.get(), MPFR_RNDN);
    if (mpfr_cmp(mb.get(), ma.get()) > 0)
        mpfr_set(ma.get(), mb.get(), MPFR_RNDN);

    if (rel_err_out) {
        if (ma.is_zero()) {
            *rel_err_out = diff.is_zero() ? 0.0 : 1.0;
        } else {
            Big rel;
            mpfr_div(rel.get(), diff.get(), ma.get(), MPFR_RNDN);
            *rel_err_out = rel.to_double();
        }
    }

    Big floor_abs = Big::from_double(0x1p-96);
    if (mpfr_cmp(diff.get(), floor_abs.get()) <= 0)
        return true;
    Big bound;
    mpfr_mul_d(bound.get(), ma.get(), tol, MPFR_RNDN);
    return mpfr_cmp(diff.get(), bound.get()) <= 0;
}

VerifyResult verify_pair_over_grid(const ExprPtr& lhs, const ExprPtr& rhs, int points, double tol)
{
    VerifyResult res;
    EvalCtx ctx;
    std::map<std::string, double> env;
    ctx.env = &env;
    double worst = 0.0;
    for (double x : sample_points(points)) {
        env["x"] = x;
        auto a = eval_big(*lhs, ctx);
        auto b = eval_big(*rhs, ctx);
        if (!a || !b)
            continue; // identities need only hold where both sides are defined
        ++res.defined_points;
        double rel = 0.0;
        bool ok = values_agree(*a, *b, tol, &rel);
        worst = std::max(worst, rel);
        if (!ok) {
            res.pass = false;
            res.witness = x;
            res.worst_rel_err = rel;
            return res;
        }
    }
    res.worst_rel_err = worst;
    if (res.defined_points == 0) {
        res.all_undefined = true;
        res.pass = false;
        return res;
    }
    res.pass = true;
    return res;
}

} // namespace

std::vector<double> sample_points(int n)
{
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(n));
    int n_linear = n / 2;
    int n_log = n / 4;
    int n_pi = n - n_linear - n_log;

    for (int i = 0; i < n_linear; ++i) {
        double t = n_linear == 1 ? 0.5 : static_cast<double>(i) / (n_linear - 1);
        pts.push_back(-10.0 + 20.0 * t);
    }
    for (int i = 0; i < n_log; ++i) {
        double t = n_log == 1 ? 0.5 : static_cast<double>(i) / (n_log - 1);
        double mag = std::pow(10.0, -12.0 + 24.0 * t);
        pts.push_back(i % 2 == 0 ? mag : -mag);
    }
    const double pi6 = 3.14159265358979323846 / 6.0;
    for (int i = 0; i < n_pi; ++i) {
        int k = (i % 2 == 0 ? 1 : -1) * ((i / 2) + 1);
        pts.push_back(k * pi6);
    }
    return pts;
}

std::optional<double> eval_point(const ExprPtr& e, double x)
{
    EvalCtx ctx;
    std::map<std::string, double> env{{"x", x}};
    ctx.env = &env;
    auto v = eval_big(*e, ctx);
    if (!v)
        return std::nullopt;
    return v->to_double();
}

std::string VerifyResult::describe() const
{
    std::ostringstream os;
    if (pass) {
        os << "pass (" << defined_points << " defined points, worst rel err " << worst_rel_err << ")";
    } else if (all_undefined) {
        os << "fail (no defined sample points)";
    } else {
        os << "fail at x = ";
        if (witness)
            os << *witness;
        os << " (rel err " << worst_rel_err << ")";
    }
    return os.str();
}

VerifyResult verify_identity(const ExprPtr& f, const ExprPtr& rhs, int points, double tol)
{
    ExprPtr substituted = substitute_thefunc(rhs, f);
    ExprPtr fx = substitute_var(f, "x", Expr::var("x")); // f is already in x
    return verify_pair_over_grid(fx, substituted, points, tol);
}

VerifyResult verify_equal(const ExprPtr& lhs, const ExprPtr& rhs, int points, double tol)
{
    return verify_pair_over_grid(lhs, rhs, points, tol);
}

PairCheck check_pair(const Expr& lhs, const Expr& rhs,
                     const std::map<std::string, double>& env, double tol)
{
    PairCheck out;
    EvalCtx ctx;
    ctx.env = &env;
    ctx.thefunc_interp = true;
    auto a = eval_big(lhs, ctx);
    auto b = eval_big(rhs, ctx);
    out.lhs_defined = a.has_value();
    out.rhs_defined = b.has_value();
    if (a)
        out.lhs_value = a->to_double();
    if (b)
        out.rhs_value = b->to_double();
    if (a && b)
        out.agree = values_agree(*a, *b, tol);
    return out;
}

} // namespace forge
