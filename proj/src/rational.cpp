#include "forge/rational.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace forge {

namespace {

constexpr long double kPiLong = 3.14159265358979323846264338327950288L;

std::optional<std::int64_t> checked(__int128 v)
{
    if (v > INT64_MAX || v < INT64_MIN)
        return std::nullopt;
    return static_cast<std::int64_t>(v);
}

std::optional<Rational> make_reduced(__int128 num, __int128 den)
{
    if (den == 0)
        return std::nullopt;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a != 0) {
        num /= a;
        den /= a;
    }
    auto n = checked(num);
    auto d = checked(den);
    if (!n || !d)
        return std::nullopt;
    Rational r;
    r.num = *n;
    r.den = *d;
    return r;
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d)
{
    auto r = make_reduced(n, d);
    if (!r)
        throw std::invalid_argument("rational with zero denominator");
    *this = *r;
}

double Rational::to_double() const
{
    return static_cast<double>(num) / static_cast<double>(den);
}

long double Rational::to_long_double() const
{
    return static_cast<long double>(num) / static_cast<long double>(den);
}

std::string Rational::to_string() const
{
    if (den == 1)
        return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::optional<Rational> rat_add(const Rational& a, const Rational& b)
{
    return make_reduced(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                        static_cast<__int128>(a.den) * b.den);
}

std::optional<Rational> rat_sub(const Rational& a, const Rational& b)
{
    return rat_add(a, rat_neg(b));
}

std::optional<Rational> rat_mul(const Rational& a, const Rational& b)
{
    return make_reduced(static_cast<__int128>(a.num) * b.num,
                        static_cast<__int128>(a.den) * b.den);
}

std::optional<Rational> rat_div(const Rational& a, const Rational& b)
{
    if (b.is_zero())
        return std::nullopt;
    return make_reduced(static_cast<__int128>(a.num) * b.den,
                        static_cast<__int128>(a.den) * b.num);
}

Rational rat_neg(const Rational& a)
{
    Rational r = a;
    r.num = -r.num; // negation of a reduced rational never overflows the pair
    return r;
}

RationalPi::RationalPi(Rational q, int d)
    : coeff(q), pi_degree(q.is_zero() ? 0 : d)
{
}

double RationalPi::to_double() const
{
    return static_cast<double>(to_long_double());
}

long double RationalPi::to_long_double() const
{
    long double v = coeff.to_long_double();
    return pi_degree == 1 ? v * kPiLong : v;
}

std::optional<RationalPi> rp_add(const RationalPi& a, const RationalPi& b)
{
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    if (a.pi_degree != b.pi_degree)
        return std::nullopt;
    auto c = rat_add(a.coeff, b.coeff);
    if (!c)
        return std::nullopt;
    return RationalPi(*c, a.pi_degree);
}

std::optional<RationalPi> rp_sub(const RationalPi& a, const RationalPi& b)
{
    return rp_add(a, rp_neg(b));
}

std::optional<RationalPi> rp_mul(const RationalPi& a, const RationalPi& b)
{
    int d = a.pi_degree + b.pi_degree;
    if (a.is_zero() || b.is_zero())
        return RationalPi(Rational::integer(0), 0);
    if (d > 1)
        return std::nullopt; // pi^2 is outside the representation
    auto c = rat_mul(a.coeff, b.coeff);
    if (!c)
        return std::nullopt;
    return RationalPi(*c, d);
}

std::optional<RationalPi> rp_div(const RationalPi& a, const RationalPi& b)
{
    if (b.is_zero() || b.pi_degree != 0)
        return std::nullopt; // only division by a nonzero rational folds
    auto c = rat_div(a.coeff, b.coeff);
    if (!c)
        return std::nullopt;
    return RationalPi(*c, a.pi_degree);
}

RationalPi rp_neg(const RationalPi& a)
{
    return RationalPi(rat_neg(a.coeff), a.pi_degree);
}

std::size_t hash_rational_pi(const RationalPi& v)
{
    std::size_t h = std::hash<std::int64_t>{}(v.coeff.num);
    h ^= std::hash<std::int64_t>{}(v.coeff.den) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<int>{}(v.pi_degree) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

} // namespace forge
