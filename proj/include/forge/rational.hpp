#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace forge {

// Exact rational with checked 64-bit arithmetic. Operations that would
// overflow report failure instead of wrapping, so callers can fall back
// to leaving a term symbolic.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1; // > 0, gcd(|num|, den) == 1

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    static Rational integer(std::int64_t n) { return Rational(n, 1); }

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }
    bool is_negative() const { return num < 0; }

    double to_double() const;
    long double to_long_double() const;
    std::string to_string() const; // "3", "-3", "1/2", "-5/7"

    friend bool operator==(const Rational&, const Rational&) = default;
};

std::optional<Rational> rat_add(const Rational& a, const Rational& b);
std::optional<Rational> rat_sub(const Rational& a, const Rational& b);
std::optional<Rational> rat_mul(const Rational& a, const Rational& b);
std::optional<Rational> rat_div(const Rational& a, const Rational& b); // b must be nonzero
Rational rat_neg(const Rational& a);

// A constant of the form q * pi^d with d in {0, 1}. This covers every
// constant the rule set and benchmark corpus need (0, 1, 2, pi, 2pi,
// -pi, ...) without a general symbolic layer. Nonzero coefficients with
// pi_degree 1 are pi multiples; zero normalizes to degree 0.
struct RationalPi {
    Rational coeff;
    int pi_degree = 0; // 0 or 1

    RationalPi() = default;
    explicit RationalPi(Rational q, int d = 0);

    static RationalPi integer(std::int64_t n) { return RationalPi(Rational::integer(n), 0); }
    static RationalPi pi() { return RationalPi(Rational::integer(1), 1); }

    bool is_zero() const { return coeff.is_zero(); }
    bool is_rational() const { return pi_degree == 0; }

    double to_double() const;
    long double to_long_double() const;

    friend bool operator==(const RationalPi&, const RationalPi&) = default;
};

// Closed arithmetic on RationalPi values. nullopt means "not foldable":
// mixed pi degrees under +/-, a pi^2 product, division by zero or by a
// pi multiple, or 64-bit overflow.
std::optional<RationalPi> rp_add(const RationalPi& a, const RationalPi& b);
std::optional<RationalPi> rp_sub(const RationalPi& a, const RationalPi& b);
std::optional<RationalPi> rp_mul(const RationalPi& a, const RationalPi& b);
std::optional<RationalPi> rp_div(const RationalPi& a, const RationalPi& b);
RationalPi rp_neg(const RationalPi& a);

std::size_t hash_rational_pi(const RationalPi& v);

} // namespace forge
