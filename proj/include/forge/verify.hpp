#pragma once

#include "forge/expr.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace forge {

// All numeric ground truth runs through MPFR at 192-bit precision.
// That is far below the exactness of the rewrite rules (which are
// exact) and far above double noise, and MPFR's exponent range makes
// overflow/underflow a non-issue on the sampling grids used here.

inline constexpr int kEvalPrecisionBits = 192;

// Deterministic sample grid: a linear grid on [-10, 10], a log grid
// over +/-[1e-12, 1e12], and multiples of pi/6.
std::vector<double> sample_points(int n);

// Single-point evaluation of a closed expression in x.
// nullopt = undefined per the domain table (or a non-finite result).
std::optional<double> eval_point(const ExprPtr& e, double x);

struct VerifyResult {
    bool pass = false;
    int defined_points = 0;
    bool all_undefined = false;
    std::optional<double> witness; // first failing sample
    double worst_rel_err = 0.0;

    std::string describe() const;
};

// Checks f(x) == rhs[thefunc := f](x) at every sample point where both
// sides are defined; fails when any defined point disagrees beyond tol
// (relative) or when no point is defined at all.
VerifyResult verify_identity(const ExprPtr& f, const ExprPtr& rhs, int points, double tol);

// Same discipline for two closed expressions in x (no thefunc).
VerifyResult verify_equal(const ExprPtr& lhs, const ExprPtr& rhs, int points, double tol);

// One-point comparison of two pattern instantiations, used by the rule
// validator. thefunc, if present, is interpreted as v -> v + sin(v)
// (a fixed nonlinear strictly-increasing odd function; rules quantified
// over all f must in particular hold for it, and its moderate growth
// keeps compositions like exp(thefunc(a)) evaluable on the grid).
struct PairCheck {
    bool lhs_defined = false;
    bool rhs_defined = false;
    bool agree = true; // meaningful only when both sides are defined
    double lhs_value = 0.0;
    double rhs_value = 0.0;
};

PairCheck check_pair(const Expr& lhs, const Expr& rhs,
                     const std::map<std::string, double>& env, double tol);

} // namespace forge
