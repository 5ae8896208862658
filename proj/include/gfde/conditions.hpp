#pragma once

#include <optional>
#include <string>

#include "gfde/problem.hpp"

namespace gfde {

/// Bracketing certificate for a root of H: H(lo) and H(hi) have opposite signs.
struct RootBracket {
    double lo = 0.0;
    double hi = 0.0;
    double h_lo = 0.0;
    double h_hi = 0.0;

    bool certifies_sign_change() const { return (h_lo > 0.0 && h_hi < 0.0) || (h_lo < 0.0 && h_hi > 0.0); }
};

struct Condition1 {
    double a_l1 = 0.0;  ///< ||a||_1
    double lhs = 0.0;   ///< ||a||_1 * majorant'(0)
    bool ok = false;    ///< lhs < 1
};

struct Condition2 {
    double forcing_l1 = 0.0;  ///< ||b + P(0) a||_1
    double lhs = 0.0;         ///< forcing_l1 + |c|
    double bound = 0.0;       ///< theta - majorant(theta) / majorant'(theta)
    bool ok = false;          ///< 0 < lhs < bound
    double slack() const { return bound - lhs; }
};

struct Radii {
    double r0 = 0.0;
    double r1 = 0.0;
    RootBracket r0_bracket;
    RootBracket r1_bracket;
};

/// Everything known about the hypotheses of the existence theorem for one
/// instance. Optional fields are absent when an earlier stage failed.
struct ConditionsReport {
    double cheb_tol = kDefaultChebTol;
    Condition1 cond1;
    std::optional<double> theta;
    std::optional<Condition2> cond2;
    std::optional<Radii> radii;
    std::optional<double> q;  ///< ||a||_1 * majorant'(r0)
    std::string failure;      ///< why the report stops early, if it does

    bool cond1_ok() const { return cond1.ok; }
    bool cond2_ok() const { return cond2 && cond2->ok; }
    bool passed() const { return cond1_ok() && cond2_ok() && radii && q; }
    /// ||a||_1 * majorant'(theta) - 1, zero at the exact root.
    double theta_residual(const Polynomial& P) const;
};

double l1_norm_of(const std::function<double(double)>& f, const SolverSettings& s);

Condition1 check_condition1(const Problem& p);

/// Unique positive root of a_l1 * majorant'(r) = 1. Requires a_l1 > 0, a
/// non-constant majorant derivative and a_l1 * majorant'(0) < 1; throws
/// ConditionError otherwise.
double compute_theta(double a_l1, const Polynomial& P);
double compute_theta(const Problem& p);

Condition2 check_condition2(const Problem& p, double theta);

/// Roots r0 < theta < r1 of H(r) = a_l1 majorant(r) + cond2_lhs - r.
Radii localize_radii(double a_l1, double cond2_lhs, const Polynomial& P, double theta);
Radii localize_radii(const Problem& p, double theta);

/// Runs all stages, recording the first failure instead of throwing.
ConditionsReport check_conditions(const Problem& p);

}  // namespace gfde
