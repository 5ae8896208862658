#include "gfde/conditions.hpp"

#include <cmath>
#include <limits>

#include "gfde/error.hpp"

namespace gfde {

namespace {

// Bisection on a sign-changing bracket [lo, hi].
template <class F>
RootBracket bisect(F&& f, double lo, double hi, double width) {
    double f_lo = f(lo), f_hi = f(hi);
    for (int it = 0; it < 400; ++it) {
        const double tol = std::max(width, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi));
        if (hi - lo <= tol) break;
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return {mid, mid, 0.0, 0.0};
        if ((fm > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    return {lo, hi, f_lo, f_hi};
}

}  // namespace

double ConditionsReport::theta_residual(const Polynomial& P) const {
    if (!theta) return std::numeric_limits<double>::quiet_NaN();
    return cond1.a_l1 * P.majorant_derivative(*theta) - 1.0;
}

double l1_norm_of(const std::function<double(double)>& f, const SolverSettings& s) {
    return ChebFun::build(f, s.cheb_tol, s.max_degree).l1_norm();
}

Condition1 check_condition1(const Problem& p) {
    Condition1 c;
    c.a_l1 = l1_norm_of(p.a_fn(), p.solver);
    c.lhs = c.a_l1 * p.P.majorant_derivative(0.0);
    c.ok = c.lhs < 1.0;
    return c;
}

double compute_theta(double a_l1, const Polynomial& P) {
    if (!(a_l1 > 0.0)) throw ConditionError("theta undefined: ||a||_1 = 0");
    if (!P.majorant_derivative_increasing()) {
        throw ConditionError("theta undefined (degenerate polynomial): majorant derivative is constant");
    }
    auto g = [&](double r) { return a_l1 * P.majorant_derivative(r) - 1.0; };
    if (g(0.0) >= 0.0) throw ConditionError("theta undefined: ||a||_1 P'(0) >= 1");

    double lo = 0.0, hi = 1.0;
    while (g(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw ConditionError("theta bracket expansion overflowed");
    }
    const RootBracket b = bisect(g, lo, hi, 1e-14);
    double theta = 0.5 * (b.lo + b.hi);

    // One Newton step on g; kept only if it stays inside the bracket and helps.
    double slope = 0.0;
    const auto& a = P.coeffs();
    for (std::size_t j = a.size() - 1; j >= 2; --j) {
        slope = slope * theta + static_cast<double>(j * (j - 1)) * std::abs(a[j]);
    }
    slope *= a_l1;
    if (slope > 0.0) {
        const double polished = theta - g(theta) / slope;
        if (polished >= b.lo && polished <= b.hi && std::abs(g(polished)) <= std::abs(g(theta))) {
            theta = polished;
        }
    }
    return theta;
}

double compute_theta(const Problem& p) { return compute_theta(check_condition1(p).a_l1, p.P); }

Condition2 check_condition2(const Problem& p, double theta) {
    Condition2 c;
    c.forcing_l1 = l1_norm_of(p.forcing_fn(), p.solver);
    c.lhs = c.forcing_l1 + std::abs(p.c);
    c.bound = theta - p.P.majorant(theta) / p.P.majorant_derivative(theta);
    c.ok = c.lhs > 0.0 && c.lhs < c.bound;
    return c;
}

Radii localize_radii(double a_l1, double cond2_lhs, const Polynomial& P, double theta) {
    auto H = [&](double r) { return a_l1 * P.majorant(r) + cond2_lhs - r; };
    if (!(H(0.0) > 0.0)) throw ConditionError("H(0) <= 0: ||b + P(0)a||_1 + |c| is not positive");
    if (!(H(theta) < 0.0)) {
        throw ConditionError("H(theta) >= 0: forcing term exceeds theta - P(theta)/P'(theta)");
    }
    Radii out;
    out.r0_bracket = bisect(H, 0.0, theta, 1e-13);
    out.r0 = 0.5 * (out.r0_bracket.lo + out.r0_bracket.hi);

    double lo = theta, hi = 2.0 * theta;
    const double limit = std::ldexp(theta, 60);
    while (H(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > limit) throw ConditionError("r1 bracket expansion exceeded 2^60 * theta");
    }
    out.r1_bracket = bisect(H, lo, hi, 1e-13);
    out.r1 = 0.5 * (out.r1_bracket.lo + out.r1_bracket.hi);
    return out;
}

Radii localize_radii(const Problem& p, double theta) {
    const double a_l1 = check_condition1(p).a_l1;
    const Condition2 c2 = check_condition2(p, theta);
    return localize_radii(a_l1, c2.lhs, p.P, theta);
}

ConditionsReport check_conditions(const Problem& p) {
    ConditionsReport r;
    r.cheb_tol = p.solver.cheb_tol;
    r.cond1 = check_condition1(p);
    if (!r.cond1.ok) {
        r.failure = "first hypothesis fails: ||a||_1 P'(0) >= 1";
        return r;
    }
    try {
        r.theta = compute_theta(r.cond1.a_l1, p.P);
    } catch (const ConditionError& e) {
        r.failure = e.what();
        return r;
    }
    r.cond2 = check_condition2(p, *r.theta);
    if (!r.cond2->ok) {
        r.failure = r.cond2->lhs > 0.0 ? "second hypothesis fails: ||b + P(0)a||_1 + |c| >= theta - P(theta)/P'(theta)"
                                       : "second hypothesis fails: ||b + P(0)a||_1 + |c| is not positive";
        return r;
    }
    r.radii = localize_radii(r.cond1.a_l1, r.cond2->lhs, p.P, *r.theta);
    r.q = r.cond1.a_l1 * p.P.majorant_derivative(r.radii->r0);
    return r;
}

}  // namespace gfde
