#include "gfde/picard.hpp"

#include <algorithm>
#include <cmath>

#include "gfde/error.hpp"

namespace gfde {

ChebFun apply_T(const ChebFun& f, const Problem& p) {
    const auto a = p.a_fn();
    const auto b = p.b_fn();
    const auto psi = p.psi_fn();
    const auto integrand = [&](double t) { return a(t) * p.P(f(psi(t))) + b(t); };
    const ChebFun U = ChebFun::build(integrand, p.solver.cheb_tol, p.solver.max_degree).antiderivative();
    return U.plus_constant(p.c - U(p.d));
}

Solution solve(const Problem& p, const ConditionsReport& report, const SolveOptions& opts) {
    const double tol = opts.tol.value_or(p.solver.solve_tol);
    const std::size_t max_iter = opts.max_iter.value_or(p.solver.max_iter);

    Solution sol;
    if (report.passed()) {
        sol.q_used = *report.q;
        sol.r0_used = report.radii->r0;
    } else if (!opts.force) {
        throw ConditionError("hypotheses not satisfied: " + report.failure);
    } else {
        // Heuristic ball for runs outside the theorem's hypotheses.
        const double forcing = report.cond2 ? report.cond2->forcing_l1 : l1_norm_of(p.forcing_fn(), p.solver);
        sol.r0_used = 2.0 * (forcing + std::abs(p.c));
        sol.q_used = report.cond1.a_l1 * p.P.majorant_derivative(sol.r0_used);
        sol.out_of_theorem = true;
    }
    sol.stop_threshold = sol.q_used < 1.0 ? tol * (1.0 - sol.q_used) : tol;

    ChebFun f = opts.start.value_or(ChebFun());
    if (opts.keep_iterates) sol.iterates.push_back(f);

    for (std::size_t n = 1; n <= max_iter; ++n) {
        ChebFun next = apply_T(f, p);
        const double size = next.sup_norm();
        if (size > sol.r0_used + kBallSlack) {
            throw BallEscapeError("iterate " + std::to_string(n + 1) + " has sup norm " + std::to_string(size) +
                                  " > r0 = " + std::to_string(sol.r0_used));
        }
        const double inc = (next - f).sup_norm();
        sol.increments.push_back(inc);
        f = std::move(next);
        if (opts.keep_iterates) sol.iterates.push_back(f);
        sol.iterations = n;
        if (inc <= sol.stop_threshold) {
            sol.converged = true;
            break;
        }
    }

    const double first = sol.increments.empty() ? 0.0 : sol.increments.front();
    if (sol.q_used > 0.0 && sol.q_used < 1.0 && first > 0.0) {
        const double n_req = std::ceil(std::log(tol * (1.0 - sol.q_used) / first) / std::log(sol.q_used));
        sol.a_priori_iterations = static_cast<std::size_t>(std::max(0.0, n_req));
    }

    sol.u = std::move(f);
    sol.residual_sup = residual(sol.u, p);
    sol.coefficient_decay_rho = estimate_ellipse_rho(sol.u.coeffs());
    return sol;
}

double residual_at(const ChebFun& u, const ChebFun& du, const Problem& p, double x) {
    const double psi = std::clamp(p.psi.eval(x), -1.0, 1.0);
    return std::abs(du(x) - p.a.eval(x) * p.P(u(psi)) - p.b.eval(x));
}

double residual(const ChebFun& u, const Problem& p) {
    const ChebFun du = u.differentiate();
    double worst = 0.0;
    for (double x : chebyshev_points(kResidualGrid)) worst = std::max(worst, residual_at(u, du, p, x));
    return worst;
}

}  // namespace gfde
