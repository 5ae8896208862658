#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gfde/chebfun.hpp"
#include "gfde/conditions.hpp"
#include "gfde/problem.hpp"

namespace gfde {

inline constexpr double kBallSlack = 1e-10;
inline constexpr std::size_t kResidualGrid = 2048;  // 2049 Chebyshev points

/// T(f)(x) = c + int_d^x [a(t) P(f(psi(t))) + b(t)] dt, rebuilt adaptively.
ChebFun apply_T(const ChebFun& f, const Problem& p);

struct SolveOptions {
    bool force = false;            ///< run even if the hypotheses fail
    bool keep_iterates = false;    ///< retain f_1, f_2, ... in the Solution
    std::optional<double> tol;     ///< overrides Problem::solver.solve_tol
    std::optional<std::size_t> max_iter;
    std::optional<ChebFun> start;  ///< first iterate; zero by default
};

struct Solution {
    ChebFun u;
    std::size_t iterations = 0;
    std::vector<double> increments;  ///< ||f_{n+1} - f_n||_inf
    double q_used = 0.0;
    double r0_used = 0.0;
    double residual_sup = 0.0;
    double stop_threshold = 0.0;
    std::optional<std::size_t> a_priori_iterations;
    double coefficient_decay_rho = 0.0;  ///< Bernstein-ellipse estimate of u
    bool converged = false;
    bool out_of_theorem = false;     ///< forced run outside the hypotheses
    std::vector<ChebFun> iterates;   ///< f_1, f_2, ... when keep_iterates
};

/// Picard iteration f_1 = start (zero), f_{n+1} = T(f_n).
///
/// Stops once the increment is at most solve_tol * (1 - q) (solve_tol when
/// q >= 1 in forced runs). Throws ConditionError when the hypotheses fail
/// and `force` is unset, BallEscapeError when an iterate leaves the ball of
/// radius r0 (+1e-10). A run that exhausts max_iter returns converged=false.
Solution solve(const Problem& p, const ConditionsReport& report, const SolveOptions& opts = {});

/// sup over 2049 Chebyshev points of |u'(x) - a(x) P(u(psi(x))) - b(x)|.
double residual(const ChebFun& u, const Problem& p);

/// Pointwise |u'(x) - a(x) P(u(psi(x))) - b(x)|.
double residual_at(const ChebFun& u, const ChebFun& du, const Problem& p, double x);

}  // namespace gfde
