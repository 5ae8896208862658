#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gfde/conditions.hpp"
#include "gfde/error.hpp"
#include "gfde/io.hpp"
#include "gfde/picard.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using gfde::ChebFun;

TEST_CASE("operator T") {
    auto zero = make_problem("t", "0", "sin(t)", {0, 0, 1});
    CHECK(gfde::apply_T(ChebFun(), zero).sup_norm() == 0.0);

    auto p = make_problem("cos(t)", "exp(t)", "t", {2, 0, 1}, 0.3, 0.7);
    const auto Tf = gfde::apply_T(ChebFun(), p);
    for (double x : {-1.0, -0.2, 0.3, 0.9}) {
        const double ref = 0.7 + oracle::integrate([](double t) { return std::exp(t) + 2 * std::cos(t); }, 0.3, x);
        CHECK(std::abs(Tf(x) - ref) < 1e-13);
    }
    CHECK(std::abs(Tf(0.3) - 0.7) < 1e-15);

    auto ex2 = gfde::builtin_problem("example2");
    const auto T0 = gfde::apply_T(ChebFun(), ex2);
    CHECK(std::abs(T0(1.0) - (0.01 + 1.0 / 150.0)) < 1e-14);
    CHECK(std::abs(T0(0.0) - 0.01) < 1e-16);
}

TEST_CASE("example 2 solution") {
    auto ex2 = gfde::builtin_problem("example2");
    const auto rep = gfde::check_conditions(ex2);
    gfde::SolveOptions opts;
    opts.keep_iterates = true;
    const auto s = gfde::solve(ex2, rep, opts);
    REQUIRE(s.converged);
    CHECK(std::abs(s.u(0.0) - 0.01) <= 1e-12 * 1.01);
    CHECK(s.residual_sup <= 1e-10);
    CHECK(std::abs(gfde::residual(s.u, ex2) - s.residual_sup) < 1e-16);
    CHECK(s.u.sup_norm() <= rep.radii->r0 + 1e-10);
    CHECK(s.increments.back() <= ex2.solver.solve_tol * (1 - s.q_used));
    CHECK(s.q_used == *rep.q);
    for (std::size_t n = 2; n < s.increments.size(); ++n) {
        CHECK(s.increments[n] / s.increments[n - 1] <= s.q_used + 0.05);
    }
    for (const auto& f : s.iterates) CHECK(f.sup_norm() <= rep.radii->r0 + 1e-10);
    REQUIRE(s.a_priori_iterations);
    CHECK(*s.a_priori_iterations >= s.iterations - 1);
    CHECK((gfde::apply_T(s.u, ex2) - s.u).sup_norm() <= 10 * ex2.solver.solve_tol);
    CHECK(s.coefficient_decay_rho > 1.0);

    gfde::SolveOptions half;
    half.start = ChebFun::constant(0.005);
    const auto s2 = gfde::solve(ex2, rep, half);
    REQUIRE(s2.converged);
    CHECK((s2.u - s.u).sup_norm() <= 10 * ex2.solver.solve_tol);
}

TEST_CASE("forced runs") {
    auto p = make_problem("0", "cos(pi*t/2)*pi/2", "t", {0, 0, 1});
    const auto rep = gfde::check_conditions(p);
    CHECK_FALSE(rep.passed());
    CHECK_THROWS_AS(gfde::solve(p, rep), gfde::ConditionError);
    gfde::SolveOptions opts;
    opts.force = true;
    const auto s = gfde::solve(p, rep, opts);
    CHECK(s.converged);
    CHECK(s.out_of_theorem);
    for (double x : {-1.0, -0.4, 0.0, 0.75, 1.0}) CHECK(std::abs(s.u(x) - std::sin(std::numbers::pi * x / 2)) < 1e-13);
}

TEST_CASE("identity deviation matches an ODE integrator") {
    auto p = make_problem("0.3", "cos(t)", "t", {0, 0, 1}, 0.0, 0.1);
    gfde::SolveOptions opts;
    opts.force = true;
    const auto s = gfde::solve(p, gfde::check_conditions(p), opts);
    REQUIRE(s.converged);
    std::vector<double> ts;
    for (int i = 0; i <= 100; ++i) ts.push_back(-1.0 + 0.02 * i);
    const auto ys = oracle::integrate_ode([](double t, double y) { return 0.3 * y * y + std::cos(t); }, 0.0, 0.1, ts);
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) worst = std::max(worst, std::abs(s.u(ts[i]) - ys[i]));
    CHECK(worst <= 1e-8);
}

TEST_CASE("residuals") {
    auto flat = make_problem("0", "0", "t", {0, 0, 1}, 0.0, 0.4);
    CHECK(gfde::residual(ChebFun::constant(0.4), flat) == 0.0);

    auto man = make_problem("t^2", "0.05*cos(t) - t^2*(0.05*sin(sin(t)))^3", "sin(t)", {0, 0, 0, 1});
    const auto ustar = ChebFun::build([](double t) { return 0.05 * std::sin(t); });
    CHECK(gfde::residual(ustar, man) <= 1e-11);
}

TEST_CASE("iteration cap") {
    auto ex2 = gfde::builtin_problem("example2");
    gfde::SolveOptions opts;
    opts.max_iter = 3;
    const auto s = gfde::solve(ex2, gfde::check_conditions(ex2), opts);
    CHECK_FALSE(s.converged);
    CHECK(s.iterations <= 3);
}

TEST_CASE("ball escape is reported") {
    // A start far outside the ball of radius r0.
    auto ex2 = gfde::builtin_problem("example2");
    gfde::SolveOptions opts;
    opts.start = ChebFun::constant(5.0);
    CHECK_THROWS_AS(gfde::solve(ex2, gfde::check_conditions(ex2), opts), gfde::BallEscapeError);
}
