#include <doctest.h>

#include <cmath>

#include "gfde/conditions.hpp"
#include "gfde/error.hpp"
#include "gfde/io.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

TEST_CASE("first hypothesis") {
    auto ex2 = gfde::builtin_problem("example2");
    const auto c1 = gfde::check_condition1(ex2);
    const double a_l1 = oracle::integrate([](double t) { return 2 * std::log(2.0) * std::pow(2.0, t); }, -1, 1);
    CHECK(std::abs(c1.a_l1 - a_l1) < 1e-14);
    CHECK(std::abs(c1.lhs - 0.375) < 1e-12);
    CHECK(c1.ok);

    const auto e1 = gfde::check_condition1(gfde::builtin_problem("example1"));
    CHECK(e1.lhs == 0.0);
    CHECK(e1.ok);

    const auto bad = gfde::check_condition1(make_problem("2", "0", "t", {0, 1, 1}));
    CHECK(std::abs(bad.lhs - 4.0) < 1e-13);
    CHECK_FALSE(bad.ok);
}

TEST_CASE("theta") {
    const double t2 = gfde::compute_theta(gfde::builtin_problem("example2"));
    // 30-digit root of 12 r^3 + 6 r - 5/8.
    CHECK(std::abs(t2 - 0.102041649666130488602797771702) < 1e-15);
    const double t1 = gfde::compute_theta(gfde::builtin_problem("example1"));
    CHECK(std::abs(t1 - std::sqrt(1.0 / 3.0)) < 1e-12);
    CHECK(std::abs(gfde::compute_theta(make_problem("0.5", "0", "t", {0, 0, 1})) - 0.5) < 1e-14);

    CHECK_THROWS_AS(gfde::compute_theta(make_problem("0", "1", "t", {0, 0, 1})), gfde::ConditionError);
    CHECK_THROWS_AS(gfde::compute_theta(make_problem("1", "1", "t", {0, 0.1})), gfde::ConditionError);
    CHECK_THROWS_AS(gfde::compute_theta(make_problem("2", "0", "t", {0, 1, 1})), gfde::ConditionError);

    // Oracle: root of 3 * (4r^3 + 2r + 1/8) = 1.
    const double ref = oracle::bisect([](double r) { return 3 * (4 * r * r * r + 2 * r + 0.125) - 1; }, 0.0, 1.0);
    CHECK(std::abs(t2 - ref) < 1e-13);
}

TEST_CASE("theta scales with the data") {
    for (double lambda : {0.5, 2.0}) {
        auto p = gfde::builtin_problem("example2");
        p.a = gfde::Expr::parse(std::to_string(lambda) + "*(2*ln(2)*2^t)");
        const double a_l1 = gfde::check_condition1(p).a_l1;
        CHECK(std::abs(a_l1 - 3.0 * lambda) < 1e-13);
        const double th = gfde::compute_theta(p);
        CHECK(std::abs(a_l1 * p.P.majorant_derivative(th) - 1.0) < 1e-12);
    }
}

TEST_CASE("second hypothesis") {
    auto ex2 = gfde::builtin_problem("example2");
    const double th2 = gfde::compute_theta(ex2);
    const auto c2 = gfde::check_condition2(ex2, th2);
    CHECK(std::abs(c2.lhs - 0.02) < 1e-10);
    CHECK(c2.ok);
    // theta - (theta^4 + theta^2 + theta/8) / (4 theta^3 + 2 theta + 1/8)
    const double gap = th2 - (std::pow(th2, 4) + th2 * th2 + th2 / 8) / (4 * std::pow(th2, 3) + 2 * th2 + 0.125);
    CHECK(std::abs(c2.bound - gap) < 1e-15);
    CHECK(std::abs(c2.slack() - (gap - c2.lhs)) < 1e-16);

    auto ex1 = gfde::builtin_problem("example1");
    const auto c1 = gfde::check_condition2(ex1, gfde::compute_theta(ex1));
    CHECK(std::abs(c1.lhs - 0.2 * std::sinh(1.0)) < 1e-12);
    CHECK(std::abs(c1.lhs - 0.2350402387) < 1e-10);
    CHECK(std::abs(c1.bound - 2.0 * std::sqrt(1.0 / 3.0) / 3.0) < 1e-12);
    CHECK(c1.ok);

    auto degenerate = make_problem("0.5", "-0.5", "t", {1, 0, 1});
    const auto cd = gfde::check_condition2(degenerate, gfde::compute_theta(degenerate));
    CHECK(cd.lhs == 0.0);
    CHECK_FALSE(cd.ok);
}

TEST_CASE("radii") {
    auto q = make_problem("0.5", "0", "t", {0, 0, 1}, 0.0, 0.1);
    const auto rad = gfde::localize_radii(q, gfde::compute_theta(q));
    CHECK(std::abs(rad.r0 - (1 - std::sqrt(0.6)) / 2) < 1e-12);
    CHECK(std::abs(rad.r1 - (1 + std::sqrt(0.6)) / 2) < 1e-12);
    CHECK(std::abs(rad.r0 - 0.1127016654) < 1e-10);
    CHECK(rad.r0_bracket.certifies_sign_change());
    CHECK(rad.r1_bracket.certifies_sign_change());

    auto ex2 = gfde::builtin_problem("example2");
    const auto rep = gfde::check_conditions(ex2);
    REQUIRE(rep.passed());
    auto H = [](double r) { return 3 * (r * r * r * r + r * r + r / 8) + 0.02 - r; };
    const double r0 = oracle::bisect(H, 0.0, *rep.theta);
    const double r1 = oracle::bisect(H, *rep.theta, 1.0);
    CHECK(std::abs(rep.radii->r0 - r0) < 1e-12);
    CHECK(std::abs(rep.radii->r1 - r1) < 1e-12);
    CHECK(std::abs(H(rep.radii->r0)) < 1e-11);
    CHECK(0 < rep.radii->r0);
    CHECK(rep.radii->r0 < *rep.theta);
    CHECK(*rep.theta < rep.radii->r1);
    CHECK(*rep.q <= 1 - 1e-12);
    CHECK(std::abs(rep.theta_residual(ex2.P)) <= 1e-12);
}

TEST_CASE("report records failures") {
    const auto r = gfde::check_conditions(make_problem("2", "0", "t", {0, 1, 1}));
    CHECK_FALSE(r.passed());
    CHECK_FALSE(r.cond1_ok());
    CHECK_FALSE(r.theta);
    CHECK_FALSE(r.failure.empty());

    const auto big = gfde::check_conditions(make_problem("1", "5", "t", {0, 0, 1}));
    CHECK(big.cond1_ok());
    CHECK(big.theta);
    CHECK_FALSE(big.cond2_ok());
    CHECK_FALSE(big.radii);
}
