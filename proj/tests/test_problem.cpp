#include <doctest.h>

#include <cmath>
#include <random>

#include "gfde/error.hpp"
#include "gfde/problem.hpp"
#include "helpers.hpp"

using gfde::Polynomial;

TEST_CASE("polynomial evaluation") {
    Polynomial cube({0, 0, 0, 1});
    CHECK(cube(2.0) == 8.0);
    CHECK(cube.derivative(2.0) == 12.0);
    Polynomial P2({-1, 0.125, -1, 0, 1});
    CHECK(P2(0.0) == -1.0);
    CHECK(P2.degree() == 4);
    CHECK(Polynomial({0, 0, 1})(-1.0) == 1.0);
    CHECK(Polynomial({1, 2, 0, 0}).degree() == 1);
    CHECK(std::abs(cube(std::complex<double>(0.0, 1.0)) - std::complex<double>(0.0, -1.0)) < 1e-15);
}

TEST_CASE("majorant") {
    Polynomial P2({-1, 0.125, -1, 0, 1});
    for (double x : {0.0, 0.1, 0.5, 2.0}) {
        CHECK(P2.majorant(x) == doctest::Approx(x * x * x * x + x * x + x / 8));
        CHECK(P2.majorant_derivative(x) == doctest::Approx(4 * x * x * x + 2 * x + 0.125));
    }
    CHECK(P2.majorant_derivative(0.0) == 0.125);
    Polynomial cube({0, 0, 0, 1});
    CHECK(cube.majorant_derivative(0.7) == doctest::Approx(3 * 0.49));
    Polynomial five({5});
    CHECK(five.majorant(3.0) == 0.0);
    CHECK(five.majorant_derivative(3.0) == 0.0);
    CHECK_FALSE(five.majorant_derivative_increasing());
    CHECK(P2.majorant_derivative_increasing());
    CHECK_THROWS_AS(P2.majorant(-0.1), gfde::DomainError);
    CHECK_THROWS_AS(P2.majorant_derivative(-0.1), gfde::DomainError);
}

TEST_CASE("majorant properties on random polynomials") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coef(-2.0, 2.0), X(-3.0, 3.0);
    std::uniform_int_distribution<int> deg(2, 7);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> c(deg(rng) + 1);
        for (auto& v : c) v = coef(rng);
        Polynomial P(c);
        for (int i = 0; i < 20; ++i) {
            const double x = X(rng);
            CHECK(std::abs(P(x)) <= std::abs(c[0]) + P.majorant(std::abs(x)) + 1e-12);
        }
        double prev = P.majorant_derivative(0.0);
        for (int i = 1; i <= 50; ++i) {
            const double v = P.majorant_derivative(0.05 * i);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("validation") {
    auto ok = make_problem("t", "0.1*cosh(t)", "sin(t)", {0, 0, 0, 1});
    CHECK(gfde::validate(ok).ok());
    CHECK(gfde::validate(make_problem("t", "0", "t", {0, 0, 1})).ok());

    auto wide = make_problem("t", "0", "2*t", {0, 0, 1});
    const auto rep = gfde::validate(wide);
    CHECK_FALSE(rep.ok());
    bool found = false;
    for (const auto& c : rep.checks) {
        if (c.name == "psi_range") {
            found = true;
            CHECK_FALSE(c.ok);
            REQUIRE(c.worst_point);
            CHECK(std::abs(std::abs(*c.worst_point) - 1.0) < 1e-15);
            CHECK(std::abs(*c.worst_value - 2.0) < 1e-15);
        }
    }
    CHECK(found);

    auto bad_d = ok;
    bad_d.d = 3.0;
    CHECK(gfde::validate(bad_d).first_failure() == "d outside [-1,1]");
    auto bad_k = ok;
    bad_k.k = 0.0;
    CHECK_FALSE(gfde::validate(bad_k).ok());
    auto bad_tol = ok;
    bad_tol.solver.solve_tol = -1.0;
    CHECK_FALSE(gfde::validate(bad_tol).ok());

    auto linear = make_problem("t", "0", "t", {0, 1});
    const auto lin = gfde::validate(linear);
    CHECK(lin.ok());
    CHECK(lin.out_of_theorem);
    CHECK_FALSE(lin.warnings.empty());

    CHECK_FALSE(gfde::validate(make_problem("ln(t)", "0", "t", {0, 0, 1})).ok());
}

TEST_CASE("data functions") {
    auto p = make_problem("2*t", "1", "sin(t)", {3, 0, 1});
    CHECK(p.forcing_fn()(0.5) == doctest::Approx(1.0 + 3.0 * 1.0));
    CHECK(p.psi_fn()(1.0) == doctest::Approx(std::sin(1.0)));
    auto q = make_problem("t", "0", "1.0000000000001*t", {0, 0, 1});
    CHECK(q.psi_fn()(1.0) == 1.0);
    auto r = make_problem("t", "0", "1.1*t", {0, 0, 1});
    CHECK_THROWS_AS(r.psi_fn()(1.0), gfde::EvalError);
}
