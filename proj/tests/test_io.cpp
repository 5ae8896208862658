#include <doctest.h>

#include <cmath>

#include "gfde/error.hpp"
#include "gfde/io.hpp"

TEST_CASE("problem files") {
    const auto p = gfde::problem_from_text(R"j({"k": 1, "d": 0, "c": 0.01, "P": [-1, 0.125, -1, 0, 1],
        "a": "2*ln(2)*2^t", "b": "301*ln(2)/150*2^t", "psi": "sin(t)", "mu": 0.5,
        "solver": {"tol": 1e-11, "max_iter": 50}})j");
    CHECK(p.c == 0.01);
    CHECK(p.P.degree() == 4);
    CHECK(p.mu == 0.5);
    CHECK(p.solver.solve_tol == 1e-11);
    CHECK(p.solver.max_iter == 50);
    CHECK(p.solver.cheb_tol == 1e-13);

    const auto back = gfde::problem_from_json(gfde::problem_to_json(p));
    CHECK(back.a.source() == p.a.source());
    CHECK(back.P.coeffs() == p.P.coeffs());
    CHECK(back.solver.max_iter == 50);
}

TEST_CASE("schema errors name the field") {
    auto message = [](const char* text) {
        try {
            gfde::problem_from_text(text);
        } catch (const gfde::InputError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    const std::string base = R"j("k": 1, "d": 0, "c": 0, "P": [0, 0, 1], "a": "t", "b": "0", "psi": "t")j";
    CHECK(message(("{" + base + R"j(, "extra": 1})j").c_str()).find("extra") != std::string::npos);
    CHECK(message(("{" + base + R"j(, "solver": {"tolerance": 1}})j").c_str()).find("tolerance") != std::string::npos);
    CHECK(message(R"j({"k": 1, "d": 0, "c": 0, "a": "t", "b": "0", "psi": "t"})j").find("\"P\"") != std::string::npos);
    CHECK(message(R"j({"k": 1, "d": 0, "c": 0, "P": [], "a": "t", "b": "0", "psi": "t"})j").find("\"P\"") !=
          std::string::npos);
    CHECK(message(R"j({"k": "one", "d": 0, "c": 0, "P": [1], "a": "t", "b": "0", "psi": "t"})j").find("\"k\"") !=
          std::string::npos);
    CHECK(message(R"j({"k": 1, "d": 0, "c": 0, "P": [1], "a": "sin(t", "b": "0", "psi": "t"})j").find("\"a\"") !=
          std::string::npos);
    CHECK(message(R"j({"k": 1, "d": 0, "c": 0,5})j").find("malformed") != std::string::npos);
    CHECK_THROWS_AS(gfde::load_problem("/nonexistent/problem.json"), gfde::InputError);
}

TEST_CASE("built-in problems") {
    const auto e1 = gfde::builtin_problem("example1");
    CHECK(e1.a.eval(0.5) == 0.5);
    CHECK(std::abs(e1.b.eval(1.0) - 0.1 * std::cosh(1.0)) < 1e-16);
    const auto e2 = gfde::builtin_problem("example2");
    CHECK(std::abs(e2.b.eval(0.0) - 301 * std::log(2.0) / 150) < 1e-15);
    CHECK_THROWS_AS(gfde::builtin_problem("example3"), gfde::InputError);

    const auto cs = gfde::cubic_sine_problem(2.0, 0.05, 1.5, 3);
    CHECK(cs.a.eval(0.5) == doctest::Approx(2.0 * 0.125));
    CHECK(cs.b.eval(1.0) == doctest::Approx(0.05 * std::cosh(1.5)));
}

TEST_CASE("reports serialize") {
    const auto p = gfde::builtin_problem("example2");
    const auto rep = gfde::check_conditions(p);
    const auto j = gfde::to_json(rep, p.P);
    CHECK(j.at("cond1_ok").get<bool>());
    CHECK(j.at("theta").get<double>() == *rep.theta);
    CHECK(j.at("slacks").contains("cond2_bound"));
    CHECK(j.at("certificates").at("r0").at("sign_change").get<bool>());
    // Doubles round-trip exactly through the text form.
    CHECK(gfde::json::parse(j.dump()).at("q").get<double>() == *rep.q);
    CHECK(gfde::to_json(gfde::validate(p)).at("ok").get<bool>());
}
