#include "gfde/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gfde/error.hpp"

namespace gfde {

namespace {

double number_field(const json& doc, const char* key) {
    const auto& v = doc.at(key);
    if (!v.is_number()) throw InputError(std::string("\"") + key + "\" must be a number");
    return v.get<double>();
}

std::size_t count_field(const json& doc, const char* key) {
    const auto& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() <= 0) {
        throw InputError(std::string("\"") + key + "\" must be a positive integer");
    }
    return v.get<std::size_t>();
}

Expr expr_field(const json& doc, const char* key) {
    const auto& v = doc.at(key);
    if (!v.is_string()) throw InputError(std::string("\"") + key + "\" must be an expression string");
    const auto text = v.get<std::string>();
    try {
        return Expr::parse(text);
    } catch (const ParseError& e) {
        throw InputError(std::string("\"") + key + "\": " + e.what());
    }
}

void reject_unknown(const json& doc, std::initializer_list<std::string_view> allowed, const char* where) {
    for (const auto& [key, _] : doc.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) throw InputError(std::string("unknown key \"") + key + "\" in " + where);
    }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json bracket_json(const RootBracket& b) {
    return {{"lo", b.lo}, {"hi", b.hi}, {"H_lo", b.h_lo}, {"H_hi", b.h_hi},
            {"sign_change", b.certifies_sign_change()}};
}

json complex_json(complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

Problem problem_from_json(const json& doc) {
    if (!doc.is_object()) throw InputError("problem file must hold a JSON object");
    reject_unknown(doc, {"k", "d", "c", "P", "a", "b", "psi", "mu", "solver"}, "problem");
    for (const char* key : {"k", "d", "c", "P", "a", "b", "psi"}) {
        if (!doc.contains(key)) throw InputError(std::string("missing required key \"") + key + "\"");
    }

    Problem p;
    p.k = number_field(doc, "k");
    p.d = number_field(doc, "d");
    p.c = number_field(doc, "c");

    const auto& P = doc.at("P");
    if (!P.is_array() || P.empty()) throw InputError("\"P\" must be a non-empty array of numbers");
    std::vector<double> coeffs;
    for (const auto& v : P) {
        if (!v.is_number()) throw InputError("\"P\" must be a non-empty array of numbers");
        coeffs.push_back(v.get<double>());
    }
    p.P = Polynomial(std::move(coeffs));

    p.a = expr_field(doc, "a");
    p.b = expr_field(doc, "b");
    p.psi = expr_field(doc, "psi");
    if (doc.contains("mu")) p.mu = number_field(doc, "mu");

    if (doc.contains("solver")) {
        const auto& s = doc.at("solver");
        if (!s.is_object()) throw InputError("\"solver\" must be an object");
        reject_unknown(s, {"tol", "max_iter", "cheb_tol", "max_degree"}, "solver");
        if (s.contains("tol")) p.solver.solve_tol = number_field(s, "tol");
        if (s.contains("cheb_tol")) p.solver.cheb_tol = number_field(s, "cheb_tol");
        if (s.contains("max_iter")) p.solver.max_iter = count_field(s, "max_iter");
        if (s.contains("max_degree")) p.solver.max_degree = count_field(s, "max_degree");
    }
    return p;
}

Problem problem_from_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    return problem_from_json(doc);
}

Problem load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read problem file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return problem_from_text(buf.str());
}

json problem_to_json(const Problem& p) {
    json doc = {{"k", p.k},
                {"d", p.d},
                {"c", p.c},
                {"P", p.P.coeffs()},
                {"a", p.a.source()},
                {"b", p.b.source()},
                {"psi", p.psi.source()}};
    if (p.mu) doc["mu"] = *p.mu;
    doc["solver"] = {{"tol", p.solver.solve_tol},
                     {"max_iter", p.solver.max_iter},
                     {"cheb_tol", p.solver.cheb_tol},
                     {"max_degree", p.solver.max_degree}};
    return doc;
}

json builtin_problem_json(std::string_view name) {
    if (name == "example1") {
        return {{"k", 1}, {"d", 0}, {"c", 0}, {"P", {0, 0, 0, 1}},
                {"a", "t"}, {"b", "0.1*cosh(t)"}, {"psi", "sin(t)"}};
    }
    if (name == "example2") {
        return {{"k", 1}, {"d", 0}, {"c", 0.01}, {"P", {-1, 0.125, -1, 0, 1}},
                {"a", "2*ln(2)*2^t"}, {"b", "301*ln(2)/150*2^t"}, {"psi", "sin(t)"}};
    }
    throw InputError("unknown built-in problem \"" + std::string(name) + "\" (expected example1 or example2)");
}

Problem builtin_problem(std::string_view name) { return problem_from_json(builtin_problem_json(name)); }

Problem cubic_sine_problem(double alpha, double beta, double gamma, int N) {
    auto num = [](double v) {
        std::ostringstream s;
        s.precision(17);
        s << v;
        return "(" + s.str() + ")";
    };
    json doc = {{"k", 1}, {"d", 0}, {"c", 0}, {"P", {0, 0, 0, 1}},
                {"a", num(alpha) + "*t^" + std::to_string(N)},
                {"b", num(beta) + "*cosh(" + num(gamma) + "*t)"},
                {"psi", "sin(t)"}};
    return problem_from_json(doc);
}

json to_json(const ValidationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json e = {{"name", c.name}, {"ok", c.ok}};
        if (!c.message.empty()) e["message"] = c.message;
        if (c.worst_point) e["worst_point"] = *c.worst_point;
        if (c.worst_value) e["worst_value"] = *c.worst_value;
        checks.push_back(e);
    }
    return {{"ok", r.ok()}, {"out_of_theorem", r.out_of_theorem}, {"warnings", r.warnings}, {"checks", checks}};
}

json to_json(const ConditionsReport& r, const Polynomial& P) {
    json j = {{"cheb_tol", r.cheb_tol},
              {"a_l1", r.cond1.a_l1},
              {"cond1_lhs", r.cond1.lhs},
              {"cond1_ok", r.cond1.ok},
              {"theta", optional_number(r.theta)},
              {"theta_residual", r.theta ? json(r.theta_residual(P)) : json(nullptr)},
              {"gap", r.cond2 ? json(r.cond2->bound) : json(nullptr)},
              {"forcing_l1", r.cond2 ? json(r.cond2->forcing_l1) : json(nullptr)},
              {"cond2_lhs", r.cond2 ? json(r.cond2->lhs) : json(nullptr)},
              {"cond2_ok", r.cond2_ok()},
              {"r0", r.radii ? json(r.radii->r0) : json(nullptr)},
              {"r1", r.radii ? json(r.radii->r1) : json(nullptr)},
              {"q", optional_number(r.q)},
              {"passed", r.passed()}};
    json slacks = {{"cond1", 1.0 - r.cond1.lhs}};
    if (r.cond2) {
        slacks["cond2_positive"] = r.cond2->lhs;
        slacks["cond2_bound"] = r.cond2->slack();
    }
    if (r.q) slacks["contraction"] = 1.0 - *r.q;
    j["slacks"] = slacks;
    if (r.radii) {
        j["certificates"] = {{"r0", bracket_json(r.radii->r0_bracket)}, {"r1", bracket_json(r.radii->r1_bracket)}};
    }
    if (!r.failure.empty()) j["failure"] = r.failure;
    return j;
}

json to_json(const Solution& s, const Problem& p) {
    json j = {{"converged", s.converged},
              {"iterations", s.iterations},
              {"increments", s.increments},
              {"q_used", s.q_used},
              {"r0_used", s.r0_used},
              {"stop_threshold", s.stop_threshold},
              {"residual_sup", s.residual_sup},
              {"u_at_d", s.u(p.d)},
              {"sup_norm", s.u.sup_norm()},
              {"degree", s.u.degree()},
              {"coefficient_decay_rho", std::isfinite(s.coefficient_decay_rho) ? json(s.coefficient_decay_rho)
                                                                                : json("inf")},
              {"out_of_theorem", s.out_of_theorem}};
    j["a_priori_iterations"] = s.a_priori_iterations ? json(*s.a_priori_iterations) : json(nullptr);
    return j;
}

json to_json(const EkReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        entries.push_back({{"A", e.A},
                           {"p", e.p},
                           {"worst_ratio", e.worst_ratio},
                           {"worst_distance", e.worst_distance},
                           {"worst_z", complex_json(e.worst_z)}});
    }
    json first = json::array();
    for (const auto& f : r.first_passing_p) first.push_back(f ? json(*f) : json(nullptr));
    return {{"psi", r.psi},
            {"k", r.k},
            {"A_values", r.A_values},
            {"p_max", r.p_max},
            {"boundary_density", r.boundary_density},
            {"interior_points", r.interior_points},
            {"pass", r.pass},
            {"tau_candidate", optional_number(r.tau_candidate)},
            {"first_passing_p", first},
            {"entries", entries}};
}

json to_json(const OmegaSequence& w) {
    const auto& s = w.setup;
    return {{"mu", s.mu},
            {"r0", s.r0},
            {"a_sup", s.a_sup},
            {"forcing_sup", s.forcing_sup},
            {"nu_proxy", s.nu_proxy},
            {"tau_candidate", optional_number(s.tau_candidate)},
            {"C_est", s.C_est},
            {"s", w.s},
            {"bounded", w.bounded},
            {"values", w.values}};
}

json to_json(const ProbeReport& r) {
    json levels = json::array();
    for (const auto& l : r.levels) {
        levels.push_back({{"n", l.n}, {"worst_ratio", l.worst_ratio}, {"points", l.points}});
    }
    return {{"s_requested", r.s_requested},
            {"s_used", r.s_used},
            {"shrink_steps", r.shrink_steps},
            {"C", r.C},
            {"r0", r.r0},
            {"all_within", r.all_within},
            {"levels", levels}};
}

json to_json(const std::vector<DerivativeNorm>& norms, const GevreyEstimate& est) {
    json list = json::array();
    for (const auto& n : norms) {
        list.push_back({{"order", n.order},
                        {"value", n.value},
                        {"error_estimate", n.error_estimate},
                        {"ill_conditioned", n.ill_conditioned}});
    }
    return {{"derivative_norms", list},
            {"used_orders", est.used_orders},
            {"slope", est.slope},
            {"log_B", est.log_B},
            {"B", est.B},
            {"intercept", est.intercept},
            {"k_hat", optional_number(est.k_hat)},
            {"classification", to_string(est.classification)}};
}

}  // namespace gfde
