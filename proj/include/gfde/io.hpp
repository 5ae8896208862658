#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gfde/conditions.hpp"
#include "gfde/gevrey.hpp"
#include "gfde/picard.hpp"
#include "gfde/problem.hpp"

namespace gfde {

using json = nlohmann::json;

/// Problem file schema:
///
///   {"k": 1, "d": 0, "c": 0.01, "P": [-1, 0.125, -1, 0, 1],
///    "a": "2*ln(2)*2^t", "b": "301*ln(2)/150*2^t", "psi": "sin(t)",
///    "mu": 0.5,                                   (optional)
///    "solver": {"tol": 1e-12, "max_iter": 200,
///               "cheb_tol": 1e-13, "max_degree": 32768}}   (optional)
///
/// `P` lists coefficients in ascending powers. Unknown keys are rejected.
/// Throws InputError with a message naming the offending key. Range checks
/// (d in [-1, 1], ...) are left to validate().
Problem problem_from_json(const json& doc);
Problem problem_from_text(std::string_view text);
Problem load_problem(const std::filesystem::path& path);

json problem_to_json(const Problem& p);

/// Built-in instances: "example1" (a = t, b = 0.1 cosh t, P = x^3) and
/// "example2" (a = 2 ln2 2^t, b = (301 ln2 / 150) 2^t, P = x^4 - x^2 + x/8 - 1),
/// both with psi = sin.
json builtin_problem_json(std::string_view name);
Problem builtin_problem(std::string_view name);

/// Instance y' = alpha t^N y(sin t)^3 + beta cosh(gamma t), y(0) = 0.
Problem cubic_sine_problem(double alpha, double beta, double gamma, int N);

json to_json(const ValidationReport& r);
json to_json(const ConditionsReport& r, const Polynomial& P);
json to_json(const Solution& s, const Problem& p);
json to_json(const EkReport& r);
json to_json(const OmegaSequence& w);
json to_json(const ProbeReport& r);
json to_json(const std::vector<DerivativeNorm>& norms, const GevreyEstimate& est);

}  // namespace gfde
