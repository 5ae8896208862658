#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gfde/chebfun.hpp"
#include "gfde/expr.hpp"

namespace gfde {

/// Real polynomial P(x) = sum_j a_j x^j, coefficients in ascending powers.
/// Trailing zero coefficients are dropped, so degree() is exact.
class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}
    explicit Polynomial(std::vector<double> coeffs);

    const std::vector<double>& coeffs() const { return coeffs_; }
    std::size_t degree() const { return coeffs_.size() - 1; }
    double constant_term() const { return coeffs_[0]; }

    double operator()(double x) const;
    std::complex<double> operator()(std::complex<double> z) const;
    double derivative(double x) const;

    /// Majorant sum_{j>=1} |a_j| x^j, for x >= 0 (DomainError otherwise).
    double majorant(double x) const;
    /// Derivative of the majorant, sum_{j>=1} j |a_j| x^(j-1), for x >= 0.
    double majorant_derivative(double x) const;

    /// True when the majorant derivative is non-constant (some a_j != 0, j >= 2).
    bool majorant_derivative_increasing() const;

private:
    std::vector<double> coeffs_;
};

struct SolverSettings {
    double cheb_tol = kDefaultChebTol;
    double solve_tol = 1e-12;
    std::size_t max_iter = 200;
    std::size_t max_degree = kDefaultMaxDegree;
};

/// The instance y'(x) = a(x) P(y(psi(x))) + b(x), y(d) = c on [-1, 1].
struct Problem {
    Expr a;
    Expr b;
    Expr psi;
    Polynomial P;
    double k = 1.0;
    double d = 0.0;
    double c = 0.0;
    std::optional<double> mu;
    SolverSettings solver;

    std::function<double(double)> a_fn() const;
    std::function<double(double)> b_fn() const;
    /// psi(t) clamped into [-1, 1]; throws EvalError if |psi(t)| > 1 + 1e-12.
    std::function<double(double)> psi_fn() const;
    /// t -> b(t) + P(0) a(t).
    std::function<double(double)> forcing_fn() const;
    std::function<std::complex<double>(std::complex<double>)> forcing_fn_complex() const;
};

struct ValidationCheck {
    std::string name;
    bool ok = true;
    std::string message;
    std::optional<double> worst_point;
    std::optional<double> worst_value;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    std::vector<std::string> warnings;
    bool out_of_theorem = false;  ///< degree(P) < 2

    bool ok() const;
    /// Message of the first failing check (empty when ok).
    std::string first_failure() const;
};

inline constexpr std::size_t kPsiRangeGrid = 4096;  // 4097 Chebyshev points
inline constexpr double kPsiRangeSlack = 1e-12;

ValidationReport validate(const Problem& p);

}  // namespace gfde
