#include "gfde/problem.hpp"

#include <algorithm>
#include <cmath>

#include "gfde/error.hpp"

namespace gfde {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    for (double v : coeffs_) {
        if (!std::isfinite(v)) throw InputError("polynomial coefficients must be finite");
    }
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> z) const {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double Polynomial::derivative(double x) const {
    double acc = 0.0;
    for (std::size_t j = coeffs_.size() - 1; j >= 1; --j) {
        acc = acc * x + static_cast<double>(j) * coeffs_[j];
    }
    return acc;
}

double Polynomial::majorant(double x) const {
    if (x < 0.0) throw DomainError("majorant polynomial evaluated at negative x");
    double acc = 0.0;
    for (std::size_t j = coeffs_.size() - 1; j >= 1; --j) acc = (acc + std::abs(coeffs_[j])) * x;
    return acc;
}

double Polynomial::majorant_derivative(double x) const {
    if (x < 0.0) throw DomainError("majorant derivative evaluated at negative x");
    double acc = 0.0;
    for (std::size_t j = coeffs_.size() - 1; j >= 1; --j) {
        acc = acc * x + static_cast<double>(j) * std::abs(coeffs_[j]);
    }
    return acc;
}

bool Polynomial::majorant_derivative_increasing() const {
    for (std::size_t j = 2; j < coeffs_.size(); ++j) {
        if (coeffs_[j] != 0.0) return true;
    }
    return false;
}

std::function<double(double)> Problem::a_fn() const {
    return [e = a](double t) { return e.eval(t); };
}

std::function<double(double)> Problem::b_fn() const {
    return [e = b](double t) { return e.eval(t); };
}

std::function<double(double)> Problem::psi_fn() const {
    return [e = psi](double t) {
        const double v = e.eval(t);
        if (std::abs(v) > 1.0 + kPsiRangeSlack) {
            throw EvalError("psi(" + std::to_string(t) + ") = " + std::to_string(v) + " leaves [-1, 1]");
        }
        return std::clamp(v, -1.0, 1.0);
    };
}

std::function<double(double)> Problem::forcing_fn() const {
    return [ea = a, eb = b, p0 = P.constant_term()](double t) {
        return p0 == 0.0 ? eb.eval(t) : eb.eval(t) + p0 * ea.eval(t);
    };
}

std::function<std::complex<double>(std::complex<double>)> Problem::forcing_fn_complex() const {
    return [ea = a, eb = b, p0 = P.constant_term()](std::complex<double> z) {
        return p0 == 0.0 ? eb.eval(z) : eb.eval(z) + p0 * ea.eval(z);
    };
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok; });
}

std::string ValidationReport::first_failure() const {
    for (const auto& c : checks) {
        if (!c.ok) return c.message;
    }
    return {};
}

ValidationReport validate(const Problem& p) {
    ValidationReport r;

    ValidationCheck d{"d_range", true, {}, {}, {}};
    if (!(p.d >= -1.0 && p.d <= 1.0)) {
        d.ok = false;
        d.message = "d outside [-1,1]";
        d.worst_value = p.d;
    }
    r.checks.push_back(d);

    ValidationCheck k{"k_positive", true, {}, {}, {}};
    if (!(p.k > 0.0) || !std::isfinite(p.k)) {
        k.ok = false;
        k.message = "k must be a positive number";
        k.worst_value = p.k;
    }
    r.checks.push_back(k);

    ValidationCheck c{"c_finite", std::isfinite(p.c), {}, {}, {}};
    if (!c.ok) c.message = "c must be finite";
    r.checks.push_back(c);

    ValidationCheck mu{"mu_positive", true, {}, {}, {}};
    if (p.mu && !(*p.mu > 0.0)) {
        mu.ok = false;
        mu.message = "mu must be positive";
        mu.worst_value = *p.mu;
    }
    r.checks.push_back(mu);

    ValidationCheck tol{"tolerances", true, {}, {}, {}};
    const auto& s = p.solver;
    if (!(s.cheb_tol >= 1e-15 && s.cheb_tol <= 1e-3)) {
        tol.ok = false;
        tol.message = "cheb_tol outside [1e-15, 1e-3]";
    } else if (!(s.solve_tol > 0.0)) {
        tol.ok = false;
        tol.message = "solve tolerance must be positive";
    } else if (s.max_iter == 0 || s.max_degree < 16) {
        tol.ok = false;
        tol.message = "max_iter must be positive and max_degree at least 16";
    }
    r.checks.push_back(tol);

    ValidationCheck deg{"degree", true, {}, {}, {}};
    if (p.P.degree() < 2) {
        r.out_of_theorem = true;
        r.warnings.push_back("polynomial degree " + std::to_string(p.P.degree()) +
                             " < 2: outside the existence theorem's scope");
        deg.message = "degree below 2 (warning only)";
    }
    r.checks.push_back(deg);

    ValidationCheck range{"psi_range", true, {}, {}, {}};
    ValidationCheck data{"data_defined", true, {}, {}, {}};
    double worst = -1.0;
    for (double t : chebyshev_points(kPsiRangeGrid)) {
        try {
            const double v = p.psi.eval(t);
            if (std::abs(v) > worst) {
                worst = std::abs(v);
                range.worst_point = t;
                range.worst_value = v;
            }
            p.a.eval(t);
            p.b.eval(t);
        } catch (const EvalError& e) {
            data.ok = false;
            data.message = std::string("data function undefined at t = ") + std::to_string(t) + ": " + e.what();
            data.worst_point = t;
            break;
        }
    }
    if (data.ok && worst > 1.0 + kPsiRangeSlack) {
        range.ok = false;
        range.message = "psi maps [-1,1] outside [-1,1]: psi(" + std::to_string(*range.worst_point) +
                        ") = " + std::to_string(*range.worst_value);
    }
    r.checks.push_back(range);
    r.checks.push_back(data);
    return r;
}

}  // namespace gfde
