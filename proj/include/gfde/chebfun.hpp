#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace gfde {

inline constexpr double kDefaultChebTol = 1e-13;
inline constexpr std::size_t kDefaultMaxDegree = 32768;

/// Value of a series evaluated in the complex plane, with a flag telling
/// whether the point lies inside the estimated region of convergence.
struct ComplexValue {
    std::complex<double> value;
    bool trusted;
};

/// Chebyshev series u(x) = sum_j c_j T_j(x) on [-1, 1].
///
/// Built adaptively from samples at Chebyshev extreme points; the series is
/// trimmed so that its trailing coefficient is at least tol * max|c_j|.
/// Values are immutable after construction.
class ChebFun {
public:
    /// The zero function.
    ChebFun() : coeffs_{0.0} {}

    /// Wraps coefficients as given (no trimming). `build_tol` is recorded.
    explicit ChebFun(std::vector<double> coeffs, double build_tol = kDefaultChebTol);

    /// Adaptive construction on grids of 17, 33, 65, ... points. Converged
    /// when the last two coefficients fall below tol * max|c_j|. Throws
    /// ResolutionError at `max_degree`, DomainError for tol outside
    /// [1e-15, 1e-3]; errors raised by `f` propagate.
    static ChebFun build(const std::function<double(double)>& f, double tol = kDefaultChebTol,
                         std::size_t max_degree = kDefaultMaxDegree);

    static ChebFun constant(double value, double build_tol = kDefaultChebTol) {
        return ChebFun(std::vector<double>{value}, build_tol);
    }

    const std::vector<double>& coeffs() const { return coeffs_; }
    std::size_t degree() const { return coeffs_.size() - 1; }
    double build_tol() const { return build_tol_; }
    double max_abs_coeff() const;

    /// Clenshaw evaluation. |x| <= 1 + 1e-14 (clamped), otherwise DomainError.
    double operator()(double x) const;
    double eval(double x) const { return (*this)(x); }

    /// Complex Clenshaw evaluation; `trusted` is false outside the Bernstein
    /// ellipse of parameter ellipse_rho().
    ComplexValue eval_complex(std::complex<double> z) const;

    /// Bernstein ellipse parameter (> 1, possibly +inf) bounding where the
    /// series is trusted as an analytic continuation. Estimated from the
    /// coefficient decay unless overridden.
    double ellipse_rho() const { return ellipse_rho_; }
    ChebFun with_ellipse_rho(double rho) const;

    /// Antiderivative U with U(-1) = 0.
    ChebFun antiderivative() const;
    /// U(x) - U(d) for the antiderivative U.
    double integral_from(double d, double x) const;
    /// Integral over [-1, 1].
    double definite_integral() const { return integral_from(-1.0, 1.0); }

    ChebFun differentiate() const;

    /// Lower bound of sup |u| on [-1, 1]: dense grid scan plus golden-section
    /// refinement around the largest grid values.
    double sup_norm() const;

    /// int_{-1}^{1} |u(t)| dt via sign-change splitting.
    double l1_norm() const { return abs_integral(-1.0, 1.0); }

    /// int_lo^hi |u(t)| dt for -1 <= lo <= hi <= 1. Throws ResolutionError
    /// when more than 10 * (degree + 1) sign changes are found.
    double abs_integral(double lo, double hi) const;

    /// Roots in [-1, 1] located by a grid scan and bisection to 1e-14.
    std::vector<double> roots() const;

    /// Values at the n + 1 Chebyshev extreme points cos(j pi / n), j = 0..n.
    std::vector<double> values_on_grid(std::size_t n) const;

    ChebFun operator-() const;
    friend ChebFun operator+(const ChebFun& u, const ChebFun& v);
    friend ChebFun operator-(const ChebFun& u, const ChebFun& v);
    friend ChebFun operator*(double s, const ChebFun& u);
    friend ChebFun operator*(const ChebFun& u, double s) { return s * u; }
    ChebFun plus_constant(double c) const;

private:
    std::vector<double> coeffs_;
    double build_tol_ = kDefaultChebTol;
    double ellipse_rho_ = std::numeric_limits<double>::infinity();
};

/// Chebyshev extreme points cos(j pi / n), j = 0..n (descending from 1).
std::vector<double> chebyshev_points(std::size_t n);

/// Chebyshev coefficients of the degree-n interpolant through values at
/// the points returned by chebyshev_points(n).
std::vector<double> values_to_coeffs(std::span<const double> values);

/// Estimated Bernstein ellipse parameter from coefficient decay,
/// rho ~ (|c_{m/2}| / |c_m|)^(2/m); +inf for degree < 4.
double estimate_ellipse_rho(std::span<const double> coeffs);

/// True if z lies strictly inside the Bernstein ellipse with parameter rho.
bool inside_bernstein_ellipse(std::complex<double> z, double rho);

}  // namespace gfde
