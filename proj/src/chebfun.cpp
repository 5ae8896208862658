#include "gfde/chebfun.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "gfde/error.hpp"

namespace gfde {

namespace {

constexpr double kClampSlack = 1e-14;
constexpr double kRootWidth = 1e-14;

// DCT-I plans keyed by transform length. Planning is not thread-safe in
// FFTW, execution with the new-array interface is.
class DctPlans {
public:
    ~DctPlans() {
        for (auto& [n, plan] : plans_) fftw_destroy_plan(plan);
    }

    void execute(std::vector<double>& in, std::vector<double>& out) {
        const std::size_t n = in.size();
        out.resize(n);
        fftw_plan plan;
        {
            std::lock_guard lock(mutex_);
            auto it = plans_.find(n);
            if (it == plans_.end()) {
                std::vector<double> a(n), b(n);
                plan = fftw_plan_r2r_1d(static_cast<int>(n), a.data(), b.data(), FFTW_REDFT00,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
                plans_.emplace(n, plan);
            } else {
                plan = it->second;
            }
        }
        fftw_execute_r2r(plan, in.data(), out.data());
    }

private:
    std::mutex mutex_;
    std::map<std::size_t, fftw_plan> plans_;
};

DctPlans& dct_plans() {
    static DctPlans plans;
    return plans;
}

template <class T>
T clenshaw(const std::vector<double>& c, T x) {
    T b1(0), b2(0);
    const T two_x = T(2) * x;
    for (std::size_t k = c.size() - 1; k >= 1; --k) {
        const T b0 = T(c[k]) + two_x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return T(c[0]) + x * b1 - b2;
}

std::vector<double> padded_sum(const std::vector<double>& a, const std::vector<double>& b, double sb) {
    std::vector<double> out(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += sb * b[i];
    return out;
}

}  // namespace

std::vector<double> chebyshev_points(std::size_t n) {
    if (n == 0) return {0.0};
    std::vector<double> x(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        // sin form is symmetric about 0 and exact at the endpoints
        const double arg = std::numbers::pi * (static_cast<double>(n) - 2.0 * static_cast<double>(j)) /
                           (2.0 * static_cast<double>(n));
        x[j] = std::sin(arg);
    }
    return x;
}

std::vector<double> values_to_coeffs(std::span<const double> values) {
    const std::size_t count = values.size();
    if (count == 1) return {values[0]};
    const std::size_t n = count - 1;
    std::vector<double> in(values.begin(), values.end()), out;
    dct_plans().execute(in, out);
    for (auto& v : out) v /= static_cast<double>(n);
    out.front() *= 0.5;
    out.back() *= 0.5;
    return out;
}

double estimate_ellipse_rho(std::span<const double> c) {
    const std::size_t m = c.size() - 1;
    if (m < 4) return std::numeric_limits<double>::infinity();
    const std::size_t h = m / 2;
    const double head = std::max(std::abs(c[h - 1]), std::abs(c[h]));
    const double tail = std::max(std::abs(c[m - 1]), std::abs(c[m]));
    if (tail == 0.0) return std::numeric_limits<double>::infinity();
    const double ratio = head / tail;
    if (ratio <= 1.0) return 1.0;
    return std::pow(ratio, 2.0 / static_cast<double>(m));
}

bool inside_bernstein_ellipse(std::complex<double> z, double rho) {
    if (std::isinf(rho)) return true;
    return std::abs(z - 1.0) + std::abs(z + 1.0) < rho + 1.0 / rho;
}

ChebFun::ChebFun(std::vector<double> coeffs, double build_tol)
    : coeffs_(std::move(coeffs)), build_tol_(build_tol) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    ellipse_rho_ = estimate_ellipse_rho(coeffs_);
}

ChebFun ChebFun::build(const std::function<double(double)>& f, double tol, std::size_t max_degree) {
    if (!(tol >= 1e-15 && tol <= 1e-3)) {
        throw DomainError("chebfun build tolerance " + std::to_string(tol) + " outside [1e-15, 1e-3]");
    }
    auto sample = [&](double x) {
        const double v = f(x);
        if (!std::isfinite(v)) throw EvalError("non-finite sample at x = " + std::to_string(x));
        return v;
    };

    std::size_t n = 16;
    std::vector<double> values;
    for (;;) {
        const auto x = chebyshev_points(n);
        std::vector<double> next(n + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            next[j] = (!values.empty() && j % 2 == 0) ? values[j / 2] : sample(x[j]);
        }
        values = std::move(next);

        auto c = values_to_coeffs(values);
        double scale = 0.0;
        for (double v : c) scale = std::max(scale, std::abs(v));
        if (scale == 0.0) return ChebFun(std::vector<double>{0.0}, tol);

        const double tail = std::max(std::abs(c[n - 1]), std::abs(c[n]));
        if (tail <= tol * scale) {
            std::size_t m = n;
            while (m > 0 && std::abs(c[m]) < tol * scale) --m;
            c.resize(m + 1);
            return ChebFun(std::move(c), tol);
        }
        if (n >= max_degree) {
            throw ResolutionError("function not resolved at degree " + std::to_string(n) +
                                  " (relative tail " + std::to_string(tail / scale) + ")");
        }
        n = std::min(2 * n, max_degree);
    }
}

double ChebFun::max_abs_coeff() const {
    double s = 0.0;
    for (double v : coeffs_) s = std::max(s, std::abs(v));
    return s;
}

double ChebFun::operator()(double x) const {
    if (!(std::abs(x) <= 1.0 + kClampSlack)) {
        throw DomainError("chebfun evaluated at x = " + std::to_string(x) + " outside [-1, 1]");
    }
    return clenshaw(coeffs_, std::clamp(x, -1.0, 1.0));
}

ComplexValue ChebFun::eval_complex(std::complex<double> z) const {
    return {clenshaw(coeffs_, z), inside_bernstein_ellipse(z, ellipse_rho_)};
}

ChebFun ChebFun::with_ellipse_rho(double rho) const {
    ChebFun out = *this;
    out.ellipse_rho_ = rho;
    return out;
}

ChebFun ChebFun::antiderivative() const {
    const std::size_t m = degree();
    const auto& c = coeffs_;
    std::vector<double> C(m + 2, 0.0);
    auto coef = [&](std::size_t k) { return k <= m ? c[k] : 0.0; };
    // T_0 -> T_1, T_1 -> T_2 / 4, T_k -> T_{k+1}/(2(k+1)) - T_{k-1}/(2(k-1))
    C[1] = coef(0) - 0.5 * coef(2);
    for (std::size_t k = 2; k <= m + 1; ++k) {
        C[k] = (coef(k - 1) - coef(k + 1)) / (2.0 * static_cast<double>(k));
    }
    double at_minus_one = 0.0;
    for (std::size_t k = 1; k < C.size(); ++k) at_minus_one += (k % 2 == 0) ? C[k] : -C[k];
    C[0] = -at_minus_one;
    ChebFun out(std::move(C), build_tol_);
    out.ellipse_rho_ = ellipse_rho_;
    return out;
}

double ChebFun::integral_from(double d, double x) const {
    const ChebFun U = antiderivative();
    return U(x) - U(d);
}

ChebFun ChebFun::differentiate() const {
    const std::size_t m = degree();
    if (m == 0) {
        ChebFun out(std::vector<double>{0.0}, build_tol_);
        out.ellipse_rho_ = ellipse_rho_;
        return out;
    }
    std::vector<double> d(m + 1, 0.0);  // d[m] stays zero and is dropped
    for (std::size_t k = m; k >= 1; --k) {
        d[k - 1] = (k + 1 <= m ? d[k + 1] : 0.0) + 2.0 * static_cast<double>(k) * coeffs_[k];
    }
    d[0] *= 0.5;
    d.pop_back();
    ChebFun out(std::move(d), build_tol_);
    out.ellipse_rho_ = ellipse_rho_;
    return out;
}

std::vector<double> ChebFun::values_on_grid(std::size_t n) const {
    if (n < degree()) throw DomainError("grid of size " + std::to_string(n) + " below series degree");
    if (n == 0) return {coeffs_[0]};
    std::vector<double> in(n + 1, 0.0), out;
    std::copy(coeffs_.begin(), coeffs_.end(), in.begin());
    in.front() *= 2.0;
    in.back() *= 2.0;
    dct_plans().execute(in, out);
    for (auto& v : out) v *= 0.5;
    return out;
}

double ChebFun::sup_norm() const {
    const std::size_t n = std::max<std::size_t>(8 * (degree() + 1), 64);
    const auto x = chebyshev_points(n);
    const auto v = values_on_grid(n);

    std::vector<std::size_t> peaks;
    for (std::size_t j = 0; j <= n; ++j) {
        const double here = std::abs(v[j]);
        const bool left = j == 0 || here >= std::abs(v[j - 1]);
        const bool right = j == n || here >= std::abs(v[j + 1]);
        if (left && right) peaks.push_back(j);
    }
    std::sort(peaks.begin(), peaks.end(),
              [&](std::size_t a, std::size_t b) { return std::abs(v[a]) > std::abs(v[b]); });
    double best = std::abs(v[peaks.front()]);

    auto mag = [&](double t) { return std::abs(clenshaw(coeffs_, t)); };
    constexpr double kGolden = 0.6180339887498949;
    const std::size_t refine = std::min<std::size_t>(peaks.size(), 4);
    for (std::size_t p = 0; p < refine; ++p) {
        const std::size_t j = peaks[p];
        double lo = x[std::min(j + 1, n)];
        double hi = x[j == 0 ? 0 : j - 1];
        double a = hi - kGolden * (hi - lo);
        double b = lo + kGolden * (hi - lo);
        double fa = mag(a), fb = mag(b);
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            if (fa < fb) {
                lo = a;
                a = b;
                fa = fb;
                b = lo + kGolden * (hi - lo);
                fb = mag(b);
            } else {
                hi = b;
                b = a;
                fb = fa;
                a = hi - kGolden * (hi - lo);
                fa = mag(a);
            }
        }
        best = std::max({best, fa, fb});
    }
    return best;
}

std::vector<double> ChebFun::roots() const {
    std::vector<double> found;
    if (max_abs_coeff() == 0.0) return found;
    const std::size_t n = std::max<std::size_t>(8 * (degree() + 1), 64);
    const auto x = chebyshev_points(n);
    const auto v = values_on_grid(n);
    const std::size_t limit = 10 * (degree() + 1);

    auto push = [&](double r) {
        found.push_back(r);
        if (found.size() > limit) {
            throw ResolutionError("more than " + std::to_string(limit) +
                                  " sign changes; oscillation not resolved");
        }
    };
    for (std::size_t j = 0; j <= n; ++j) {
        if (v[j] == 0.0) {
            push(x[j]);
            continue;
        }
        if (j == n || v[j + 1] == 0.0 || (v[j] > 0.0) == (v[j + 1] > 0.0)) continue;
        double hi = x[j], lo = x[j + 1];  // points descend
        double f_lo = clenshaw(coeffs_, lo);
        while (hi - lo > kRootWidth) {
            const double mid = 0.5 * (lo + hi);
            const double fm = clenshaw(coeffs_, mid);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((fm > 0.0) == (f_lo > 0.0)) {
                lo = mid;
                f_lo = fm;
            } else {
                hi = mid;
            }
        }
        push(0.5 * (lo + hi));
    }
    std::sort(found.begin(), found.end());
    return found;
}

double ChebFun::abs_integral(double lo, double hi) const {
    if (lo < -1.0 - kClampSlack || hi > 1.0 + kClampSlack || lo > hi) {
        throw DomainError("abs_integral bounds must satisfy -1 <= lo <= hi <= 1");
    }
    lo = std::clamp(lo, -1.0, 1.0);
    hi = std::clamp(hi, -1.0, 1.0);
    if (max_abs_coeff() == 0.0 || lo == hi) return 0.0;
    const ChebFun U = antiderivative();
    double total = 0.0;
    double left = lo;
    for (double r : roots()) {
        if (r <= lo || r >= hi) continue;
        total += std::abs(U(r) - U(left));
        left = r;
    }
    total += std::abs(U(hi) - U(left));
    return total;
}

ChebFun ChebFun::operator-() const { return -1.0 * (*this); }

ChebFun operator+(const ChebFun& u, const ChebFun& v) {
    ChebFun out(padded_sum(u.coeffs_, v.coeffs_, 1.0), std::max(u.build_tol_, v.build_tol_));
    out.ellipse_rho_ = std::min(u.ellipse_rho_, v.ellipse_rho_);
    return out;
}

ChebFun operator-(const ChebFun& u, const ChebFun& v) {
    ChebFun out(padded_sum(u.coeffs_, v.coeffs_, -1.0), std::max(u.build_tol_, v.build_tol_));
    out.ellipse_rho_ = std::min(u.ellipse_rho_, v.ellipse_rho_);
    return out;
}

ChebFun operator*(double s, const ChebFun& u) {
    std::vector<double> c = u.coeffs_;
    for (auto& v : c) v *= s;
    ChebFun out(std::move(c), u.build_tol_);
    out.ellipse_rho_ = u.ellipse_rho_;
    return out;
}

ChebFun ChebFun::plus_constant(double c) const {
    ChebFun out = *this;
    out.coeffs_[0] += c;
    return out;
}

}  // namespace gfde
