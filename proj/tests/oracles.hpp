#pragma once

// Independent reference computations for the tests. Nothing here touches the
// library's Chebyshev machinery.

#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

namespace oracle {

// Adaptive Gauss-Kronrod on [lo, hi].
inline double integrate(const std::function<double(double)>& f, double lo, double hi) {
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-14, &err);
}

// int |f| over [lo, hi], split at the given breakpoints.
inline double integrate_abs(const std::function<double(double)>& f, std::vector<double> cuts, double lo, double hi) {
    cuts.insert(cuts.begin(), lo);
    cuts.push_back(hi);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += integrate([&](double t) { return std::abs(f(t)); }, cuts[i], cuts[i + 1]);
    }
    return total;
}

// Root of a sign-changing f on [lo, hi] to ~1e-15.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15; };
    const auto r = boost::math::tools::bisect(f, lo, hi, tol);
    return 0.5 * (r.first + r.second);
}

// y' = rhs(t, y), y(t0) = y0, sampled at each point of `ts` (any order).
inline std::vector<double> integrate_ode(const std::function<double(double, double)>& rhs, double t0, double y0,
                                         const std::vector<double>& ts) {
    using namespace boost::numeric::odeint;
    using state = std::vector<double>;
    auto sys = [&](const state& y, state& dy, double t) { dy[0] = rhs(t, y[0]); };
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) {
        state y{y0};
        if (t != t0) {
            const double dt = (t > t0 ? 1e-3 : -1e-3);
            integrate_adaptive(make_controlled(1e-14, 1e-14, runge_kutta_dopri5<state>()), sys, y, t0, t, dt);
        }
        out.push_back(y[0]);
    }
    return out;
}

}  // namespace oracle
