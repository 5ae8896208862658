#include "gfde/gevrey.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "gfde/error.hpp"

namespace gfde {

IntervalDistance dist_to_interval(complex z) {
    const double zhat = std::clamp(z.real(), -1.0, 1.0);
    return {std::hypot(std::max(std::abs(z.real()) - 1.0, 0.0), z.imag()), zhat};
}

double dist_to_segment(complex z, double half_width) {
    return std::hypot(std::max(std::abs(z.real()) - half_width, 0.0), z.imag());
}

StadiumRegion::StadiumRegion(double k, double A, std::size_t n) : k_(k), A_(A), n_(n) {
    if (!(k > 0.0) || !(A > 0.0) || n == 0) throw DomainError("stadium region needs k > 0, A > 0, n >= 1");
    radius_ = A * std::pow(static_cast<double>(n), -1.0 / k);
}

std::vector<complex> StadiumRegion::sample(std::size_t boundary_density, std::size_t interior_points) const {
    const double r = radius_;
    std::vector<complex> pts;
    pts.reserve(4 * boundary_density + interior_points);
    const std::size_t m = std::max<std::size_t>(boundary_density, 2);
    for (std::size_t i = 0; i < m; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(m - 1);
        const double angle = std::numbers::pi * (u - 0.5);
        pts.emplace_back(1.0 + r * std::cos(angle), r * std::sin(angle));
        pts.emplace_back(-1.0 - r * std::cos(angle), r * std::sin(angle));
        const double x = -1.0 + 2.0 * u;
        pts.emplace_back(x, r);
        pts.emplace_back(x, -r);
    }
    if (interior_points > 0) {
        const double width = 2.0 + 2.0 * r, height = 2.0 * r;
        const double h = std::sqrt(width * height / static_cast<double>(interior_points));
        const auto nx = static_cast<std::size_t>(std::ceil(width / h));
        const auto ny = static_cast<std::size_t>(std::ceil(height / h));
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const double y = -r + (static_cast<double>(iy) + 0.5) * height / static_cast<double>(ny);
            for (std::size_t ix = 0; ix < nx; ++ix) {
                const double x = -1.0 - r + (static_cast<double>(ix) + 0.5) * width / static_cast<double>(nx);
                const complex z(x, y);
                if (contains(z)) pts.push_back(z);
            }
        }
    }
    return pts;
}

EkReport check_Ek(const Expr& psi, double k, const std::vector<double>& A_values, std::size_t p_max,
                  std::size_t boundary_density, std::size_t interior_points) {
    if (p_max == 0) throw DomainError("p_max must be at least 1");
    if (psi.has_abs()) throw EvalError("psi contains abs and cannot be evaluated off the real axis");
    EkReport rep;
    rep.psi = psi.str();
    rep.k = k;
    rep.A_values = A_values;
    rep.p_max = p_max;
    rep.boundary_density = boundary_density;
    rep.interior_points = interior_points;
    rep.pass = true;

    for (double A : A_values) {
        if (!(A > 0.0)) throw DomainError("E(k) check needs positive A values");
        bool all_ok = true;
        std::optional<std::size_t> first_ok;
        for (std::size_t p = 1; p <= p_max; ++p) {
            const StadiumRegion region(k, A, p + 1);
            const double target = A * std::pow(static_cast<double>(p), -1.0 / k);
            EkEntry e{A, p, 0.0, -1.0, {}};
            for (const complex z : region.sample(boundary_density, interior_points)) {
                const double dist = dist_to_interval(psi.eval(z)).rho;
                if (dist > e.worst_distance) {
                    e.worst_distance = dist;
                    e.worst_z = z;
                }
            }
            e.worst_ratio = e.worst_distance / target;
            const bool ok = e.worst_ratio <= 1.0 + kEkSlack;
            if (ok) {
                if (!first_ok) first_ok = p;
            } else {
                all_ok = false;
                first_ok.reset();
            }
            rep.entries.push_back(e);
        }
        rep.first_passing_p.push_back(first_ok);
        if (all_ok) {
            rep.tau_candidate = std::max(rep.tau_candidate.value_or(0.0), A);
        } else {
            rep.pass = false;
        }
    }
    return rep;
}

double analyticity_width(const Problem& p) {
    if (p.mu) return *p.mu;
    double rho = std::numeric_limits<double>::infinity();
    for (const Expr* e : {&p.a, &p.b, &p.psi}) {
        const auto f = [e](double t) { return e->eval(t); };
        rho = std::min(rho, ChebFun::build(f, p.solver.cheb_tol, p.solver.max_degree).ellipse_rho());
    }
    if (std::isinf(rho)) return kMuCap;
    // Distance from [-1, 1] to the boundary of the Bernstein ellipse is
    // attained at the foci: semi-major axis minus one.
    const double width = 0.5 * (rho + 1.0 / rho) - 1.0;
    if (!(width > 0.0)) throw DomainError("analyticity width could not be estimated from the data");
    return std::min(width, kMuCap);
}

OmegaSetup omega_setup(const Problem& p, double r0) {
    OmegaSetup s;
    s.mu = analyticity_width(p);
    s.r0 = r0;

    const StadiumRegion half(1.0, 0.5 * s.mu, 1);
    const auto forcing = p.forcing_fn_complex();
    for (const complex z : half.sample(kDefaultBoundaryDensity, kDefaultInteriorPoints)) {
        s.a_sup = std::max(s.a_sup, std::abs(p.a.eval(z)));
        s.forcing_sup = std::max(s.forcing_sup, std::abs(forcing(z)));
    }

    std::vector<double> trial_A;
    for (int j = 1; j <= 8; ++j) trial_A.push_back(s.mu * j / 8.0);
    const EkReport ek = check_Ek(p.psi, p.k, trial_A, 20, 128, 256);
    s.tau_candidate = ek.tau_candidate;
    s.nu_proxy = 0.5 * std::min(s.mu, ek.tau_candidate.value_or(trial_A.front()));

    // Smallest C >= max(2/nu, 1) with F(x) <= C max(x, 1)^N0 on x in [0, 2].
    const double N0 = static_cast<double>(p.P.degree());
    double C = std::max(2.0 / s.nu_proxy, 1.0);
    for (int i = 0; i <= 2000; ++i) {
        const double x = 2.0 * i / 2000.0;
        const double F = s.a_sup * p.P.majorant(r0 + x) + s.forcing_sup;
        C = std::max(C, F / std::pow(std::max(x, 1.0), N0));
    }
    s.C_est = C;
    return s;
}

OmegaSequence omega_sequence(const Problem& p, const OmegaSetup& setup, double s, std::size_t n_max) {
    if (s < 0.0) throw DomainError("omega sequence needs s >= 0");
    OmegaSequence out;
    out.setup = setup;
    out.s = s;
    if (n_max == 0) return out;
    out.values.reserve(n_max);
    double w = 1.0;
    out.values.push_back(w);
    for (std::size_t n = 1; n < n_max; ++n) {
        const double x = setup.r0 + s * std::pow(static_cast<double>(n), -1.0 / p.k) * w;
        w = setup.a_sup * p.P.majorant(x) + setup.forcing_sup;
        out.values.push_back(w);
    }
    out.bounded = std::all_of(out.values.begin(), out.values.end(),
                              [&](double v) { return v <= setup.C_est; });
    return out;
}

OmegaSequence omega_sequence(const Problem& p, double s, double r0, std::size_t n_max) {
    return omega_sequence(p, omega_setup(p, r0), s, n_max);
}

double lambda_estimate(const Problem& p, double s, double r0, double C, std::size_t boundary_density,
                       std::size_t interior_points, std::size_t path_nodes) {
    if (s < 0.0) throw DomainError("Lambda needs s >= 0");
    if (p.mu && s >= *p.mu) throw DomainError("Lambda needs s < mu");
    if (s == 0.0) {
        const ChebFun a = ChebFun::build(p.a_fn(), p.solver.cheb_tol, p.solver.max_degree);
        const double mass = std::max(a.abs_integral(p.d, 1.0), a.abs_integral(-1.0, p.d));
        return mass * p.P.majorant_derivative(r0);
    }
    const StadiumRegion region(1.0, s, 1);
    auto pts = region.sample(boundary_density, interior_points);
    pts.emplace_back(1.0, 0.0);
    pts.emplace_back(-1.0, 0.0);
    const complex start(p.d, 0.0);
    const std::size_t m = std::max<std::size_t>(path_nodes, 2);
    double best = 0.0;
    for (const complex z : pts) {
        const complex step = (z - start) / static_cast<double>(m);
        double sum = 0.5 * (std::abs(p.a.eval(start)) + std::abs(p.a.eval(z)));
        for (std::size_t i = 1; i < m; ++i) sum += std::abs(p.a.eval(start + static_cast<double>(i) * step));
        best = std::max(best, sum * std::abs(step));
    }
    return best * p.P.majorant_derivative(r0 + C * s);
}

ProbeReport stadium_inclusion_probe(const std::vector<ChebFun>& iterates, double k, double s, double C,
                                    double r0, std::size_t n_first, std::size_t n_last,
                                    std::size_t boundary_density, std::size_t interior_points) {
    if (n_first == 0 || n_last < n_first) throw DomainError("probe needs 1 <= n_first <= n_last");
    if (iterates.size() < n_last) {
        throw DomainError("probe needs iterates f_1..f_" + std::to_string(n_last) + ", have " +
                          std::to_string(iterates.size()));
    }
    ProbeReport rep;
    rep.s_requested = s;
    rep.C = C;
    rep.r0 = r0;

    constexpr std::size_t kMaxShrink = 40;
    for (;; ++rep.shrink_steps) {
        bool trusted = true;
        for (std::size_t n = n_first; n <= n_last && trusted; ++n) {
            const ChebFun& f = iterates[n - 1];
            for (const complex z : StadiumRegion(k, s, n).sample(boundary_density, interior_points)) {
                if (!inside_bernstein_ellipse(z, f.ellipse_rho())) {
                    trusted = false;
                    break;
                }
            }
        }
        if (trusted) break;
        if (rep.shrink_steps == kMaxShrink) {
            throw DomainError("stadium probe: no s keeps every sample inside the trusted ellipses");
        }
        s *= 0.5;
    }
    rep.s_used = s;

    rep.all_within = true;
    for (std::size_t n = n_first; n <= n_last; ++n) {
        const ChebFun& f = iterates[n - 1];
        const StadiumRegion region(k, s, n);
        const double allowed = C * region.radius();
        ProbeLevel level{n, 0.0, 0};
        for (const complex z : region.sample(boundary_density, interior_points)) {
            const double dist = dist_to_segment(f.eval_complex(z).value, r0);
            level.worst_ratio = std::max(level.worst_ratio, dist / allowed);
            ++level.points;
        }
        if (level.worst_ratio > 1.0) rep.all_within = false;
        rep.levels.push_back(level);
    }
    return rep;
}

namespace {

// sup_{[-1,1]} |T_m^(j)| = T_m^(j)(1) = prod_{i<j} (m^2 - i^2) / (2i + 1).
double chebyshev_derivative_at_one(std::size_t m, std::size_t j) {
    double v = 1.0;
    const double mm = static_cast<double>(m) * static_cast<double>(m);
    for (std::size_t i = 0; i < j; ++i) {
        const double ii = static_cast<double>(i);
        v *= (mm - ii * ii) / (2.0 * ii + 1.0);
        if (v <= 0.0) return 0.0;
    }
    return v;
}

}  // namespace

std::vector<DerivativeNorm> derivative_norms(const ChebFun& u, std::size_t n_max) {
    n_max = std::min(n_max, kMaxDerivativeOrder);
    const std::size_t m = u.degree();
    const auto& c = u.coeffs();
    const double scale = u.max_abs_coeff();
    constexpr double eps = std::numeric_limits<double>::epsilon();

    std::vector<DerivativeNorm> out;
    ChebFun d = u;
    for (std::size_t j = 1; j <= n_max; ++j) {
        d = d.differentiate();
        // Roundoff of size eps*scale in every coefficient, plus the share of
        // the last two retained coefficients, which stands in for the
        // truncated tail.
        double roundoff = 0.0;
        for (std::size_t i = 0; i <= m; ++i) roundoff += chebyshev_derivative_at_one(i, j);
        double tail = 0.0;
        for (std::size_t i = m >= 1 ? m - 1 : 0; i <= m; ++i) tail += std::abs(c[i]) * chebyshev_derivative_at_one(i, j);
        const double err = scale * eps * roundoff + tail;
        DerivativeNorm dn;
        dn.order = j;
        dn.value = d.sup_norm();
        dn.error_estimate = err;
        dn.ill_conditioned = err > 1e-4 * dn.value;
        out.push_back(dn);
    }
    return out;
}

std::string to_string(GevreyClass c) {
    switch (c) {
        case GevreyClass::AnalyticLike: return "analytic-like";
        case GevreyClass::Gevrey: return "gevrey";
        case GevreyClass::Unresolved: return "unresolved";
    }
    return "unresolved";
}

GevreyEstimate gevrey_order_estimate(const std::vector<DerivativeNorm>& norms) {
    GevreyEstimate est;
    for (const auto& n : norms) est.norms.push_back(n.value);

    std::vector<std::array<double, 3>> rows;
    std::vector<double> rhs;
    for (const auto& n : norms) {
        if (n.order < 2 || n.ill_conditioned || !(n.value > 0.0) || !std::isfinite(n.value)) continue;
        const double j = static_cast<double>(n.order);
        rows.push_back({1.0, j, j * std::log(j)});
        rhs.push_back(std::log(n.value));
        est.used_orders.push_back(n.order);
    }
    if (rows.size() < 4) return est;

    // Normal equations, solved by Gaussian elimination with partial pivoting.
    double M[3][4] = {};
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) M[a][b] += rows[r][a] * rows[r][b];
            M[a][3] += rows[r][a] * rhs[r];
        }
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        }
        for (int c = 0; c < 4; ++c) std::swap(M[col][c], M[piv][c]);
        if (M[col][col] == 0.0) return est;
        for (int r = col + 1; r < 3; ++r) {
            const double f = M[r][col] / M[col][col];
            for (int c = col; c < 4; ++c) M[r][c] -= f * M[col][c];
        }
    }
    double x[3];
    for (int r = 2; r >= 0; --r) {
        double acc = M[r][3];
        for (int c = r + 1; c < 3; ++c) acc -= M[r][c] * x[c];
        x[r] = acc / M[r][r];
    }
    est.intercept = x[0];
    est.log_B = x[1];
    est.B = std::exp(x[1]);
    est.slope = x[2];
    if (!std::isfinite(est.slope)) return est;
    if (est.slope > kAnalyticSlope) {
        est.classification = GevreyClass::Gevrey;
        est.k_hat = 1.0 / (est.slope - 1.0);
    } else {
        est.classification = GevreyClass::AnalyticLike;
    }
    return est;
}

GevreyEstimate gevrey_order_estimate(const std::vector<double>& norms) {
    std::vector<DerivativeNorm> wrapped;
    for (std::size_t j = 0; j < norms.size(); ++j) wrapped.push_back({j + 1, norms[j], 0.0, false});
    return gevrey_order_estimate(wrapped);
}

}  // namespace gfde
