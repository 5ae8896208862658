#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gfde/chebfun.hpp"
#include "gfde/expr.hpp"
#include "gfde/problem.hpp"

namespace gfde {

using complex = std::complex<double>;

struct IntervalDistance {
    double rho;   ///< distance from z to [-1, 1]
    double zhat;  ///< closest point of [-1, 1]
};

IntervalDistance dist_to_interval(complex z);

/// Distance from z to the real segment [-half_width, half_width].
double dist_to_segment(complex z, double half_width);

/// The set [-1, 1] + B(0, A n^(-1/k)).
class StadiumRegion {
public:
    StadiumRegion(double k, double A, std::size_t n);

    double k() const { return k_; }
    double A() const { return A_; }
    std::size_t n() const { return n_; }
    double radius() const { return radius_; }

    /// Open-set membership: dist_to_interval(z).rho < radius().
    bool contains(complex z) const { return dist_to_interval(z).rho < radius_; }

    /// Deterministic sample of the closure: `boundary_density` points on each
    /// of the two caps and two horizontal edges, plus roughly
    /// `interior_points` cell centres of a uniform grid that fall inside.
    std::vector<complex> sample(std::size_t boundary_density, std::size_t interior_points) const;

private:
    double k_;
    double A_;
    std::size_t n_;
    double radius_;
};

inline constexpr std::size_t kDefaultBoundaryDensity = 512;
inline constexpr std::size_t kDefaultInteriorPoints = 1024;

struct EkEntry {
    double A = 0.0;
    std::size_t p = 0;
    double worst_ratio = 0.0;     ///< max rho(psi(z)) / (A p^(-1/k)) over region (k, A, p+1)
    double worst_distance = 0.0;  ///< max rho(psi(z))
    complex worst_z{};
};

/// Sampling check of psi([-1,1]_{k,A,p+1}) within [-1,1]_{k,A,p}. Not a proof.
struct EkReport {
    std::string psi;
    double k = 1.0;
    std::vector<double> A_values;
    std::size_t p_max = 0;
    std::size_t boundary_density = 0;
    std::size_t interior_points = 0;
    std::vector<EkEntry> entries;
    bool pass = false;
    /// Largest tested A whose inclusions all hold (a candidate k-threshold).
    std::optional<double> tau_candidate;
    /// For each A: smallest p such that every tested p' >= p passes.
    std::vector<std::optional<std::size_t>> first_passing_p;
};

inline constexpr double kEkSlack = 1e-12;

EkReport check_Ek(const Expr& psi, double k, const std::vector<double>& A_values, std::size_t p_max,
                  std::size_t boundary_density = kDefaultBoundaryDensity,
                  std::size_t interior_points = kDefaultInteriorPoints);

/// Width of the analyticity neighbourhood: the given mu, or an estimate from
/// the Chebyshev coefficient decay of a, b and psi, capped at kMuCap.
inline constexpr double kMuCap = 1.0;
double analyticity_width(const Problem& p);

/// Constants entering the omega recursion.
struct OmegaSetup {
    double mu = 0.0;
    double r0 = 0.0;
    double a_sup = 0.0;        ///< ||a|| on the stadium of radius mu/2
    double forcing_sup = 0.0;  ///< ||b + P(0) a|| on the same stadium
    double nu_proxy = 0.0;     ///< min(mu, tau_candidate) / 2
    std::optional<double> tau_candidate;
    double C_est = 0.0;
};

OmegaSetup omega_setup(const Problem& p, double r0);

struct OmegaSequence {
    OmegaSetup setup;
    double s = 0.0;
    std::vector<double> values;  ///< omega_1 .. omega_{n_max}
    bool bounded = false;        ///< every value <= C_est
};

/// omega_1 = 1, omega_{n+1} = a_sup * majorant(r0 + s n^(-1/k) omega_n) + forcing_sup.
OmegaSequence omega_sequence(const Problem& p, const OmegaSetup& setup, double s, std::size_t n_max);
OmegaSequence omega_sequence(const Problem& p, double s, double r0, std::size_t n_max);

/// Grid lower approximation of Lambda(s); exact (spectral) at s = 0.
double lambda_estimate(const Problem& p, double s, double r0, double C,
                       std::size_t boundary_density = 128, std::size_t interior_points = 256,
                       std::size_t path_nodes = 256);

struct ProbeLevel {
    std::size_t n = 0;
    double worst_ratio = 0.0;  ///< max dist(f_n(z), [-r0, r0]) / (C s n^(-1/k))
    std::size_t points = 0;
};

struct ProbeReport {
    double s_requested = 0.0;
    double s_used = 0.0;
    std::size_t shrink_steps = 0;
    double C = 0.0;
    double r0 = 0.0;
    std::vector<ProbeLevel> levels;
    bool all_within = false;  ///< every ratio <= 1
};

/// Evaluates the analytic continuation of each iterate f_n (iterates[n-1])
/// over region (k, s, n) for n in [n_first, n_last]. s is halved until all
/// sample points are trusted for every probed iterate.
ProbeReport stadium_inclusion_probe(const std::vector<ChebFun>& iterates, double k, double s, double C,
                                    double r0, std::size_t n_first, std::size_t n_last,
                                    std::size_t boundary_density = 128, std::size_t interior_points = 256);

struct DerivativeNorm {
    std::size_t order = 0;
    double value = 0.0;           ///< sup |u^(j)|
    double error_estimate = 0.0;  ///< roundoff and truncation amplification
    bool ill_conditioned = false; ///< error_estimate > 1e-4 * value
};

inline constexpr std::size_t kMaxDerivativeOrder = 12;

std::vector<DerivativeNorm> derivative_norms(const ChebFun& u, std::size_t n_max = kMaxDerivativeOrder);

enum class GevreyClass { AnalyticLike, Gevrey, Unresolved };

std::string to_string(GevreyClass c);

/// Least-squares fit log m_j = alpha + j log B + e j log j over usable j >= 2.
struct GevreyEstimate {
    std::vector<double> norms;
    std::vector<std::size_t> used_orders;
    double slope = 0.0;  ///< e
    double log_B = 0.0;
    double B = 0.0;
    double intercept = 0.0;
    std::optional<double> k_hat;  ///< 1 / (e - 1) when e > 1.05
    GevreyClass classification = GevreyClass::Unresolved;
};

inline constexpr double kAnalyticSlope = 1.05;

GevreyEstimate gevrey_order_estimate(const std::vector<DerivativeNorm>& norms);
/// Convenience overload: norms[j-1] is m_j, none flagged.
GevreyEstimate gevrey_order_estimate(const std::vector<double>& norms);

}  // namespace gfde
