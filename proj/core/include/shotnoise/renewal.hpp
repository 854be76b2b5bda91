#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shotnoise/dynamics.hpp"
#include "shotnoise/estimators.hpp"
#include "shotnoise/exponent.hpp"

namespace shotnoise {

/// Law of the tilted intensity started from zero when the tilted shock rate
/// is an integer multiple n of delta and tilted shocks are exponential:
/// a Binomial(n, 1 - e^{-delta t}) number of Exp(rate) shocks. The j = 0
/// term is an atom at zero.
struct ErlangMixtureDensity {
    unsigned n = 1;
    double rate = 1.0;
    double delta = 1.0;
    double t = 1.0;

    /// C(n, j) e^{-delta t (n - j)} (1 - e^{-delta t})^j.
    double weight(unsigned j) const;
    double atom_weight() const { return weight(0); }
};

/// Continuous part of the density (j >= 1 terms) at z > 0.
double erlang_mixture_pdf(double z, const ErlangMixtureDensity& dens);

/// Full CDF including the atom at zero; 0 for z < 0.
double erlang_mixture_cdf(double z, const ErlangMixtureDensity& dens);

/// Builds the density from tilted exponential dynamics; throws
/// ValidationError unless shock_rate / delta is an integer (within 1e-8) and
/// the tilted shocks are exponential.
ErlangMixtureDensity erlang_mixture_for(const Dynamics& tilted, double t);

/// Upcrossing intensity nu+_l(t) = rate * int_0^l (1 - F_Y(l - z)) F_lambda(dz, t).
/// Closed form of the Erlang mixture case: the finite j = 0..n sum.
double upcrossing_intensity(double level, const ErlangMixtureDensity& dens, double shock_rate);

/// The same integral by adaptive Gauss-Kronrod quadrature over (0, level)
/// plus the atom term; independent of the closed-form sum.
double upcrossing_intensity_quadrature(double level, const ErlangMixtureDensity& dens,
                                       const DistributionSpec& shock_dist, double shock_rate);

struct McValue {
    double value = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo version over samples of lambda_t (the empirical CDF).
McValue upcrossing_intensity_mc(double level, std::span<const double> lambda_samples,
                                const DistributionSpec& shock_dist, double shock_rate);

/// Samples of lambda_t under `dyn` from lambda0; seed-derived streams.
std::vector<double> sample_intensity(const ModelParams& p, const Dynamics& dyn, double t,
                                     std::uint64_t n, const RunOptions& opts = {});

struct Assumption3Report {
    std::vector<double> grid;        // t values
    std::vector<double> integrand;   // nu+_{lambda0}(t) / shock_rate
    std::vector<double> cumulative;  // int_0^t of the integrand
    double tail_lower_bound = 0.0;   // min integrand over the second half of the grid
    bool pass = false;               // integrand bounded below by a positive constant on the tail
};

/// Cumulative upcrossing integral through level lambda0 on [0, t_max] for the
/// Erlang-mixture tilted configuration; `points` grid intervals.
Assumption3Report assumption3_check(const Dynamics& tilted, double lambda0, double t_max,
                                    std::size_t points);

struct AsymptoticScanRow {
    double u = 0.0;
    double psi_hat = 0.0;
    double std_error = 0.0;
    double psi_eru = 0.0;
    double std_error_eru = 0.0;
    double bound = 0.0;
};

struct AsymptoticScan {
    std::vector<AsymptoticScanRow> rows;
    bool stabilized = false;
    double band = 0.15;
};

/// psi(u) e^{R u} by importance sampling for each u. The stabilization flag
/// looks at the last three points with u > 0.
AsymptoticScan asymptotic_scan(const ModelParams& p, const AdjustmentCoefficient& adj,
                               std::span<const double> u_grid, std::uint64_t n_per_u,
                               const RunOptions& opts = {}, double band = 0.15);

/// Widened spread of the values: max - min less twice the standard errors of
/// the two extremes, floored at 0, relative to the smallest value. The last
/// three rows are stable when this is <= band.
bool is_stabilized(std::span<const AsymptoticScanRow> rows, double band);

/// Finds rho such that rho M_Y(-alpha(R(rho))) = n delta for exponential
/// claims and shocks, holding every other parameter of `base` fixed.
/// Bisection in rho over the net-profit range, tolerance 1e-10.
ModelParams construct_integer_shock_config(const ModelParams& base, unsigned n);

} // namespace shotnoise
