#include "shotnoise/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "shotnoise/errors.hpp"
#include "shotnoise/parallel.hpp"
#include "shotnoise/stats.hpp"

namespace shotnoise {

namespace {

constexpr unsigned kQuadratureDepth = 20;
constexpr double kQuadratureTolerance = 1e-12;

template <class F>
double integrate(F&& f, double a, double b) {
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 15>::integrate(f, a, b, kQuadratureDepth, kQuadratureTolerance);
}

} // namespace

double ErlangMixtureDensity::weight(unsigned j) const {
    if (j > n) return 0.0;
    const double stay = std::exp(-delta * t);
    const double jump = -std::expm1(-delta * t);
    return boost::math::binomial_coefficient<double>(n, j) * std::pow(stay, n - j) *
           std::pow(jump, j);
}

double erlang_mixture_pdf(double z, const ErlangMixtureDensity& dens) {
    if (!(z > 0.0)) return 0.0;
    double sum = 0.0;
    for (unsigned j = 1; j <= dens.n; ++j) {
        // rate^j z^{j-1} e^{-rate z} / (j-1)!
        sum += dens.weight(j) * dens.rate * boost::math::gamma_p_derivative(double(j), dens.rate * z);
    }
    return sum;
}

double erlang_mixture_cdf(double z, const ErlangMixtureDensity& dens) {
    if (z < 0.0) return 0.0;
    double sum = dens.atom_weight();
    if (z == 0.0) return sum;
    for (unsigned j = 1; j <= dens.n; ++j) {
        sum += dens.weight(j) * boost::math::gamma_p(double(j), dens.rate * z);
    }
    return std::min(sum, 1.0);
}

ErlangMixtureDensity erlang_mixture_for(const Dynamics& tilted, double t) {
    if (tilted.shock_dist.kind() != DistributionKind::Exponential) {
        throw ValidationError("Erlang mixture needs exponential tilted shocks");
    }
    const double ratio = tilted.shock_rate / tilted.delta;
    const double n = std::round(ratio);
    if (n < 1.0 || std::abs(ratio - n) > 1e-8 * std::max(1.0, n)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "Erlang mixture needs shock_rate / delta to be a positive integer, got " << ratio;
        throw ValidationError(msg.str());
    }
    return ErlangMixtureDensity{static_cast<unsigned>(n), tilted.shock_dist.rate(), tilted.delta, t};
}

double upcrossing_intensity(double level, const ErlangMixtureDensity& dens, double shock_rate) {
    if (!(level > 0.0)) return shock_rate * dens.atom_weight();
    const double x = dens.rate * level;
    double sum = 0.0;
    double poisson_term = std::exp(-x);  // x^j e^{-x} / j!
    for (unsigned j = 0; j <= dens.n; ++j) {
        if (j > 0) poisson_term *= x / j;
        sum += dens.weight(j) * poisson_term;
    }
    return shock_rate * sum;
}

double upcrossing_intensity_quadrature(double level, const ErlangMixtureDensity& dens,
                                       const DistributionSpec& shock_dist, double shock_rate) {
    const double atom_part = dens.atom_weight() * survival(shock_dist, level);
    if (!(level > 0.0)) return shock_rate * dens.atom_weight();
    const double continuous = integrate(
        [&](double z) { return survival(shock_dist, level - z) * erlang_mixture_pdf(z, dens); },
        0.0, level);
    return shock_rate * (atom_part + continuous);
}

McValue upcrossing_intensity_mc(double level, std::span<const double> lambda_samples,
                                const DistributionSpec& shock_dist, double shock_rate) {
    std::vector<double> terms(lambda_samples.size(), 0.0);
    for (std::size_t i = 0; i < lambda_samples.size(); ++i) {
        const double z = lambda_samples[i];
        if (z <= level) terms[i] = shock_rate * survival(shock_dist, level - z);
    }
    const Summary s = summarize(terms);
    return {s.mean, s.std_error};
}

std::vector<double> sample_intensity(const ModelParams& p, const Dynamics& dyn, double t,
                                     std::uint64_t n, const RunOptions& opts) {
    std::vector<double> out(n, 0.0);
    const double times[] = {t};
    const std::uint64_t seed = derive_seed(opts.seed, stream_tag::intensity);
    parallel_for(n, resolve_threads(opts.threads), [&](std::size_t i) {
        RandomStream stream(seed, i);
        out[i] = simulate_snapshots(p, dyn, times, stream, opts.max_events).front().lambda;
    });
    return out;
}

Assumption3Report assumption3_check(const Dynamics& tilted, double lambda0, double t_max,
                                    std::size_t points) {
    if (t_max < 0.0) throw ValidationError("assumption3_check: t_max must be >= 0");
    Assumption3Report rep;
    const auto integrand = [&](double t) {
        return upcrossing_intensity(lambda0, erlang_mixture_for(tilted, t), 1.0);
    };
    if (t_max == 0.0 || points == 0) {
        rep.grid = {0.0};
        rep.integrand = {integrand(0.0)};
        rep.cumulative = {0.0};
        rep.tail_lower_bound = rep.integrand.front();
        rep.pass = rep.tail_lower_bound > 0.0;
        return rep;
    }

    double running = 0.0;
    for (std::size_t k = 0; k <= points; ++k) {
        const double t = t_max * static_cast<double>(k) / static_cast<double>(points);
        if (k > 0) running += integrate(integrand, rep.grid.back(), t);
        rep.grid.push_back(t);
        rep.integrand.push_back(integrand(t));
        rep.cumulative.push_back(running);
    }
    rep.tail_lower_bound = kInfinity;
    for (std::size_t k = 0; k <= points; ++k) {
        if (2 * k >= points) rep.tail_lower_bound = std::min(rep.tail_lower_bound, rep.integrand[k]);
    }
    rep.pass = rep.tail_lower_bound > 0.0 && std::isfinite(rep.tail_lower_bound);
    return rep;
}

bool is_stabilized(std::span<const AsymptoticScanRow> rows, double band) {
    std::vector<AsymptoticScanRow> tail;
    for (const auto& r : rows) {
        if (r.u > 0.0) tail.push_back(r);
    }
    if (tail.size() < 3) return false;
    const std::span<const AsymptoticScanRow> last(tail.end() - 3, tail.end());
    const auto cmp = [](const auto& a, const auto& b) { return a.psi_eru < b.psi_eru; };
    const auto lo = std::min_element(last.begin(), last.end(), cmp);
    const auto hi = std::max_element(last.begin(), last.end(), cmp);
    if (!(lo->psi_eru > 0.0)) return false;
    const double widened = std::max(
        0.0, hi->psi_eru - lo->psi_eru - 2.0 * (hi->std_error_eru + lo->std_error_eru));
    return widened <= band * lo->psi_eru;
}

AsymptoticScan asymptotic_scan(const ModelParams& p, const AdjustmentCoefficient& adj,
                               std::span<const double> u_grid, std::uint64_t n_per_u,
                               const RunOptions& opts, double band) {
    if (!std::is_sorted(u_grid.begin(), u_grid.end())) {
        throw ValidationError("asymptotic_scan: u_grid must be increasing");
    }
    AsymptoticScan scan;
    scan.band = band;
    for (std::size_t k = 0; k < u_grid.size(); ++k) {
        const ModelParams pu = p.with_capital(u_grid[k]);
        RunOptions o = opts;
        o.seed = derive_seed(opts.seed, stream_tag::scan_point + k);
        const ImportanceEstimate is = is_ruin_probability(pu, adj, n_per_u, o);
        AsymptoticScanRow row;
        row.u = u_grid[k];
        row.psi_hat = is.estimate.point;
        row.std_error = is.estimate.std_error;
        row.psi_eru = is.scaled.point;
        row.std_error_eru = is.scaled.std_error;
        row.bound = lundberg_bound(pu, adj);
        scan.rows.push_back(row);
    }
    scan.stabilized = is_stabilized(scan.rows, band);
    return scan;
}

ModelParams construct_integer_shock_config(const ModelParams& base, unsigned n) {
    if (base.claim_dist.kind() != DistributionKind::Exponential ||
        base.shock_dist.kind() != DistributionKind::Exponential) {
        throw ValidationError("integer shock construction needs exponential claims and shocks");
    }
    if (n == 0) throw ValidationError("integer shock construction needs n >= 1");
    const double target = n * base.delta;
    const double rho_max = base.c / (mean(base.claim_dist) * mean(base.shock_dist)) * base.delta;

    // +1 / -1 sign of rho M_Y(-alpha(R)) - target; treats a failed root
    // (rho at the net-profit boundary) as overshooting.
    const auto excess = [&](double rho) {
        ModelParams trial = base;
        trial.rho = rho;
        try {
            const AdjustmentCoefficient adj = solve_R(trial);
            return rho * mgf(trial.shock_dist, -adj.alpha_R) - target;
        } catch (const NoRootError&) {
            return kInfinity;
        }
    };

    double lo = 1e-9 * rho_max;
    double hi = rho_max * (1.0 - 1e-9);
    if (!(excess(lo) < 0.0) || !(excess(hi) > 0.0)) {
        std::ostringstream msg;
        msg << "no rho in the net-profit range gives tilted shock rate " << target;
        throw ValidationError(msg.str());
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ModelParams out = base;
    out.rho = 0.5 * (lo + hi);
    validate(out);
    return out;
}

} // namespace shotnoise
