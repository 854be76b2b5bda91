#include "shotnoise/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>

#include "shotnoise/dynamics.hpp"
#include "shotnoise/errors.hpp"
#include "shotnoise/parallel.hpp"
#include "shotnoise/stats.hpp"

namespace shotnoise {

Interval normal_interval(double point, double se) {
    return {point - 1.96 * se, point + 1.96 * se};
}

Interval clopper_pearson(std::uint64_t k, std::uint64_t n) {
    if (n == 0 || k > n) throw ValidationError("clopper_pearson: need 0 <= k <= n, n > 0");
    const double kd = static_cast<double>(k);
    const double nd = static_cast<double>(n);
    Interval out;
    out.lo = k == 0 ? 0.0 : boost::math::ibeta_inv(kd, nd - kd + 1.0, 0.025);
    out.hi = k == n ? 1.0 : boost::math::ibeta_inv(kd + 1.0, nd - kd, 0.975);
    return out;
}

namespace {

std::uint64_t total(const std::vector<std::uint64_t>& v) {
    return std::accumulate(v.begin(), v.end(), std::uint64_t{0});
}

Estimate from_values(std::span<const double> values, std::uint64_t work) {
    const Summary s = summarize(values);
    Estimate e;
    e.point = s.mean;
    e.std_error = s.std_error;
    e.n = s.n;
    e.ci95 = normal_interval(s.mean, s.std_error);
    e.work = work;
    return e;
}

} // namespace

CrudeEstimate crude_ruin_probability(const ModelParams& p, double horizon, std::uint64_t n,
                                     const RunOptions& opts) {
    if (!std::isfinite(horizon) || horizon < 0.0) {
        throw HorizonRequired("crude estimator needs a finite horizon");
    }
    if (n == 0) throw ValidationError("crude estimator needs n > 0");

    std::vector<unsigned char> ruined(n, 0);
    std::vector<std::uint64_t> events(n, 0);
    SimConfig cfg;
    cfg.measure = Physical{};
    cfg.horizon = horizon;
    cfg.seed = opts.seed;
    cfg.max_events = opts.max_events;

    const std::uint64_t seed = derive_seed(opts.seed, stream_tag::crude);
    parallel_for(n, resolve_threads(opts.threads), [&](std::size_t i) {
        RandomStream stream(seed, i);
        const PathResult r = simulate_path(p, cfg, stream);
        ruined[i] = r.ruined ? 1 : 0;
        events[i] = r.final_state.events();
    });

    CrudeEstimate out;
    out.horizon = horizon;
    out.hits = std::count(ruined.begin(), ruined.end(), 1);
    const double nd = static_cast<double>(n);
    const double point = static_cast<double>(out.hits) / nd;
    out.estimate.point = point;
    out.estimate.std_error = std::sqrt(point * (1.0 - point) / nd);
    out.estimate.n = n;
    out.estimate.work = total(events);
    if (out.hits < 30) {
        out.estimate.ci95 = clopper_pearson(out.hits, n);
        out.exact_interval = true;
    } else {
        out.estimate.ci95 = normal_interval(point, out.estimate.std_error);
    }
    return out;
}

ImportanceEstimate is_ruin_probability(const ModelParams& p, const AdjustmentCoefficient& adj,
                                       std::uint64_t n, const RunOptions& opts,
                                       bool keep_weights) {
    if (!(adj.R > 0.0) || !(adj.alpha_R < 0.0)) {
        throw ValidationError("importance sampling needs R > 0 and alpha(R) < 0");
    }
    if (n == 0) throw ValidationError("importance sampling needs n > 0");

    std::vector<double> weights(n, 0.0);
    std::vector<double> scaled(n, 0.0);
    std::vector<std::uint64_t> events(n, 0);
    std::vector<unsigned char> failed(n, 0);
    SimConfig cfg;
    cfg.measure = Tilted{adj.R};
    cfg.seed = opts.seed;
    cfg.max_events = opts.max_events;

    const double offset = -adj.R * p.u - adj.alpha_R * p.lambda0;
    const std::uint64_t seed = derive_seed(opts.seed, stream_tag::importance);
    parallel_for(n, resolve_threads(opts.threads), [&](std::size_t i) {
        RandomStream stream(seed, i);
        try {
            const PathResult r = simulate_path(p, cfg, stream);
            const double tail = adj.R * r.x_tau + adj.alpha_R * r.lambda_tau;
            weights[i] = std::exp(offset + tail);
            scaled[i] = std::exp(-adj.alpha_R * p.lambda0 + tail);
            events[i] = r.final_state.events();
        } catch (const MaxEventsExceeded&) {
            failed[i] = 1;
        }
    });

    const auto n_failed = std::count(failed.begin(), failed.end(), 1);
    if (n_failed > 0) {
        std::ostringstream msg;
        msg << n_failed << " of " << n << " tilted paths reached max_events = " << opts.max_events
            << " without ruin; the run is invalid";
        throw PathNotRuined(msg.str());
    }

    ImportanceEstimate out;
    const std::uint64_t work = total(events);
    out.estimate = from_values(weights, work);
    out.scaled = from_values(scaled, work);
    const auto [lo, hi] = std::minmax_element(weights.begin(), weights.end());
    out.min_weight = *lo;
    out.max_weight = *hi;
    out.weight_ceiling = std::exp(offset);
    if (keep_weights) out.weights = std::move(weights);
    return out;
}

Estimate is_ruin_probability_tilt(const ModelParams& p, double r, double horizon,
                                  std::uint64_t n, const RunOptions& opts) {
    if (!std::isfinite(horizon) || horizon < 0.0) {
        throw HorizonRequired("tilted estimator at a general r needs a finite horizon");
    }
    const double th = theta_checked(p, r);
    const double a = alpha(p, r);
    std::vector<double> weights(n, 0.0);
    std::vector<std::uint64_t> events(n, 0);
    SimConfig cfg;
    cfg.measure = Tilted{r};
    cfg.horizon = horizon;
    cfg.seed = opts.seed;
    cfg.max_events = opts.max_events;

    const std::uint64_t seed = derive_seed(opts.seed, stream_tag::tilted_horizon);
    parallel_for(n, resolve_threads(opts.threads), [&](std::size_t i) {
        RandomStream stream(seed, i);
        const PathResult res = simulate_path(p, cfg, stream);
        events[i] = res.final_state.events();
        if (res.ruined) {
            weights[i] = std::exp(th * *res.tau - r * p.u - a * p.lambda0 + r * res.x_tau +
                                  a * res.lambda_tau);
        }
    });
    return from_values(weights, total(events));
}

MartingaleCheckReport martingale_check(const ModelParams& p, double r,
                                       std::span<const double> times, std::uint64_t n,
                                       const RunOptions& opts) {
    if (!admissible(p, r)) {
        std::ostringstream msg;
        msg << "martingale_check: r = " << r << " is not admissible (an MGF diverges)";
        throw DomainError(msg.str());
    }
    const double a = alpha(p, r);
    // E[Y exp(-alpha Y)] = M_Y'(-alpha); throws DomainError when infinite.
    (void)mgf_prime(p.shock_dist, -a);
    if (!std::is_sorted(times.begin(), times.end())) {
        throw ValidationError("martingale_check: times must be ascending");
    }

    const double th = theta_checked(p, r);
    const std::size_t m = times.size();
    std::vector<double> h(n * m, 0.0);
    const Dynamics dyn = physical_dynamics(p);
    const std::uint64_t seed = derive_seed(opts.seed, stream_tag::martingale);
    parallel_for(n, resolve_threads(opts.threads), [&](std::size_t i) {
        RandomStream stream(seed, i);
        const auto states = simulate_snapshots(p, dyn, times, stream, opts.max_events);
        for (std::size_t k = 0; k < m; ++k) {
            const PathState& s = states[k];
            h[k * n + i] =
                std::exp(-th * s.t - a * s.lambda - r * s.x + r * p.u + a * p.lambda0);
        }
    });

    MartingaleCheckReport report;
    report.r = r;
    report.times.assign(times.begin(), times.end());
    report.pass = true;
    for (std::size_t k = 0; k < m; ++k) {
        const Summary s = summarize(std::span<const double>(h).subspan(k * n, n));
        report.means.push_back(s.mean);
        report.stderrs.push_back(s.std_error);
        if (!(std::abs(s.mean - 1.0) <= 4.0 * s.std_error)) report.pass = false;
    }
    return report;
}

std::vector<BoundScanRow> bound_scan(const ModelParams& p, const AdjustmentCoefficient& adj,
                                     std::span<const double> u_grid, std::uint64_t n,
                                     const RunOptions& opts) {
    std::vector<BoundScanRow> rows;
    rows.reserve(u_grid.size());
    for (std::size_t k = 0; k < u_grid.size(); ++k) {
        const ModelParams pu = p.with_capital(u_grid[k]);
        RunOptions o = opts;
        o.seed = derive_seed(opts.seed, stream_tag::scan_point + k);
        const ImportanceEstimate is = is_ruin_probability(pu, adj, n, o);
        BoundScanRow row;
        row.u = u_grid[k];
        row.estimate = is.estimate;
        row.bound = lundberg_bound(pu, adj);
        row.max_weight = is.max_weight;
        row.within_bound = is.estimate.point - 2.0 * is.estimate.std_error <= row.bound;
        rows.push_back(row);
    }
    return rows;
}

VarianceReport variance_report(const ModelParams& p, const AdjustmentCoefficient& adj,
                               std::uint64_t n, double horizon, const RunOptions& opts) {
    VarianceReport out;
    out.u = p.u;
    out.crude = crude_ruin_probability(p, horizon, n, opts);
    out.is = is_ruin_probability(p, adj, n, opts).estimate;

    const double nd = static_cast<double>(n);
    out.crude_variance = out.crude.estimate.std_error * out.crude.estimate.std_error * nd;
    out.is_variance = out.is.std_error * out.is.std_error * nd;
    if (out.is_variance > 0.0) {
        out.variance_ratio = out.crude_variance / out.is_variance;
        out.work_normalized_ratio =
            (out.crude_variance * static_cast<double>(out.crude.estimate.work)) /
            (out.is_variance * static_cast<double>(out.is.work));
    } else {
        out.variance_ratio = out.crude_variance > 0.0 ? kInfinity : 1.0;
        out.work_normalized_ratio = out.variance_ratio;
    }

    for (double factor : {0.8, 1.0, 1.1}) {
        const double r = factor * adj.R;
        if (!admissible(p, r)) continue;
        TiltComparison tc;
        tc.r = r;
        tc.estimate = is_ruin_probability_tilt(p, r, horizon, n, opts);
        tc.variance = tc.estimate.std_error * tc.estimate.std_error * nd;
        out.tilts.push_back(tc);
    }
    return out;
}

} // namespace shotnoise
