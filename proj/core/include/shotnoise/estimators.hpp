#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shotnoise/exponent.hpp"
#include "shotnoise/model.hpp"

namespace shotnoise {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct Estimate {
    double point = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    Interval ci95;
    std::uint64_t work = 0;  // total simulated events
};

struct RunOptions {
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0: resolve_threads()
    std::uint64_t max_events = 10'000'000;
};

struct CrudeEstimate {
    Estimate estimate;
    std::uint64_t hits = 0;
    double horizon = 0.0;
    bool exact_interval = false;  // Clopper-Pearson used (hits < 30)
};

/// Fraction of physical-measure paths ruined before `horizon`: a
/// finite-horizon lower bound for psi(u, lambda0).
CrudeEstimate crude_ruin_probability(const ModelParams& p, double horizon, std::uint64_t n,
                                     const RunOptions& opts = {});

struct ImportanceEstimate {
    Estimate estimate;
    double max_weight = 0.0;
    double min_weight = 0.0;
    double weight_ceiling = 0.0;  // exp(-R u - alpha(R) lambda0)
    /// Mean of exp(-alpha(R) lambda0 + R x_tau + alpha(R) lambda_tau), i.e.
    /// the estimate scaled by e^{R u} without forming it from the product.
    Estimate scaled;
    std::vector<double> weights;  // filled only when requested
};

/// Unbiased estimator of psi(u, lambda0) from paths under Q^(R):
/// mean of exp(-R u - alpha(R) lambda0 + R x_tau + alpha(R) lambda_tau).
/// Any path that reaches max_events unruined raises PathNotRuined.
ImportanceEstimate is_ruin_probability(const ModelParams& p, const AdjustmentCoefficient& adj,
                                       std::uint64_t n, const RunOptions& opts = {},
                                       bool keep_weights = false);

/// Finite-horizon importance sampling under a general tilt Q^(r): mean of
/// 1{tau <= T} exp(theta(r) tau - r u - alpha(r) lambda0 + r x_tau + alpha(r) lambda_tau).
Estimate is_ruin_probability_tilt(const ModelParams& p, double r, double horizon,
                                  std::uint64_t n, const RunOptions& opts = {});

struct MartingaleCheckReport {
    double r = 0.0;
    std::vector<double> times;
    std::vector<double> means;
    std::vector<double> stderrs;
    bool pass = false;
};

/// Empirical E[h(X_t, lambda_t, t)] with
/// h = exp(-theta(r) t - alpha(r) lambda_t - r X_t + r u + alpha(r) lambda0)
/// over unstopped physical paths; pass iff every mean is within 4 SE of 1.
/// Throws DomainError when r is not admissible (including E[Y e^{-alpha Y}]).
MartingaleCheckReport martingale_check(const ModelParams& p, double r,
                                       std::span<const double> times, std::uint64_t n,
                                       const RunOptions& opts = {});

struct BoundScanRow {
    double u = 0.0;
    Estimate estimate;
    double bound = 0.0;
    double max_weight = 0.0;
    bool within_bound = false;  // point - 2 stderr <= bound
};

std::vector<BoundScanRow> bound_scan(const ModelParams& p, const AdjustmentCoefficient& adj,
                                     std::span<const double> u_grid, std::uint64_t n,
                                     const RunOptions& opts = {});

struct TiltComparison {
    double r = 0.0;
    Estimate estimate;
    double variance = 0.0;
};

struct VarianceReport {
    double u = 0.0;
    CrudeEstimate crude;
    Estimate is;
    double crude_variance = 0.0;
    double is_variance = 0.0;
    double variance_ratio = 0.0;       // crude / is (infinite when is variance is 0)
    double work_normalized_ratio = 0.0;  // (crude var * crude work) / (is var * is work)
    std::vector<TiltComparison> tilts;   // finite-horizon IS at r in {0.8R, R, 1.1R}
};

VarianceReport variance_report(const ModelParams& p, const AdjustmentCoefficient& adj,
                               std::uint64_t n, double horizon, const RunOptions& opts = {});

/// Normal-approximation interval point +- 1.96 se.
Interval normal_interval(double point, double se);

/// Exact binomial (Clopper-Pearson) 95% interval for k successes in n trials.
Interval clopper_pearson(std::uint64_t k, std::uint64_t n);

} // namespace shotnoise
