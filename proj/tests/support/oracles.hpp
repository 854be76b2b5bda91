#pragma once

// Test-only reference computations. Nothing here calls into the library's
// numerical routines, so results can be used as independent oracles.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>

namespace oracle {

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Composite Simpson rule with `intervals` (rounded up to even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      std::size_t intervals) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / static_cast<double>(intervals);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < intervals; ++i) {
        s += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

/// Asymptotic Kolmogorov tail P[K > x] = 2 sum_k (-1)^{k-1} exp(-2 k^2 x^2).
inline double kolmogorov_tail(double x) {
    if (x <= 0.0) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 ? 1.0 : -1.0) * term;
        if (term < 1e-300) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// p-value of a one-sample KS distance with Stephens' finite-n correction.
inline double ks_pvalue(double d, std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    return kolmogorov_tail((sn + 0.12 + 0.11 / sn) * d);
}

/// Critical KS distance at significance `alpha` for sample size n.
inline double ks_critical(double alpha, std::size_t n) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ks_pvalue(mid, n) > alpha ? lo : hi) = mid;
    }
    return hi;
}

/// KS distance between sorted-able samples and a CDF with an atom of mass
/// `atom` at zero and continuous part elsewhere. Samples <= atom_cut count as
/// the atom.
inline double ks_distance_with_atom(std::vector<double> samples,
                                    const std::function<double(double)>& cdf, double atom,
                                    double atom_cut) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    std::size_t k0 = 0;
    while (k0 < samples.size() && samples[k0] <= atom_cut) ++k0;
    double d = std::abs(static_cast<double>(k0) / n - atom);
    for (std::size_t i = k0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    return d;
}

/// Randomized probability integral transform of a Poisson(mean) count:
/// exactly Uniform(0,1) when the count is Poisson(mean).
inline double poisson_pit(unsigned long count, double mean, double v) {
    if (mean <= 0.0) return v;
    boost::math::poisson_distribution<> pois(mean);
    const double below = count == 0 ? 0.0 : boost::math::cdf(pois, static_cast<double>(count) - 1.0);
    const double at = boost::math::pdf(pois, static_cast<double>(count));
    return below + v * at;
}

/// Chi-square goodness-of-fit p-value of values in (0,1) against Uniform
/// using `bins` equal bins.
inline double uniform_chi_square_pvalue(std::span<const double> values, std::size_t bins) {
    std::vector<double> counts(bins, 0.0);
    for (double v : values) {
        const auto b = std::min(bins - 1, static_cast<std::size_t>(v * static_cast<double>(bins)));
        counts[b] += 1.0;
    }
    const double expected = static_cast<double>(values.size()) / static_cast<double>(bins);
    double stat = 0.0;
    for (double c : counts) stat += (c - expected) * (c - expected) / expected;
    boost::math::chi_squared_distribution<> chi(static_cast<double>(bins - 1));
    return boost::math::cdf(boost::math::complement(chi, stat));
}

struct MeanSe {
    double mean;
    double se;
};

inline MeanSe mean_se(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double q = 0.0;
    for (double x : v) q += (x - m) * (x - m);
    const double var = q / static_cast<double>(v.size() - 1);
    return {m, std::sqrt(var / static_cast<double>(v.size()))};
}

/// Admissible exponential/exponential model parameters drawn from a fixed
/// test generator: rho is a fraction of the net-profit limit c delta kappa mu.
struct ExpExpTuple {
    double c, rho, delta, mu, kappa;
};

inline std::vector<ExpExpTuple> random_expexp_tuples(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> c(0.5, 5.0), delta(0.2, 3.0), rate(0.3, 3.0),
        frac(0.05, 0.95);
    std::vector<ExpExpTuple> out;
    for (std::size_t i = 0; i < count; ++i) {
        ExpExpTuple t{};
        t.c = c(gen);
        t.delta = delta(gen);
        t.mu = rate(gen);
        t.kappa = rate(gen);
        t.rho = frac(gen) * t.c * t.delta * t.kappa * t.mu;
        out.push_back(t);
    }
    return out;
}

} // namespace oracle
