#pragma once

#include <limits>
#include <string>

#include "shotnoise/rng.hpp"

namespace shotnoise {

enum class DistributionKind { Exponential };

/// A positive jump law with a moment generating function that is finite on an
/// open interval around zero. Values are immutable once built.
///
/// Only the exponential law ships today; adding a kind means extending the
/// switch in each free function below (mgf, mgf_prime, mean, sample,
/// exp_tilt, domain_sup).
class DistributionSpec {
public:
    static DistributionSpec exponential(double rate);

    DistributionKind kind() const noexcept { return kind_; }
    double rate() const noexcept { return rate_; }

    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;

private:
    DistributionSpec(DistributionKind kind, double rate) : kind_(kind), rate_(rate) {}

    DistributionKind kind_;
    double rate_;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// E[exp(s Z)]. Outside the domain the result is +infinity rather than an
/// error, so callers can probe the boundary.
double mgf(const DistributionSpec& d, double s);

/// d/ds E[exp(s Z)]. Throws DomainError at or beyond the divergence point.
double mgf_prime(const DistributionSpec& d, double s);

double mean(const DistributionSpec& d);

/// Survival function P[Z > z].
double survival(const DistributionSpec& d, double z);

/// Supremum of the MGF domain (+infinity when the MGF is entire).
double domain_sup(const DistributionSpec& d);

/// Law with MGF s -> mgf(d, s + xi) / mgf(d, xi).
DistributionSpec exp_tilt(const DistributionSpec& d, double xi);

double sample(const DistributionSpec& d, RandomStream& stream);

std::string describe(const DistributionSpec& d);

} // namespace shotnoise
