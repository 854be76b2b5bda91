#include "shotnoise/distribution.hpp"

#include <cmath>
#include <sstream>

#include "shotnoise/errors.hpp"

namespace shotnoise {

DistributionSpec DistributionSpec::exponential(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        std::ostringstream msg;
        msg << "exponential rate must be positive and finite, got " << rate;
        throw ValidationError(msg.str());
    }
    return {DistributionKind::Exponential, rate};
}

double mgf(const DistributionSpec& d, double s) {
    switch (d.kind()) {
    case DistributionKind::Exponential:
        if (s == 0.0) return 1.0;
        if (s >= d.rate()) return kInfinity;
        return d.rate() / (d.rate() - s);
    }
    return kInfinity;
}

double mgf_prime(const DistributionSpec& d, double s) {
    switch (d.kind()) {
    case DistributionKind::Exponential: {
        if (s >= d.rate()) {
            std::ostringstream msg;
            msg << "mgf_prime: s = " << s << " outside the MGF domain (s < " << d.rate() << ")";
            throw DomainError(msg.str());
        }
        const double gap = d.rate() - s;
        return d.rate() / (gap * gap);
    }
    }
    throw DomainError("mgf_prime: unknown distribution kind");
}

double mean(const DistributionSpec& d) {
    switch (d.kind()) {
    case DistributionKind::Exponential:
        return 1.0 / d.rate();
    }
    return 0.0;
}

double survival(const DistributionSpec& d, double z) {
    if (z <= 0.0) return 1.0;
    switch (d.kind()) {
    case DistributionKind::Exponential:
        return std::exp(-d.rate() * z);
    }
    return 0.0;
}

double domain_sup(const DistributionSpec& d) {
    switch (d.kind()) {
    case DistributionKind::Exponential:
        return d.rate();
    }
    return 0.0;
}

DistributionSpec exp_tilt(const DistributionSpec& d, double xi) {
    if (!std::isfinite(mgf(d, xi))) {
        std::ostringstream msg;
        msg << "exp_tilt: MGF diverges at xi = " << xi << " for " << describe(d);
        throw DomainError(msg.str());
    }
    switch (d.kind()) {
    case DistributionKind::Exponential:
        return DistributionSpec::exponential(d.rate() - xi);
    }
    throw DomainError("exp_tilt: unknown distribution kind");
}

double sample(const DistributionSpec& d, RandomStream& stream) {
    switch (d.kind()) {
    case DistributionKind::Exponential:
        return stream.unit_exponential() / d.rate();
    }
    return 0.0;
}

std::string describe(const DistributionSpec& d) {
    std::ostringstream out;
    switch (d.kind()) {
    case DistributionKind::Exponential:
        out << "Exponential(rate=" << d.rate() << ")";
        break;
    }
    return out.str();
}

} // namespace shotnoise
