#include "shotnoise/model.hpp"

#include <cmath>
#include <sstream>

#include "shotnoise/errors.hpp"

namespace shotnoise {

double ModelParams::expected_loss_rate() const {
    return rho / delta * mean(claim_dist) * mean(shock_dist);
}

ModelParams ModelParams::with_capital(double new_u) const {
    ModelParams copy = *this;
    copy.u = new_u;
    return copy;
}

ModelParams ModelParams::with_lambda0(double new_lambda0) const {
    ModelParams copy = *this;
    copy.lambda0 = new_lambda0;
    return copy;
}

namespace {

void require_positive(const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << name << " must be positive and finite, got " << v;
        throw ValidationError(msg.str());
    }
}

} // namespace

void validate(const ModelParams& p, NetProfitPolicy policy) {
    require_positive("c", p.c);
    require_positive("rho", p.rho);
    // delta -> 0 means the intensity never decays; outside the model.
    require_positive("delta", p.delta);
    require_positive("lambda0", p.lambda0);
    if (!(p.u >= 0.0) || !std::isfinite(p.u)) {
        std::ostringstream msg;
        msg << "u must be non-negative and finite, got " << p.u;
        throw ValidationError(msg.str());
    }
    if (policy == NetProfitPolicy::Enforce && !p.net_profit_holds()) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "net profit condition violated: c = " << p.c
            << " must exceed (rho/delta) E[U] E[Y] = " << p.expected_loss_rate();
        throw NetProfitError(msg.str());
    }
}

ModelParams make_model(double c, double rho, double delta, double lambda0, double u,
                       DistributionSpec claims, DistributionSpec shocks,
                       NetProfitPolicy policy) {
    ModelParams p{c, rho, delta, lambda0, u, claims, shocks};
    validate(p, policy);
    return p;
}

ModelParams canonical_model() {
    return make_model(1.0, 0.5, 1.0, 1.0, 10.0, DistributionSpec::exponential(1.0),
                      DistributionSpec::exponential(1.0));
}

} // namespace shotnoise
