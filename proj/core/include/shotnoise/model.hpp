#pragma once

#include "shotnoise/distribution.hpp"

namespace shotnoise {

/// Parameters of the shot-noise risk model.
///
///   intensity:  lambda_t = lambda0 e^{-delta t} + sum_i Y_i e^{-delta (t - T_i)},
///               shocks Y_i ~ shock_dist at Poisson(rho) times T_i
///   surplus:    X_t = u + c t - sum_{i <= N_t} U_i,  U_i ~ claim_dist,
///               N a Cox process driven by lambda
struct ModelParams {
    double c = 1.0;        // premium rate
    double rho = 0.5;      // shock arrival rate
    double delta = 1.0;    // intensity decay rate
    double lambda0 = 1.0;  // initial intensity
    double u = 10.0;       // initial capital
    DistributionSpec claim_dist = DistributionSpec::exponential(1.0);
    DistributionSpec shock_dist = DistributionSpec::exponential(1.0);

    /// Long-run claim outflow rate (rho / delta) E[U] E[Y].
    double expected_loss_rate() const;

    bool net_profit_holds() const { return c > expected_loss_rate(); }

    ModelParams with_capital(double new_u) const;
    ModelParams with_lambda0(double new_lambda0) const;
};

enum class NetProfitPolicy { Enforce, AllowViolation };

/// Checks positivity of every rate, u >= 0, and (unless waived) the net
/// profit condition. Throws ValidationError / NetProfitError.
void validate(const ModelParams& p, NetProfitPolicy policy = NetProfitPolicy::Enforce);

/// Validated constructor; the canonical test model is the default argument set.
ModelParams make_model(double c, double rho, double delta, double lambda0, double u,
                       DistributionSpec claims, DistributionSpec shocks,
                       NetProfitPolicy policy = NetProfitPolicy::Enforce);

/// mu = kappa = delta = 1, rho = 0.5, c = 1, lambda0 = 1, u = 10.
ModelParams canonical_model();

} // namespace shotnoise
