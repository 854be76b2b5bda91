#pragma once

#include <string>

#include "shotnoise/model.hpp"

namespace shotnoise {

/// alpha(r) = (1 - M_U(r)) / delta. Throws DomainError if M_U(r) diverges.
double alpha(const ModelParams& p, double r);

/// theta(r) = -c r + rho (M_Y(-alpha(r)) - 1).
/// Returns +infinity when either MGF diverges (no throw) so bracketing code
/// can probe the domain; use theta_checked() for the throwing variant.
double theta(const ModelParams& p, double r);
double theta_checked(const ModelParams& p, double r);

/// theta'(r) = -c + (rho / delta) M_Y'(-alpha(r)) M_U'(r).
double theta_prime(const ModelParams& p, double r);

/// True when both M_U(r) and M_Y(-alpha(r)) are finite.
bool admissible(const ModelParams& p, double r);

struct AdjustmentCoefficient {
    double R = 0.0;
    double alpha_R = 0.0;
    double theta_prime_R = 0.0;
    double epsilon_slack = 0.0;
};

/// Positive root of theta. Brackets by a geometric scan from the origin
/// (refining toward the MGF-domain exit if needed), bisects, then applies one
/// Newton step from theta'. Throws NoRootError when theta stays negative up
/// to the domain exit, with the sign profile in the message.
AdjustmentCoefficient solve_R(const ModelParams& p);

/// Closed-form root for exponential claims (rate kappa) and exponential shocks
/// (rate mu): (mu delta kappa c - rho) / ((1 + mu delta) c).
double closed_form_R_expexp(double c, double rho, double delta, double mu, double kappa);

/// exp(-alpha(R) lambda0 - R u).
double lundberg_bound(const ModelParams& p, const AdjustmentCoefficient& adj);

double mean_intensity(const ModelParams& p, double t);
double mean_surplus(const ModelParams& p, double t);

} // namespace shotnoise
