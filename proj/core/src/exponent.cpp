#include "shotnoise/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shotnoise/errors.hpp"

namespace shotnoise {

double alpha(const ModelParams& p, double r) {
    const double mu = mgf(p.claim_dist, r);
    if (!std::isfinite(mu)) {
        std::ostringstream msg;
        msg << "alpha: M_U(" << r << ") diverges";
        throw DomainError(msg.str());
    }
    return (1.0 - mu) / p.delta;
}

double theta(const ModelParams& p, double r) {
    const double mu = mgf(p.claim_dist, r);
    if (!std::isfinite(mu)) return kInfinity;
    const double my = mgf(p.shock_dist, (mu - 1.0) / p.delta);
    if (!std::isfinite(my)) return kInfinity;
    return -p.c * r + p.rho * (my - 1.0);
}

double theta_checked(const ModelParams& p, double r) {
    const double v = theta(p, r);
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "theta: r = " << r << " is outside the MGF domain";
        throw DomainError(msg.str());
    }
    return v;
}

double theta_prime(const ModelParams& p, double r) {
    const double a = alpha(p, r);
    return -p.c + p.rho / p.delta * mgf_prime(p.shock_dist, -a) * mgf_prime(p.claim_dist, r);
}

bool admissible(const ModelParams& p, double r) {
    return std::isfinite(theta(p, r));
}

namespace {

std::string sign_profile(const ModelParams& p, double r_max) {
    std::ostringstream out;
    out.precision(6);
    out << "theta sign profile on (0, " << r_max << "):";
    for (int k = 1; k <= 8; ++k) {
        const double r = r_max * k / 9.0;
        const double v = theta(p, r);
        out << " r=" << r << (std::isfinite(v) ? (v < 0 ? ":-" : ":+") : ":inf");
    }
    return out.str();
}

double certify_slack(const ModelParams& p, double R, double alpha_R) {
    const double claim_gap = domain_sup(p.claim_dist) - R;
    const double shock_gap = domain_sup(p.shock_dist) + alpha_R;
    double eps = std::min(0.1 * R, 0.5 * std::min(claim_gap, shock_gap));
    for (int k = 0; k < 60; ++k) {
        if (std::isfinite(mgf(p.claim_dist, R + eps)) &&
            std::isfinite(mgf(p.shock_dist, eps - alpha_R))) {
            return eps;
        }
        eps *= 0.5;
    }
    throw NoRootError("no epsilon certifies M_U(R + eps) and M_Y(eps - alpha(R)) finite");
}

} // namespace

AdjustmentCoefficient solve_R(const ModelParams& p) {
    if (theta_prime(p, 0.0) >= 0.0) {
        throw NoRootError("theta'(0) >= 0: net profit condition fails, no positive root");
    }

    // Geometric scan for a sign change or the domain exit.
    double r_neg = 0.0;
    double r_pos = 0.0;
    bool bracketed = false;
    double r = 1e-6;
    const double scan_limit = std::min(1e12, domain_sup(p.claim_dist));
    for (int k = 0; k < 200 && !bracketed; ++k) {
        const double v = theta(p, r);
        if (!std::isfinite(v)) break;
        if (v >= 0.0) {
            r_pos = r;
            bracketed = true;
        } else {
            r_neg = r;
            r *= 2.0;
            if (r_neg >= scan_limit) break;
        }
    }

    if (!bracketed) {
        // theta is negative up to some inadmissible point; approach the
        // domain exit and see if theta turns positive before it.
        double inside = r_neg;
        double outside = r;
        while (outside - inside > 1e-15 * std::max(1.0, outside)) {
            const double mid = 0.5 * (inside + outside);
            const double v = theta(p, mid);
            if (!std::isfinite(v)) {
                outside = mid;
            } else if (v >= 0.0) {
                r_pos = mid;
                bracketed = true;
                break;
            } else {
                inside = mid;
                r_neg = mid;
            }
        }
        if (!bracketed) {
            throw NoRootError("theta < 0 on the whole admissible interval; " +
                              sign_profile(p, outside));
        }
    }

    double lo = r_neg;
    double hi = r_pos;
    if (lo == 0.0) {
        // The first scan point was already non-negative: shrink toward 0
        // until theta is negative again.
        lo = hi;
        do {
            lo *= 0.5;
        } while (theta(p, lo) >= 0.0 && lo > 1e-300);
        if (!(theta(p, lo) < 0.0)) throw NoRootError("could not bracket the positive root");
    }

    for (int k = 0; k < 300 && hi - lo > 1e-15 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double v = theta(p, mid);
        if (v < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    double root = 0.5 * (lo + hi);
    const double slope = theta_prime(p, root);
    if (slope > 0.0) {
        const double polished = root - theta(p, root) / slope;
        if (polished >= lo && polished <= hi &&
            std::abs(theta(p, polished)) <= std::abs(theta(p, root))) {
            root = polished;
        }
    }

    AdjustmentCoefficient adj;
    adj.R = root;
    adj.alpha_R = alpha(p, root);
    adj.theta_prime_R = theta_prime(p, root);
    adj.epsilon_slack = certify_slack(p, root, adj.alpha_R);
    return adj;
}

double closed_form_R_expexp(double c, double rho, double delta, double mu, double kappa) {
    if (!(c > 0 && rho > 0 && delta > 0 && mu > 0 && kappa > 0)) {
        throw ValidationError("closed_form_R_expexp: all parameters must be positive");
    }
    if (!(c > rho / (delta * kappa * mu))) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "net profit condition c > rho/(delta kappa mu) fails: c = " << c
            << ", rho/(delta kappa mu) = " << rho / (delta * kappa * mu);
        throw NetProfitError(msg.str());
    }
    return (mu * delta * kappa * c - rho) / ((1.0 + mu * delta) * c);
}

double lundberg_bound(const ModelParams& p, const AdjustmentCoefficient& adj) {
    return std::exp(-adj.alpha_R * p.lambda0 - adj.R * p.u);
}

double mean_intensity(const ModelParams& p, double t) {
    const double decay = std::exp(-p.delta * t);
    return p.lambda0 * decay + p.rho / p.delta * mean(p.shock_dist) * (1.0 - decay);
}

double mean_surplus(const ModelParams& p, double t) {
    const double eu = mean(p.claim_dist);
    const double ey = mean(p.shock_dist);
    // u + c t - E[U] * int_0^t E[lambda_s] ds
    return p.u + p.c * t - eu * p.rho / p.delta * ey * t -
           eu * (p.lambda0 / p.delta - p.rho / (p.delta * p.delta) * ey) *
               (-std::expm1(-p.delta * t));
}

} // namespace shotnoise
