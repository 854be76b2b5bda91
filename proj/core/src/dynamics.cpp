#include "shotnoise/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "shotnoise/errors.hpp"
#include "shotnoise/exponent.hpp"

namespace shotnoise {

Dynamics physical_dynamics(const ModelParams& p) {
    return Dynamics{p.c, p.delta, p.rho, p.shock_dist, 1.0, p.claim_dist};
}

Dynamics tilted_params(const ModelParams& p, double r, double adj_alpha) {
    const double claim_mgf = mgf(p.claim_dist, r);
    const double shock_mgf = mgf(p.shock_dist, -adj_alpha);
    if (!std::isfinite(claim_mgf) || !std::isfinite(shock_mgf)) {
        std::ostringstream msg;
        msg << "tilted_params: r = " << r << " is not admissible (M_U(r) = " << claim_mgf
            << ", M_Y(-alpha) = " << shock_mgf << ")";
        throw DomainError(msg.str());
    }
    return Dynamics{p.c,
                    p.delta,
                    p.rho * shock_mgf,
                    exp_tilt(p.shock_dist, -adj_alpha),
                    claim_mgf,
                    exp_tilt(p.claim_dist, r)};
}

Dynamics tilted_params(const ModelParams& p, double r) {
    return tilted_params(p, r, alpha(p, r));
}

double integrated_compensator(double lambda0, double shock_sum, double lambda_t, double delta) {
    return (lambda0 + shock_sum - lambda_t) / delta;
}

std::optional<double> next_claim_candidate(double lambda_s, double delta, double m, double E) {
    const double budget = m * lambda_s;
    if (!(delta * E < budget)) return std::nullopt;
    return -std::log1p(-delta * E / budget) / delta;
}

PathState initial_state(const ModelParams& p) {
    PathState s;
    s.x = p.u;
    s.lambda = p.lambda0;
    return s;
}

namespace {

void flow(PathState& s, const Dynamics& dyn, double w) {
    const double decayed_fraction = -std::expm1(-dyn.delta * w);
    s.intensity_integral += s.lambda * decayed_fraction / dyn.delta;
    s.lambda -= s.lambda * decayed_fraction;
    s.x += dyn.c * w;
    s.t += w;
}

[[noreturn]] void throw_max_events(const PathState& s, std::uint64_t max_events) {
    std::ostringstream msg;
    msg << "max_events = " << max_events << " reached at t = " << s.t << " (x = " << s.x
        << ", lambda = " << s.lambda << ")";
    throw MaxEventsExceeded(msg.str());
}

bool is_adjustment_coefficient(const ModelParams& p, double r) {
    if (!(r > 0.0)) return false;
    const double v = theta(p, r);
    return std::isfinite(v) && std::abs(v) <= 1e-9 && theta_prime(p, r) > 0.0;
}

} // namespace

PathState advance(PathState s, const Dynamics& dyn, double until, bool stop_on_ruin,
                  std::uint64_t max_events, RandomStream& stream, std::vector<Event>* log) {
    double shock_gap = dyn.shock_rate > 0.0 ? stream.unit_exponential() / dyn.shock_rate : kInfinity;
    while (s.t < until) {
        if (s.events() >= max_events) throw_max_events(s, max_events);
        const double remaining = until - s.t;
        // Fresh threshold on every pass: the residual of a unit exponential
        // beyond consumed hazard is again unit exponential.
        const auto claim_gap =
            next_claim_candidate(s.lambda, dyn.delta, dyn.claim_multiplier, stream.unit_exponential());

        if (claim_gap && *claim_gap < shock_gap && *claim_gap <= remaining) {
            flow(s, dyn, *claim_gap);
            shock_gap -= *claim_gap;
            const double size = sample(dyn.claim_dist, stream);
            s.x -= size;
            ++s.n_claims;
            if (log) log->push_back({s.t, EventKind::Claim, size});
            if (stop_on_ruin && s.x < 0.0) return s;
        } else if (shock_gap <= remaining) {
            flow(s, dyn, shock_gap);
            const double size = sample(dyn.shock_dist, stream);
            s.lambda += size;
            s.shock_sum += size;
            ++s.n_shocks;
            if (log) log->push_back({s.t, EventKind::Shock, size});
            shock_gap = stream.unit_exponential() / dyn.shock_rate;
        } else {
            if (!std::isfinite(remaining)) {
                throw SimulationError("path has no further events and no horizon");
            }
            flow(s, dyn, remaining);
            s.t = until;
        }
    }
    return s;
}

PathResult simulate_path(const ModelParams& p, const SimConfig& cfg, RandomStream& stream) {
    Dynamics dyn;
    double until = kInfinity;
    if (std::holds_alternative<Physical>(cfg.measure)) {
        if (!cfg.horizon) throw HorizonRequired("physical-measure simulation requires a horizon");
        dyn = physical_dynamics(p);
    } else {
        const double r = std::get<Tilted>(cfg.measure).r;
        if (!cfg.horizon && !is_adjustment_coefficient(p, r)) {
            std::ostringstream msg;
            msg << "tilt r = " << r
                << " is not the adjustment coefficient; ruin is not almost sure, a horizon is required";
            throw HorizonRequired(msg.str());
        }
        dyn = tilted_params(p, r);
    }
    if (cfg.horizon) {
        if (!(*cfg.horizon >= 0.0)) throw ValidationError("horizon must be non-negative");
        until = *cfg.horizon;
    }

    PathResult result;
    std::vector<Event>* log = cfg.record_events ? &result.event_log : nullptr;
    result.final_state = advance(initial_state(p), dyn, until, true, cfg.max_events, stream, log);
    const PathState& s = result.final_state;
    if (s.x < 0.0) {
        result.ruined = true;
        result.tau = s.t;
        result.x_tau = s.x;
        result.lambda_tau = s.lambda;
    }
    return result;
}

std::vector<PathState> simulate_snapshots(const ModelParams& p, const Dynamics& dyn,
                                          std::span<const double> times, RandomStream& stream,
                                          std::uint64_t max_events) {
    std::vector<PathState> out;
    out.reserve(times.size());
    PathState s = initial_state(p);
    for (double t : times) {
        if (t < s.t) throw ValidationError("snapshot times must be ascending");
        s = advance(s, dyn, t, false, max_events, stream);
        out.push_back(s);
    }
    return out;
}

} // namespace shotnoise
