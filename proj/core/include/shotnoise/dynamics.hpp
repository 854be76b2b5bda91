#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "shotnoise/model.hpp"
#include "shotnoise/rng.hpp"

namespace shotnoise {

/// Jump-rate description of the PDMP (X, lambda, t) under a given measure.
/// Between events X grows at rate c and lambda decays at rate delta; shocks
/// arrive at rate shock_rate, claims at rate claim_multiplier * lambda_t.
struct Dynamics {
    double c = 0.0;
    double delta = 0.0;
    double shock_rate = 0.0;
    DistributionSpec shock_dist = DistributionSpec::exponential(1.0);
    double claim_multiplier = 1.0;
    DistributionSpec claim_dist = DistributionSpec::exponential(1.0);
};

Dynamics physical_dynamics(const ModelParams& p);

/// Dynamics under the exponentially tilted measure Q^(r): shock rate
/// rho M_Y(-alpha), shocks tilted by -alpha, claim rate multiplied by M_U(r),
/// claims tilted by r. Drift is unchanged.
Dynamics tilted_params(const ModelParams& p, double r, double adj_alpha);
Dynamics tilted_params(const ModelParams& p, double r);

/// Lambda_t = (lambda0 + sum of shocks - lambda_t) / delta, the integral of
/// the intensity over [0, t].
double integrated_compensator(double lambda0, double shock_sum, double lambda_t, double delta);

/// Time until the next claim when the remaining hazard on the current
/// inter-shock interval is m lambda_s (1 - e^{-delta w}) / delta and the
/// threshold is the unit-exponential draw E. Empty when the interval cannot
/// accumulate E even with no further shock.
std::optional<double> next_claim_candidate(double lambda_s, double delta, double m, double E);

struct PathState {
    double t = 0.0;
    double x = 0.0;
    double lambda = 0.0;
    double shock_sum = 0.0;
    double intensity_integral = 0.0;  // integral of lambda over [0, t], summed per interval
    std::uint64_t n_claims = 0;
    std::uint64_t n_shocks = 0;

    std::uint64_t events() const noexcept { return n_claims + n_shocks; }
};

PathState initial_state(const ModelParams& p);

struct Physical {};
struct Tilted {
    double r = 0.0;
};
using Measure = std::variant<Physical, Tilted>;

struct SimConfig {
    Measure measure = Physical{};
    std::optional<double> horizon;
    std::uint64_t seed = 0;
    bool record_events = false;
    std::uint64_t max_events = 10'000'000;
};

enum class EventKind { Claim, Shock };

struct Event {
    double time;
    EventKind kind;
    double size;
};

struct PathResult {
    bool ruined = false;
    std::optional<double> tau;
    double x_tau = 0.0;
    double lambda_tau = 0.0;
    PathState final_state;
    std::vector<Event> event_log;
};

/// Exact event-driven simulation until ruin (x < 0), the horizon, or
/// max_events. Under Tilted(r) the rates come from tilted_params; horizon may
/// be omitted only when r is the adjustment coefficient, where ruin is
/// almost sure. Throws HorizonRequired / MaxEventsExceeded.
PathResult simulate_path(const ModelParams& p, const SimConfig& cfg, RandomStream& stream);

/// Lower-level entry point with explicit dynamics. Stops at the first of
/// ruin (when stop_on_ruin), `until`, or max_events (throws).
PathState advance(PathState state, const Dynamics& dyn, double until, bool stop_on_ruin,
                  std::uint64_t max_events, RandomStream& stream,
                  std::vector<Event>* log = nullptr);

/// States of one unstopped trajectory at each time in `times` (ascending).
/// Ruin does not end the path; used for fixed-time path-law checks.
std::vector<PathState> simulate_snapshots(const ModelParams& p, const Dynamics& dyn,
                                          std::span<const double> times, RandomStream& stream,
                                          std::uint64_t max_events = 10'000'000);

} // namespace shotnoise
