#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shotnoise/config.hpp"
#include "shotnoise/dynamics.hpp"
#include "shotnoise/errors.hpp"
#include "shotnoise/estimators.hpp"
#include "shotnoise/exponent.hpp"
#include "shotnoise/parallel.hpp"
#include "shotnoise/renewal.hpp"
#include "shotnoise/stats.hpp"

namespace shotnoise::cli {

using nlohmann::json;

namespace {

struct ModelOptions {
    std::string config_path;
    bool canonical = false;
    bool allow_unsafe = false;
    std::optional<double> u;
    std::optional<double> lambda0;
};

struct RunFlags {
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out_path;
    std::uint64_t max_events = 10'000'000;
};

void add_model_options(CLI::App* cmd, ModelOptions& m, bool with_overrides) {
    cmd->add_option("--config", m.config_path, "model config (JSON)");
    cmd->add_flag("--canonical", m.canonical,
                  "built-in model: mu = kappa = delta = 1, rho = 0.5, c = 1, lambda0 = 1, u = 10");
    cmd->add_flag("--allow-unsafe", m.allow_unsafe,
                  "accept configs that violate the net profit condition");
    if (with_overrides) {
        cmd->add_option("--u", m.u, "initial capital (overrides the config)");
        cmd->add_option("--lambda0", m.lambda0, "initial intensity (overrides the config)");
    }
}

void add_run_flags(CLI::App* cmd, RunFlags& f, bool with_out) {
    cmd->add_option("--seed", f.seed, "base seed");
    cmd->add_option("--threads", f.threads, "worker threads (default: SHOTNOISE_THREADS or all cores)");
    cmd->add_option("--max-events", f.max_events, "per-path event cap");
    if (with_out) cmd->add_option("--out", f.out_path, "output file (default: stdout)");
}

ModelParams load_model(const ModelOptions& m) {
    const NetProfitPolicy policy =
        m.allow_unsafe ? NetProfitPolicy::AllowViolation : NetProfitPolicy::Enforce;
    if (m.canonical == !m.config_path.empty()) {
        throw ConfigError("exactly one of --config or --canonical is required");
    }
    ModelParams p = m.canonical ? canonical_model() : load_model_config(m.config_path, policy);
    if (m.u) p.u = *m.u;
    if (m.lambda0) p.lambda0 = *m.lambda0;
    validate(p, policy);
    return p;
}

RunOptions run_options(const RunFlags& f) {
    return RunOptions{f.seed, resolve_threads(f.threads), f.max_events};
}

/// Writes to --out when given, otherwise to the command's stdout stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::string r17(double v) { return format_real(v); }

json interval_json(const Interval& i) { return json::array({i.lo, i.hi}); }

json estimate_json(const Estimate& e, const char* method, double bound) {
    return json{{"method", method},
                {"point", e.point},
                {"stderr", e.std_error},
                {"ci95", interval_json(e.ci95)},
                {"n", e.n},
                {"bound", bound}};
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            grid.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("bad grid entry '" + item + "'");
        }
    }
    if (grid.empty()) throw ConfigError("empty grid");
    return grid;
}

// --- subcommands ---------------------------------------------------------

int cmd_solve(const ModelOptions& m, const RunFlags& f, std::ostream& out) {
    const ModelParams p = load_model(m);
    const AdjustmentCoefficient adj = solve_R(p);
    Sink sink(f.out_path, out);
    sink.get() << json{{"R", adj.R},
                       {"alpha_R", adj.alpha_R},
                       {"theta_prime_R", adj.theta_prime_R},
                       {"epsilon_slack", adj.epsilon_slack},
                       {"u", p.u},
                       {"lambda0", p.lambda0},
                       {"bound", lundberg_bound(p, adj)}}
                      .dump()
               << '\n';
    return kOk;
}

int cmd_bound(const ModelOptions& m, const RunFlags& f, std::ostream& out) {
    const ModelParams p = load_model(m);
    const AdjustmentCoefficient adj = solve_R(p);
    Sink sink(f.out_path, out);
    sink.get() << json{{"u", p.u},
                       {"lambda0", p.lambda0},
                       {"R", adj.R},
                       {"alpha_R", adj.alpha_R},
                       {"bound", lundberg_bound(p, adj)}}
                      .dump()
               << '\n';
    return kOk;
}

struct SimulateOptions {
    std::uint64_t paths = 1000;
    std::string measure = "p";
    std::optional<double> horizon;
};

int cmd_simulate(const ModelOptions& m, const RunFlags& f, const SimulateOptions& s,
                 std::ostream& out) {
    const ModelParams p = load_model(m);
    SimConfig cfg;
    cfg.horizon = s.horizon;
    cfg.seed = f.seed;
    cfg.max_events = f.max_events;
    if (s.measure == "q") {
        cfg.measure = Tilted{solve_R(p).R};
    } else if (s.measure == "p") {
        if (!s.horizon) throw HorizonRequired("--measure p requires --horizon");
        cfg.measure = Physical{};
    } else {
        throw ConfigError("--measure must be p or q");
    }

    std::vector<PathResult> results(s.paths);
    parallel_for(s.paths, resolve_threads(f.threads), [&](std::size_t i) {
        RandomStream stream(f.seed, i);
        results[i] = simulate_path(p, cfg, stream);
    });

    Sink sink(f.out_path, out);
    std::ostream& o = sink.get();
    o << "replicate,ruined,tau,x_tau,lambda_tau,n_claims,n_shocks\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const PathResult& r = results[i];
        o << i << ',' << (r.ruined ? 1 : 0) << ',';
        if (r.ruined) {
            o << r17(*r.tau) << ',' << r17(r.x_tau) << ',' << r17(r.lambda_tau);
        } else {
            o << ",,";
        }
        o << ',' << r.final_state.n_claims << ',' << r.final_state.n_shocks << '\n';
    }
    return kOk;
}

struct EstimateOptions {
    std::string method = "is";
    std::uint64_t paths = 100'000;
    std::optional<double> horizon;
};

int cmd_estimate(const ModelOptions& m, const RunFlags& f, const EstimateOptions& e,
                 std::ostream& out, std::ostream& err) {
    const ModelParams p = load_model(m);
    if (e.method != "crude" && e.method != "is" && e.method != "both") {
        throw ConfigError("--method must be crude, is or both");
    }
    const AdjustmentCoefficient adj = solve_R(p);
    const double bound = lundberg_bound(p, adj);
    const RunOptions opts = run_options(f);

    json results = json::array();
    if (e.method == "crude" || e.method == "both") {
        if (!e.horizon) throw HorizonRequired("crude estimation requires --horizon");
        const CrudeEstimate c = crude_ruin_probability(p, *e.horizon, e.paths, opts);
        json j = estimate_json(c.estimate, "crude", bound);
        j["horizon"] = c.horizon;
        j["hits"] = c.hits;
        j["finite_horizon_lower_bound"] = true;
        j["exact_interval"] = c.exact_interval;
        results.push_back(j);
    }
    if (e.method == "is" || e.method == "both") {
        const ImportanceEstimate is = is_ruin_probability(p, adj, e.paths, opts);
        json j = estimate_json(is.estimate, "is", bound);
        j["max_weight"] = is.max_weight;
        results.push_back(j);
        if (is.max_weight > bound) err << "warning: importance weight above the Lundberg bound\n";
    }

    Sink sink(f.out_path, out);
    sink.get() << (results.size() == 1 ? results.front() : results).dump() << '\n';
    return kOk;
}

struct ScanOptions {
    std::string u_grid = "5,10,20,40,80";
    std::uint64_t paths_per_point = 100'000;
    double band = 0.15;
};

int cmd_scan(const ModelOptions& m, const RunFlags& f, const ScanOptions& s, std::ostream& out,
             std::ostream& err) {
    const ModelParams p = load_model(m);
    const AdjustmentCoefficient adj = solve_R(p);
    const std::vector<double> grid = parse_grid(s.u_grid);
    const AsymptoticScan scan =
        asymptotic_scan(p, adj, grid, s.paths_per_point, run_options(f), s.band);

    Sink sink(f.out_path, out);
    std::ostream& o = sink.get();
    o << "u,psi_hat,stderr,psi_eru,stderr_eru,bound\n";
    for (const auto& row : scan.rows) {
        o << r17(row.u) << ',' << r17(row.psi_hat) << ',' << r17(row.std_error) << ','
          << r17(row.psi_eru) << ',' << r17(row.std_error_eru) << ',' << r17(row.bound) << '\n';
    }
    err << "stabilized (last three points, band " << s.band * 100 << "%): "
        << (scan.stabilized ? "yes" : "no") << '\n';
    return kOk;
}

struct ValidateOptions {
    std::uint64_t paths = 10'000;
};

int cmd_validate(const ModelOptions& m, const RunFlags& f, const ValidateOptions& v,
                 std::ostream& out) {
    const ModelParams p = load_model(m);
    const AdjustmentCoefficient adj = solve_R(p);
    const RunOptions opts = run_options(f);

    struct Row {
        std::string check;
        std::string detail;
        bool pass;
    };
    std::vector<Row> rows;

    const double tol = 1e-12;
    rows.push_back({"theta(R) = 0", "theta(R) = " + r17(theta(p, adj.R)),
                    std::abs(theta(p, adj.R)) <= tol});
    rows.push_back({"alpha(R) < 0", "alpha(R) = " + r17(adj.alpha_R), adj.alpha_R < 0.0});
    rows.push_back({"theta'(R) > 0", "theta'(R) = " + r17(adj.theta_prime_R),
                    adj.theta_prime_R > 0.0});

    const std::vector<double> times{1.0, 5.0, 10.0};
    for (double r : {0.0, 0.5 * adj.R, adj.R}) {
        const MartingaleCheckReport rep = martingale_check(p, r, times, v.paths, opts);
        for (std::size_t k = 0; k < times.size(); ++k) {
            std::ostringstream d;
            d << "r=" << r << " t=" << times[k] << " mean=" << rep.means[k]
              << " se=" << rep.stderrs[k];
            rows.push_back({"martingale mean 1", d.str(),
                            std::abs(rep.means[k] - 1.0) <= 4.0 * rep.stderrs[k]});
        }
    }

    // Fixed-time path laws against the closed-form means.
    const std::vector<double> mean_times{1.0, 5.0, 20.0};
    std::vector<double> lam(v.paths * mean_times.size());
    std::vector<double> xs(v.paths * mean_times.size());
    const Dynamics dyn = physical_dynamics(p);
    const std::uint64_t seed = derive_seed(f.seed, 0xFA11);
    parallel_for(v.paths, opts.threads, [&](std::size_t i) {
        RandomStream stream(seed, i);
        const auto states = simulate_snapshots(p, dyn, mean_times, stream, f.max_events);
        for (std::size_t k = 0; k < mean_times.size(); ++k) {
            lam[k * v.paths + i] = states[k].lambda;
            xs[k * v.paths + i] = states[k].x;
        }
    });
    for (std::size_t k = 0; k < mean_times.size(); ++k) {
        const auto sl = summarize(std::span<const double>(lam).subspan(k * v.paths, v.paths));
        const auto sx = summarize(std::span<const double>(xs).subspan(k * v.paths, v.paths));
        const double el = mean_intensity(p, mean_times[k]);
        const double ex = mean_surplus(p, mean_times[k]);
        std::ostringstream dl, dx;
        dl << "t=" << mean_times[k] << " mean=" << sl.mean << " exact=" << el;
        dx << "t=" << mean_times[k] << " mean=" << sx.mean << " exact=" << ex;
        rows.push_back({"E[lambda_t]", dl.str(), std::abs(sl.mean - el) <= 4.0 * sl.std_error});
        rows.push_back({"E[X_t]", dx.str(), std::abs(sx.mean - ex) <= 4.0 * sx.std_error});
    }

    const std::vector<double> u_grid{0.0, 5.0, 10.0, 20.0, 40.0};
    for (const auto& row : bound_scan(p, adj, u_grid, v.paths, opts)) {
        std::ostringstream d;
        d << "u=" << row.u << " psi=" << row.estimate.point << " bound=" << row.bound
          << " max_weight=" << row.max_weight;
        rows.push_back({"Lundberg bound", d.str(),
                        row.within_bound && row.max_weight <= row.bound * (1.0 + 1e-12)});
    }

    Sink sink(f.out_path, out);
    std::ostream& o = sink.get();
    bool all = true;
    for (const auto& row : rows) {
        o << std::left << std::setw(6) << (row.pass ? "PASS" : "FAIL") << std::setw(20)
          << row.check << row.detail << '\n';
        all = all && row.pass;
    }
    o << (all ? "all checks passed" : "some checks FAILED") << '\n';
    return all ? kOk : kValidation;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ruin probabilities for a risk model with shot-noise claim intensity"};
    app.require_subcommand(1);

    ModelOptions model;
    RunFlags flags;

    auto* solve = app.add_subcommand("solve", "adjustment coefficient and Lundberg bound (JSON)");
    add_model_options(solve, model, true);
    add_run_flags(solve, flags, true);

    auto* bound = app.add_subcommand("bound", "Lundberg bound at (u, lambda0) (JSON)");
    add_model_options(bound, model, true);
    add_run_flags(bound, flags, true);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "per-replicate path outcomes (CSV)");
    add_model_options(simulate, model, true);
    add_run_flags(simulate, flags, true);
    simulate->add_option("--paths", sim.paths, "number of replicates");
    simulate->add_option("--measure", sim.measure, "p (physical) or q (tilted at R)")
        ->check(CLI::IsMember({"p", "q"}));
    simulate->add_option("--horizon", sim.horizon, "time horizon (required for p)");

    EstimateOptions est;
    auto* estimate = app.add_subcommand("estimate", "ruin probability estimate (JSON)");
    add_model_options(estimate, model, true);
    add_run_flags(estimate, flags, true);
    estimate->add_option("--method", est.method, "crude, is or both")
        ->check(CLI::IsMember({"crude", "is", "both"}));
    estimate->add_option("--paths", est.paths, "replicates per method");
    estimate->add_option("--horizon", est.horizon, "horizon for crude Monte Carlo");

    ScanOptions sc;
    auto* scan = app.add_subcommand("scan", "psi(u) e^{Ru} over a capital grid (CSV)");
    add_model_options(scan, model, true);
    add_run_flags(scan, flags, true);
    scan->add_option("--u-grid", sc.u_grid, "comma-separated capitals");
    scan->add_option("--paths-per-point", sc.paths_per_point, "replicates per grid point");
    scan->add_option("--band", sc.band, "relative stabilization band");

    ValidateOptions val;
    auto* validate_cmd = app.add_subcommand("validate", "run the invariant suite and print a table");
    add_model_options(validate_cmd, model, true);
    add_run_flags(validate_cmd, flags, true);
    validate_cmd->add_option("--paths", val.paths, "replicates per check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (solve->parsed()) return cmd_solve(model, flags, out);
        if (bound->parsed()) return cmd_bound(model, flags, out);
        if (simulate->parsed()) return cmd_simulate(model, flags, sim, out);
        if (estimate->parsed()) return cmd_estimate(model, flags, est, out, err);
        if (scan->parsed()) return cmd_scan(model, flags, sc, out, err);
        if (validate_cmd->parsed()) return cmd_validate(model, flags, val, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const SimulationError& e) {
        err << "runtime error: " << e.what() << '\n';
        return kRuntime;
    } catch (const std::exception& e) {
        err << "runtime error: " << e.what() << '\n';
        return kRuntime;
    }
    return kValidation;
}

} // namespace shotnoise::cli
