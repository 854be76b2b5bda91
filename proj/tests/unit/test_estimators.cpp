#include <doctest.h>

#include <cmath>
#include <vector>

#include "shotnoise/errors.hpp"
#include "shotnoise/estimators.hpp"
#include "shotnoise/stats.hpp"

using namespace shotnoise;

namespace {

RunOptions opts(std::uint64_t seed, unsigned threads = 1) {
    RunOptions o;
    o.seed = seed;
    o.threads = threads;
    return o;
}

} // namespace

TEST_CASE("binomial intervals") {
    const Interval zero = clopper_pearson(0, 10);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi == doctest::Approx(1.0 - std::pow(0.025, 0.1)).epsilon(1e-12));
    const Interval all = clopper_pearson(10, 10);
    CHECK(all.hi == 1.0);
    CHECK(all.lo == doctest::Approx(std::pow(0.025, 0.1)).epsilon(1e-12));
    const Interval mid = clopper_pearson(5, 100);
    CHECK(mid.lo < 0.05);
    CHECK(mid.hi > 0.05);
    CHECK_THROWS_AS(clopper_pearson(3, 2), ValidationError);

    const Interval normal = normal_interval(0.5, 0.1);
    CHECK(normal.lo == doctest::Approx(0.304));
    CHECK(normal.hi == doctest::Approx(0.696));
}

TEST_CASE("summaries") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const Summary s = summarize(v);
    CHECK(s.mean == 2.5);
    CHECK(s.variance == doctest::Approx(5.0 / 3.0));
    CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 12.0)));
    CHECK(s.min == 1.0);
    CHECK(s.max == 4.0);

    Accumulator a, b, whole;
    for (int i = 0; i < 10; ++i) {
        (i < 4 ? a : b).add(i * 0.1);
        whole.add(i * 0.1);
    }
    a.merge(b);
    CHECK(a.count() == whole.count());
    CHECK(a.mean() == doctest::Approx(whole.mean()).epsilon(1e-15));
    CHECK(a.variance() == doctest::Approx(whole.variance()).epsilon(1e-12));
}

TEST_CASE("crude estimator cannot see a far-away rare event") {
    const ModelParams p = canonical_model().with_capital(200.0);
    const CrudeEstimate c = crude_ruin_probability(p, 50.0, 10000, opts(3));
    CHECK(c.estimate.point == 0.0);
    CHECK(c.hits == 0);
    CHECK(c.exact_interval);
    CHECK(c.estimate.ci95.lo <= 0.0);
    CHECK(c.estimate.ci95.hi > 0.0);
    CHECK_THROWS_AS(crude_ruin_probability(p, kInfinity, 10, opts(3)), HorizonRequired);
}

TEST_CASE("crude estimate settles as the horizon grows") {
    const ModelParams p = canonical_model().with_capital(0.0);
    const CrudeEstimate short_h = crude_ruin_probability(p, 200.0, 20000, opts(17));
    const CrudeEstimate long_h = crude_ruin_probability(p, 400.0, 20000, opts(17));
    CHECK(long_h.estimate.point >= short_h.estimate.point);
    CHECK(long_h.estimate.point - short_h.estimate.point < 2.0 * long_h.estimate.std_error);
}

TEST_CASE("importance sampling weights respect the Lundberg bound") {
    const ModelParams p = canonical_model().with_capital(5.0);
    const AdjustmentCoefficient adj = solve_R(p);
    const double bound = lundberg_bound(p, adj);
    const ImportanceEstimate is = is_ruin_probability(p, adj, 10000, opts(21), true);
    REQUIRE(is.weights.size() == 10000);
    for (double w : is.weights) {
        REQUIRE(w > 0.0);
        REQUIRE(w <= bound);
    }
    CHECK(is.max_weight <= bound);
    CHECK(is.weight_ceiling == doctest::Approx(bound));
    CHECK(is.estimate.point > 0.0);
    CHECK(is.estimate.point < bound);
    CHECK(is.scaled.point == doctest::Approx(is.estimate.point * std::exp(adj.R * p.u)).epsilon(1e-10));
}

TEST_CASE("importance sampling and crude Monte Carlo agree") {
    const ModelParams p = canonical_model().with_capital(5.0);
    const AdjustmentCoefficient adj = solve_R(p);
    const Estimate is = is_ruin_probability(p, adj, 20000, opts(1)).estimate;
    const Estimate crude = crude_ruin_probability(p, 400.0, 20000, opts(1)).estimate;
    CHECK(std::abs(is.point - crude.point) <=
          2.0 * std::sqrt(is.std_error * is.std_error + crude.std_error * crude.std_error));
}

TEST_CASE("importance sampling near the probability ceiling") {
    const ModelParams p = canonical_model().with_capital(0.0).with_lambda0(1e-9);
    const AdjustmentCoefficient adj = solve_R(p);
    const Estimate is = is_ruin_probability(p, adj, 5000, opts(2)).estimate;
    CHECK(is.point <= 1.0);
    CHECK(std::isfinite(is.std_error));
}

TEST_CASE("an unruined importance-sampling path invalidates the run") {
    const ModelParams p = canonical_model().with_capital(40.0);
    const AdjustmentCoefficient adj = solve_R(p);
    RunOptions o = opts(1);
    o.max_events = 5;
    CHECK_THROWS_AS(is_ruin_probability(p, adj, 100, o), PathNotRuined);
}

TEST_CASE("general-tilt estimator agrees with the R-tilt estimator") {
    const ModelParams p = canonical_model().with_capital(5.0);
    const AdjustmentCoefficient adj = solve_R(p);
    const Estimate at_r = is_ruin_probability(p, adj, 20000, opts(4)).estimate;
    const Estimate finite = is_ruin_probability_tilt(p, 1.1 * adj.R, 400.0, 20000, opts(4));
    CHECK(std::abs(at_r.point - finite.point) <=
          3.0 * std::sqrt(at_r.std_error * at_r.std_error + finite.std_error * finite.std_error));
}

TEST_CASE("martingale check") {
    const ModelParams p = canonical_model();
    const std::vector<double> times{1.0, 5.0};

    SUBCASE("zero tilt is exactly one") {
        const auto rep = martingale_check(p, 0.0, times, 1000, opts(1));
        for (std::size_t k = 0; k < times.size(); ++k) {
            CHECK(rep.means[k] == 1.0);
            CHECK(rep.stderrs[k] == 0.0);
        }
        CHECK(rep.pass);
    }

    SUBCASE("interior tilt") {
        const std::vector<double> t5{5.0};
        const auto rep = martingale_check(p, 0.1, t5, 20000, opts(12));
        CHECK(std::abs(rep.means[0] - 1.0) <= 4.0 * rep.stderrs[0]);
        CHECK(rep.pass);
    }

    SUBCASE("inadmissible tilt") {
        CHECK_THROWS_AS(martingale_check(p, 0.6, times, 10, opts(1)), DomainError);
        CHECK_THROWS_AS(martingale_check(p, 1.0, times, 10, opts(1)), DomainError);
    }
}

TEST_CASE("bound scan") {
    const ModelParams p = canonical_model();
    const AdjustmentCoefficient adj = solve_R(p);
    const std::vector<double> grid{0.0, 5.0, 10.0, 20.0, 40.0};
    const auto rows = bound_scan(p, adj, grid, 5000, opts(8));
    REQUIRE(rows.size() == grid.size());
    CHECK(rows[0].bound >= 1.0);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(rows[k].estimate.point <= rows[k].bound);
        CHECK(rows[k].max_weight <= rows[k].bound);
        CHECK(rows[k].within_bound);
        if (k > 0) {
            CHECK(rows[k].estimate.point <= rows[k - 1].estimate.point +
                                                2.0 * (rows[k].estimate.std_error +
                                                       rows[k - 1].estimate.std_error));
        }
    }
}

TEST_CASE("variance report") {
    const ModelParams p = canonical_model();
    const AdjustmentCoefficient adj = solve_R(p);

    SUBCASE("no rare event at u = 0") {
        const VarianceReport rep = variance_report(p.with_capital(0.0), adj, 5000, 200.0, opts(3));
        CHECK(rep.variance_ratio > 0.1);
        CHECK(rep.variance_ratio < 10.0);
        CHECK(rep.crude.hits > 0);
        CHECK(rep.tilts.size() == 3);
    }

    SUBCASE("large capital favours importance sampling") {
        const VarianceReport rep = variance_report(p.with_capital(20.0), adj, 5000, 200.0, opts(3));
        CHECK(rep.is.std_error < rep.crude.estimate.std_error);
        CHECK(rep.crude.hits < 50);
        CHECK(rep.is.work > 0);
    }
}

TEST_CASE("estimates do not depend on the worker count") {
    const ModelParams p = canonical_model().with_capital(5.0);
    const AdjustmentCoefficient adj = solve_R(p);
    const Estimate one = is_ruin_probability(p, adj, 3000, opts(9, 1)).estimate;
    const Estimate four = is_ruin_probability(p, adj, 3000, opts(9, 4)).estimate;
    CHECK(one.point == four.point);
    CHECK(one.std_error == four.std_error);
    const CrudeEstimate c1 = crude_ruin_probability(p, 100.0, 3000, opts(9, 1));
    const CrudeEstimate c3 = crude_ruin_probability(p, 100.0, 3000, opts(9, 3));
    CHECK(c1.hits == c3.hits);
    CHECK(c1.estimate.work == c3.estimate.work);
}
