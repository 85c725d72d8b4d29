#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pollq/errors.hpp"
#include "pollq/stats.hpp"
#include "pollq/sweep.hpp"

using namespace pollq;

namespace {

SweepSpec base_spec(int servers) {
    SweepSpec spec;
    spec.fixed.servers = servers;
    spec.fixed.expected_voters = 150.0 * servers;
    spec.fixed.seed = 33;
    spec.replications_per_point = 1000;
    return spec;
}

}  // namespace

TEST_CASE("single-point sweep equals a direct replicate") {
    auto spec = base_spec(3);
    spec.axis1 = {SweepParameter::vote_minutes, {5.0}};
    const auto result = sweep_1d(spec);
    REQUIRE(result.points.size() == 1);

    const auto direct = replicate(apply_axis(spec.fixed, SweepParameter::vote_minutes, 5.0), 1000);
    const auto table = exceedance(direct, Statistic::max_wait, spec.statistic.thresholds);
    CHECK(result.points[0].values == table.fractions);
    CHECK(result.labels.size() == spec.statistic.thresholds.size());
}

TEST_CASE("2-D points match direct runs exactly") {
    auto spec = base_spec(2);
    spec.axis1 = {SweepParameter::vote_minutes, {4.0, 5.0}};
    spec.axis2 = SweepAxis{SweepParameter::voters_per_server, {100.0, 150.0}};
    const auto result = sweep_2d(spec);
    REQUIRE(result.points.size() == 4);
    CHECK(result.points[1].x1 == 4.0);
    CHECK(result.points[1].x2 == 150.0);

    auto config = apply_axis(spec.fixed, SweepParameter::vote_minutes, 5.0);
    config = apply_axis(config, SweepParameter::voters_per_server, 100.0);
    const auto direct = exceedance(replicate(config, 1000), Statistic::max_wait,
                                   spec.statistic.thresholds);
    CHECK(result.points[2].values == direct.fractions);

    REQUIRE(result.queue_stop_curve.size() == 2);
    CHECK(result.queue_stop_curve[1].vote_minutes == 5.0);
    CHECK(result.queue_stop_curve[1].voters_per_server == 78.0);
}

TEST_CASE("quantile statistic") {
    auto spec = base_spec(2);
    spec.axis1 = {SweepParameter::voters_per_server, {100.0, 150.0}};
    spec.statistic.kind = SweepStatistic::Kind::quantile;
    spec.statistic.q = 0.9;
    const auto result = sweep_1d(spec);
    REQUIRE(result.labels == std::vector<std::string>{"q0.9_max_wait"});
    CHECK(result.points[0].values[0] < result.points[1].values[0]);
    CHECK(result.points[0].std_errors[0] >= 0.0);
    // Overlay from a voters axis inverts the rule.
    CHECK(result.queue_stop_curve[1].vote_minutes == doctest::Approx(2.6));
}

TEST_CASE("invalid grids and budgets") {
    auto spec = base_spec(2);
    spec.axis1 = {SweepParameter::vote_minutes, {}};
    CHECK_THROWS_AS(sweep_1d(spec), DomainError);
    spec.axis1.values = {5.0, 4.0};
    CHECK_THROWS_AS(sweep_1d(spec), DomainError);
    spec.axis1.values = {0.0, 4.0};
    CHECK_THROWS_AS(sweep_1d(spec), DomainError);
    spec.axis1.values = {4.0, 5.0};
    spec.axis2 = SweepAxis{SweepParameter::vote_minutes, {1.0}};
    CHECK_THROWS_AS(sweep_2d(spec), DomainError);
    CHECK_THROWS_AS(sweep_1d(spec), DomainError);
    spec.axis2 = SweepAxis{SweepParameter::voters_per_server, {100.0, 150.0}};
    spec.max_replications = 3999;
    CHECK_THROWS_AS(sweep_2d(spec), BudgetError);
    spec.max_replications = 4000;
    spec.replications_per_point = 1;
    CHECK_NOTHROW(sweep_2d(spec));
    spec.axis2.reset();
    CHECK_THROWS_AS(sweep_2d(spec), DomainError);
}

TEST_CASE("exceedance rises along the voters axis") {
    auto spec = base_spec(2);
    spec.axis1 = {SweepParameter::vote_minutes, {5.0}};
    spec.axis2 = SweepAxis{SweepParameter::voters_per_server, {100.0, 120.0, 140.0, 160.0, 180.0}};
    spec.replications_per_point = 10000;
    const auto result = sweep_2d(spec);
    for (std::size_t k = 0; k < result.labels.size(); ++k) {
        for (std::size_t i = 1; i < result.points.size(); ++i) {
            REQUIRE(result.points[i].values[k] >= result.points[i - 1].values[k]);
        }
    }
}

TEST_CASE("standard errors shrink with the square root of replications") {
    auto spec = base_spec(2);
    spec.axis1 = {SweepParameter::vote_minutes, {5.0}};
    spec.statistic.thresholds = {60.0};
    spec.replications_per_point = 1000;
    const double small = sweep_1d(spec).points[0].std_errors[0];
    spec.replications_per_point = 100000;
    const double large = sweep_1d(spec).points[0].std_errors[0];
    CHECK(small / large == doctest::Approx(10.0).epsilon(0.15));
}

TEST_CASE("queue-stop region sits below the 15-minute contour") {
    auto spec = base_spec(10);
    spec.axis1 = {SweepParameter::vote_minutes, {3.0, 4.0, 5.0, 6.0}};
    spec.axis2 = SweepAxis{SweepParameter::voters_per_server, {50.0, 78.0, 100.0, 130.0, 150.0}};
    spec.statistic.thresholds = {15.0};
    spec.replications_per_point = 1000;
    const auto result = sweep_2d(spec);
    const double day = spec.fixed.profile.day_length();

    double worst_inside = 0.0;
    double best_above = 1.0;
    int above = 0;
    for (const auto& p : result.points) {
        const double p15 = p.values[0];
        if (p.x1 * *p.x2 <= day / 2.0) {
            worst_inside = std::max(worst_inside, p15);
        } else if (p15 > 0.5) {  // typical day waits over 15 minutes
            best_above = std::min(best_above, p15);
            ++above;
        }
    }
    REQUIRE(above > 0);
    CHECK(worst_inside < best_above);
}
