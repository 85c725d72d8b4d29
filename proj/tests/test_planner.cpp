#include <doctest.h>

#include <random>

#include "pollq/errors.hpp"
#include "pollq/planner.hpp"

using namespace pollq;
using namespace pollq::planner;

TEST_CASE("queue-stop voters per machine") {
    CHECK(queue_stop_max_voters(780, 5) == 78.0);
    CHECK(queue_stop_max_voters(780, 780) == 0.5);
    CHECK(queue_stop_max_voters(780, 2.6) == doctest::Approx(150.0).epsilon(1e-12));
    CHECK_THROWS_AS(queue_stop_max_voters(0, 5), DomainError);
    CHECK_THROWS_AS(queue_stop_max_voters(780, -1), DomainError);
}

TEST_CASE("turnout conversion") {
    CHECK(registered_per_machine(78, 0.75) == 104.0);
    CHECK(registered_per_machine(100, 1.0) == 100.0);
    CHECK(registered_per_machine(462, 0.75) == 616.0);
    CHECK_THROWS_AS(registered_per_machine(78, 0.0), DomainError);
    CHECK_THROWS_AS(registered_per_machine(78, 1.01), DomainError);
}

TEST_CASE("maximum vote time") {
    CHECK(max_vote_time(780, 150) == doctest::Approx(2.6).epsilon(1e-12));
    CHECK(max_vote_time(780, 78) == 5.0);
    CHECK(max_vote_time(60, 1) == 30.0);
    CHECK_THROWS_AS(max_vote_time(780, 0), DomainError);
}

TEST_CASE("statutory allocation rounds up") {
    CHECK(statutory_allocation(1740, 200) == 9);
    CHECK(statutory_allocation(200, 200) == 1);
    CHECK(statutory_allocation(201, 200) == 2);
    CHECK(statutory_allocation(0, 200) == 0);
    CHECK(statutory_allocation(1, 200) == 1);
    CHECK_THROWS_AS(statutory_allocation(-1, 200), DomainError);
    CHECK_THROWS_AS(statutory_allocation(10, 0), DomainError);
    for (long n = 1; n <= 200; ++n) {
        for (const long q : {1L, 7L, 200L, 462L}) {
            REQUIRE(statutory_allocation(n * q, q) == n);
            REQUIRE(statutory_allocation(n * q + 1, q) == n + 1);
        }
    }
}

TEST_CASE("queue-stop allocation") {
    CHECK(queue_stop_allocation(200, 0.75, 780, 5) == 2);
    CHECK(statutory_allocation(200, 200) == 1);
    CHECK(queue_stop_allocation(104, 0.75, 780, 5) == 1);
    CHECK(queue_stop_allocation(105, 0.75, 780, 5) == 2);
    CHECK(queue_stop_allocation(0, 0.75, 780, 5) == 0);
    CHECK(queue_stop_allocation(1740, 0.75, 780, 5) == 17);
}

TEST_CASE("closed-form properties") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> day(60.0, 1440.0);
    std::uniform_real_distribution<double> vote(0.05, 30.0);
    std::uniform_real_distribution<double> turnout(0.05, 1.0);
    std::uniform_int_distribution<long> reg(0, 8000);
    for (int i = 0; i < 500; ++i) {
        const double d = day(gen);
        const double t = vote(gen);
        REQUIRE(max_vote_time(d, queue_stop_max_voters(d, t)) == doctest::Approx(t).epsilon(1e-12));

        const long r = reg(gen);
        const double to = turnout(gen);
        const long base = queue_stop_allocation(r, to, d, t);
        REQUIRE(queue_stop_allocation(r + 1, to, d, t) >= base);
        REQUIRE(queue_stop_allocation(r, std::min(1.0, to + 0.05), d, t) >= base);
        REQUIRE(queue_stop_allocation(r, to, d, t * 1.1) >= base);
        REQUIRE(queue_stop_allocation(r, to, d * 1.1, t) <= base);
    }
}

TEST_CASE("queue-stop dominates the statutory rule at five minutes or more") {
    for (const double vote : {5.0, 5.5, 7.0, 10.0}) {
        for (long r = 1; r <= 7000; ++r) {
            REQUIRE(queue_stop_allocation(r, 0.75, 780, vote) >= statutory_allocation(r, 200));
        }
    }
}

TEST_CASE("summary of the running example") {
    const auto s = queue_stop_summary(780, 5, 0.75, 200);
    CHECK(s.actual_per_machine == 78.0);
    CHECK(s.registered_per_machine == 104.0);
    CHECK(s.statutory_actual_per_machine == 150.0);
    CHECK(s.statutory_max_vote_time == doctest::Approx(2.6).epsilon(1e-12));
}

TEST_CASE("roster report") {
    const PlanParameters params;
    const auto one = roster_report({{"P001", 1740, std::nullopt, 0}}, params);
    REQUIRE(one.rows.size() == 1);
    CHECK(one.rows[0].statutory_machines == 9);
    CHECK(one.rows[0].queue_stop_machines == 17);
    CHECK(one.rows[0].shortfall == 8);
    CHECK(one.rows[0].queueing_limit == 390.0);
    CHECK(one.rows[0].queueing_product == doctest::Approx(1740 * 0.75 / 9 * 5));
    CHECK_FALSE(one.rows[0].within_queue_stop);

    const auto empty = roster_report({{"P002", 0, std::nullopt, 0}}, params);
    CHECK(empty.rows[0].statutory_machines == 0);
    CHECK(empty.rows[0].queue_stop_machines == 0);
    CHECK(empty.rows[0].shortfall == 0);

    const auto two = roster_report({{"A", 1740, std::nullopt, 0}, {"B", 450, 5, 0}}, params);
    CHECK(two.totals.registered == 2190);
    CHECK(two.totals.statutory_machines == two.rows[0].statutory_machines + two.rows[1].statutory_machines);
    CHECK(two.totals.queue_stop_machines == two.rows[0].queue_stop_machines + two.rows[1].queue_stop_machines);
    CHECK(two.totals.shortfall == two.rows[0].shortfall + two.rows[1].shortfall);
    // Supplied machine count drives the queueing product.
    CHECK(two.rows[1].queueing_product == doctest::Approx(450 * 0.75 / 5 * 5));
}

TEST_CASE("roster report keeps going past bad records") {
    const PlanParameters params;
    const auto rep = roster_report({{"bad", -5, std::nullopt, 4}, {"ok", 10, std::nullopt, 5}}, params);
    REQUIRE(rep.errors.size() == 1);
    CHECK(rep.errors[0].line == 4);
    CHECK(rep.rows.size() == 1);

    PlanParameters broken;
    broken.turnout = 0.0;
    CHECK_THROWS_AS(roster_report({}, broken), DomainError);
}
