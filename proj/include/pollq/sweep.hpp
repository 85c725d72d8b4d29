#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pollq/election.hpp"
#include "pollq/parallel.hpp"

namespace pollq {

enum class SweepParameter { vote_minutes, voters_per_server };

std::string_view to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(std::string_view name);

struct SweepAxis {
    SweepParameter parameter = SweepParameter::vote_minutes;
    std::vector<double> values;  // strictly ascending
};

struct SweepStatistic {
    enum class Kind { exceedance, quantile };
    Kind kind = Kind::exceedance;
    std::vector<Minutes> thresholds = {15.0, 30.0, 60.0, 120.0};  // P(max_wait > W)
    double q = 0.5;                                               // quantile of max_wait

    std::vector<std::string> labels() const;
};

struct SweepSpec {
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    ScenarioConfig fixed;  // axis parameters override the matching fields
    std::size_t replications_per_point = 10000;
    SweepStatistic statistic;
    // Upper bound on grid points x replications_per_point.
    std::size_t max_replications = 200'000'000;
    unsigned threads = default_thread_count();
};

struct SweepPoint {
    double x1 = 0.0;
    std::optional<double> x2;
    std::vector<double> values;
    std::vector<double> std_errors;
};

struct QueueStopPoint {
    double vote_minutes;
    double voters_per_server;
};

struct SweepResult {
    SweepParameter axis1 = SweepParameter::vote_minutes;
    std::optional<SweepParameter> axis2;
    std::vector<std::string> labels;
    std::vector<SweepPoint> points;  // axis2 varies fastest
    std::vector<QueueStopPoint> queue_stop_curve;
    std::size_t replications_per_point = 0;
};

// Scenario for one grid point. Every point keeps the fixed seed, so all
// points share random numbers and match a direct replicate() call.
ScenarioConfig apply_axis(const ScenarioConfig& base, SweepParameter parameter, double value);

/// Both sweeps also return the Queue-Stop curve voters = day / (2 * vote_minutes)
/// sampled at each axis1 value, and throw BudgetError when the grid would
/// exceed spec.max_replications.
SweepResult sweep_1d(const SweepSpec& spec);

// Cartesian grid over both axes, axis2 varying fastest.
SweepResult sweep_2d(const SweepSpec& spec);

}  // namespace pollq
