#include "pollq/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pollq/errors.hpp"
#include "pollq/planner.hpp"
#include "pollq/stats.hpp"

namespace pollq {

std::string_view to_string(SweepParameter p) {
    return p == SweepParameter::vote_minutes ? "vote_minutes" : "voters_per_server";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
    if (name == "vote_minutes") return SweepParameter::vote_minutes;
    if (name == "voters_per_server") return SweepParameter::voters_per_server;
    throw DomainError("unknown sweep axis '" + std::string(name) +
                      "' (expected vote_minutes or voters_per_server)");
}

std::vector<std::string> SweepStatistic::labels() const {
    std::vector<std::string> out;
    char buf[64];
    if (kind == Kind::quantile) {
        std::snprintf(buf, sizeof buf, "q%g_max_wait", q);
        out.emplace_back(buf);
        return out;
    }
    for (const Minutes w : thresholds) {
        std::snprintf(buf, sizeof buf, "p_max_wait_gt_%g", w);
        out.emplace_back(buf);
    }
    return out;
}

ScenarioConfig apply_axis(const ScenarioConfig& base, SweepParameter parameter, double value) {
    ScenarioConfig c = base;
    if (parameter == SweepParameter::vote_minutes) {
        c.service = ServiceModel(base.service.kind(), value, base.service.dispersion());
    } else {
        c.expected_voters = value * base.servers;
    }
    return c;
}

namespace {

void validate_axis(const SweepAxis& axis, const char* name) {
    if (axis.values.empty()) {
        throw DomainError(std::string("sweep: ") + name + " grid is empty");
    }
    for (std::size_t i = 0; i < axis.values.size(); ++i) {
        const double v = axis.values[i];
        if (!std::isfinite(v) || v < 0.0 ||
            (axis.parameter == SweepParameter::vote_minutes && v <= 0.0)) {
            throw DomainError(std::string("sweep: ") + name + " value out of range");
        }
        if (i > 0 && !(v > axis.values[i - 1])) {
            throw DomainError(std::string("sweep: ") + name + " grid must be strictly ascending");
        }
    }
}

void validate_spec(const SweepSpec& spec) {
    validate_axis(spec.axis1, "axis1");
    if (spec.axis2) {
        validate_axis(*spec.axis2, "axis2");
        if (spec.axis2->parameter == spec.axis1.parameter) {
            throw DomainError("sweep: both axes vary the same parameter");
        }
    }
    if (spec.replications_per_point == 0) {
        throw DomainError("sweep: replications per point must be >= 1");
    }
    const auto& st = spec.statistic;
    if (st.kind == SweepStatistic::Kind::exceedance) {
        if (st.thresholds.empty() || !std::is_sorted(st.thresholds.begin(), st.thresholds.end())) {
            throw DomainError("sweep: thresholds must be nonempty and ascending");
        }
    } else if (!(st.q >= 0.0 && st.q <= 1.0)) {
        throw DomainError("sweep: quantile must lie in [0, 1]");
    }
    spec.fixed.validate();

    const std::size_t points =
        spec.axis1.values.size() * (spec.axis2 ? spec.axis2->values.size() : 1);
    if (points > spec.max_replications / spec.replications_per_point) {
        throw BudgetError("sweep: " + std::to_string(points) + " points x " +
                          std::to_string(spec.replications_per_point) +
                          " replications exceeds the budget of " +
                          std::to_string(spec.max_replications));
    }
}

// Order-statistic standard error: half the spread between the quantiles
// one binomial standard deviation either side of q.
double quantile_std_error(const std::vector<Minutes>& values, double q) {
    const double d = std::sqrt(q * (1.0 - q) / static_cast<double>(values.size()));
    const double lo = quantile(values, std::max(0.0, q - d));
    const double hi = quantile(values, std::min(1.0, q + d));
    return std::max(0.0, (hi - lo) / 2.0);
}

SweepPoint evaluate(const SweepSpec& spec, double x1, std::optional<double> x2) {
    ScenarioConfig config = apply_axis(spec.fixed, spec.axis1.parameter, x1);
    if (x2) {
        config = apply_axis(config, spec.axis2->parameter, *x2);
    }
    const auto summary = replicate(config, spec.replications_per_point, spec.threads);
    SweepPoint point{x1, x2, {}, {}};
    const auto& st = spec.statistic;
    if (st.kind == SweepStatistic::Kind::exceedance) {
        const auto table = exceedance(summary.max_waits, st.thresholds);
        point.values = table.fractions;
        for (const double p : table.fractions) {
            point.std_errors.push_back(binomial_std_error(p, summary.replications));
        }
    } else {
        point.values.push_back(quantile(summary.max_waits, st.q));
        point.std_errors.push_back(quantile_std_error(summary.max_waits, st.q));
    }
    return point;
}

std::vector<QueueStopPoint> queue_stop_curve(const SweepSpec& spec) {
    const double day = spec.fixed.profile.day_length();
    std::vector<QueueStopPoint> curve;
    for (const double v : spec.axis1.values) {
        if (spec.axis1.parameter == SweepParameter::vote_minutes) {
            curve.push_back({v, planner::queue_stop_max_voters(day, v)});
        } else if (v > 0.0) {
            curve.push_back({planner::max_vote_time(day, v), v});
        }
    }
    return curve;
}

SweepResult run(const SweepSpec& spec) {
    validate_spec(spec);
    SweepResult result;
    result.axis1 = spec.axis1.parameter;
    if (spec.axis2) {
        result.axis2 = spec.axis2->parameter;
    }
    result.labels = spec.statistic.labels();
    result.replications_per_point = spec.replications_per_point;
    result.queue_stop_curve = queue_stop_curve(spec);
    for (const double x1 : spec.axis1.values) {
        if (!spec.axis2) {
            result.points.push_back(evaluate(spec, x1, std::nullopt));
            continue;
        }
        for (const double x2 : spec.axis2->values) {
            result.points.push_back(evaluate(spec, x1, x2));
        }
    }
    return result;
}

}  // namespace

SweepResult sweep_1d(const SweepSpec& spec) {
    if (spec.axis2) {
        throw DomainError("sweep_1d: spec has a second axis");
    }
    return run(spec);
}

SweepResult sweep_2d(const SweepSpec& spec) {
    if (!spec.axis2) {
        throw DomainError("sweep_2d: spec needs a second axis");
    }
    return run(spec);
}

}  // namespace pollq
