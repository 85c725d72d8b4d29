#include "pollq/planner.hpp"

#include <cmath>
#include <string>

#include "pollq/errors.hpp"

namespace pollq::planner {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be positive");
    }
}

void require_turnout(double turnout) {
    if (!(turnout > 0.0 && turnout <= 1.0)) {
        throw DomainError("turnout must lie in (0, 1]");
    }
}

// ceil(x) that forgives representation error just above an integer.
long ceil_count(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) {
        return static_cast<long>(r);
    }
    return static_cast<long>(std::ceil(x));
}

}  // namespace

double queue_stop_max_voters(double day_minutes, double vote_minutes) {
    require_positive(day_minutes, "day minutes");
    require_positive(vote_minutes, "vote minutes");
    return day_minutes / (2.0 * vote_minutes);
}

double registered_per_machine(double actual_per_machine, double turnout) {
    require_turnout(turnout);
    if (!(actual_per_machine >= 0.0)) {
        throw DomainError("actual voters per machine must be >= 0");
    }
    return actual_per_machine / turnout;
}

double max_vote_time(double day_minutes, double actual_per_machine) {
    require_positive(day_minutes, "day minutes");
    require_positive(actual_per_machine, "actual voters per machine");
    return 0.5 * day_minutes / actual_per_machine;
}

long statutory_allocation(long registered, long voters_per_unit) {
    if (registered < 0) {
        throw DomainError("registered voters must be >= 0");
    }
    if (voters_per_unit < 1) {
        throw DomainError("voters per unit must be >= 1");
    }
    return registered / voters_per_unit + (registered % voters_per_unit != 0 ? 1 : 0);
}

long queue_stop_allocation(long registered, double turnout, double day_minutes,
                           double vote_minutes) {
    if (registered < 0) {
        throw DomainError("registered voters must be >= 0");
    }
    require_turnout(turnout);
    require_positive(day_minutes, "day minutes");
    require_positive(vote_minutes, "vote minutes");
    return ceil_count(static_cast<double>(registered) * turnout * 2.0 * vote_minutes / day_minutes);
}

QueueStopSummary queue_stop_summary(double day_minutes, double vote_minutes, double turnout,
                                    long statutory_quota) {
    QueueStopSummary s{};
    s.day_minutes = day_minutes;
    s.vote_minutes = vote_minutes;
    s.turnout = turnout;
    s.actual_per_machine = queue_stop_max_voters(day_minutes, vote_minutes);
    s.registered_per_machine = registered_per_machine(s.actual_per_machine, turnout);
    if (statutory_quota < 1) {
        throw DomainError("statutory quota must be >= 1");
    }
    s.statutory_quota = statutory_quota;
    s.statutory_actual_per_machine = turnout * static_cast<double>(statutory_quota);
    s.statutory_max_vote_time = max_vote_time(day_minutes, s.statutory_actual_per_machine);
    return s;
}

void PlanParameters::validate() const {
    require_turnout(turnout);
    require_positive(day_minutes, "day minutes");
    require_positive(vote_minutes, "vote minutes");
    if (statutory_quota < 1) {
        throw DomainError("statutory quota must be >= 1");
    }
}

PrecinctReport plan_precinct(const PrecinctRecord& record, const PlanParameters& params) {
    if (record.registered < 0) {
        throw DomainError("precinct " + record.precinct_id + ": registered voters must be >= 0");
    }
    if (record.machines && *record.machines < 1) {
        throw DomainError("precinct " + record.precinct_id + ": machines must be >= 1");
    }
    PrecinctReport r;
    r.precinct_id = record.precinct_id;
    r.registered = record.registered;
    r.machines = record.machines;
    r.statutory_machines = statutory_allocation(record.registered, params.statutory_quota);
    r.queue_stop_machines = queue_stop_allocation(record.registered, params.turnout,
                                                  params.day_minutes, params.vote_minutes);
    r.shortfall = std::max(0L, r.queue_stop_machines - r.statutory_machines);
    r.queueing_limit = params.day_minutes / 2.0;
    const long deployed = record.machines.value_or(r.statutory_machines);
    if (deployed > 0) {
        const double actual = static_cast<double>(record.registered) * params.turnout /
                              static_cast<double>(deployed);
        r.queueing_product = actual * params.vote_minutes;
    }
    r.within_queue_stop = r.queueing_product <= r.queueing_limit;
    return r;
}

RosterReport roster_report(const std::vector<PrecinctRecord>& records,
                           const PlanParameters& params) {
    params.validate();
    RosterReport report;
    for (std::size_t i = 0; i < records.size(); ++i) {
        try {
            auto row = plan_precinct(records[i], params);
            report.totals.registered += row.registered;
            report.totals.statutory_machines += row.statutory_machines;
            report.totals.queue_stop_machines += row.queue_stop_machines;
            report.totals.shortfall += row.shortfall;
            report.rows.push_back(std::move(row));
        } catch (const DomainError& e) {
            report.errors.push_back({records[i].line != 0 ? records[i].line : i + 1, e.what()});
        }
    }
    return report;
}

}  // namespace pollq::planner
