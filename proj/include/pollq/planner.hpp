#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pollq::planner {

inline constexpr double kDefaultTurnout = 0.75;
inline constexpr double kDefaultDayMinutes = 780.0;
inline constexpr double kDefaultVoteMinutes = 5.0;
inline constexpr long kDefaultStatutoryQuota = 200;

// Queue-Stop rule: at most day/(2*vote) actual voters per machine.
double queue_stop_max_voters(double day_minutes, double vote_minutes);

// Registered voters per machine corresponding to `actual_per_machine` at `turnout`.
double registered_per_machine(double actual_per_machine, double turnout);

// Longest mean vote time that keeps a machine within the Queue-Stop rule.
double max_vote_time(double day_minutes, double actual_per_machine);

// One unit per `voters_per_unit` registered voters, plus one for any remainder.
long statutory_allocation(long registered, long voters_per_unit);

// Machines needed so that every machine stays within the Queue-Stop rule.
long queue_stop_allocation(long registered, double turnout, double day_minutes,
                           double vote_minutes);

struct QueueStopSummary {
    double day_minutes;
    double vote_minutes;
    double turnout;
    double actual_per_machine;      // Queue-Stop bound
    double registered_per_machine;  // same bound in registered voters
    // Vote-time bound at the statutory quota's implied load.
    long statutory_quota;
    double statutory_actual_per_machine;
    double statutory_max_vote_time;
};

QueueStopSummary queue_stop_summary(double day_minutes, double vote_minutes, double turnout,
                                    long statutory_quota);

struct PrecinctRecord {
    std::string precinct_id;
    long registered = 0;
    std::optional<long> machines;
    std::size_t line = 0;  // source line, 0 when not read from a file
};

struct PrecinctReport {
    std::string precinct_id;
    long registered = 0;
    std::optional<long> machines;  // as supplied in the roster
    long statutory_machines = 0;
    long queue_stop_machines = 0;
    long shortfall = 0;  // queue_stop - statutory, floored at 0
    // Actual voters per machine times vote time, using the roster's machine
    // count when given and the statutory allocation otherwise.
    double queueing_product = 0.0;
    double queueing_limit = 0.0;  // day / 2
    bool within_queue_stop = true;
};

struct RecordError {
    std::size_t line = 0;
    std::string message;
};

struct RosterTotals {
    long registered = 0;
    long statutory_machines = 0;
    long queue_stop_machines = 0;
    long shortfall = 0;
};

struct RosterReport {
    std::vector<PrecinctReport> rows;
    std::vector<RecordError> errors;
    RosterTotals totals;
};

struct PlanParameters {
    double turnout = kDefaultTurnout;
    double day_minutes = kDefaultDayMinutes;
    double vote_minutes = kDefaultVoteMinutes;
    long statutory_quota = kDefaultStatutoryQuota;

    void validate() const;
};

PrecinctReport plan_precinct(const PrecinctRecord& record, const PlanParameters& params);

RosterReport roster_report(const std::vector<PrecinctRecord>& records,
                           const PlanParameters& params);

}  // namespace pollq::planner
