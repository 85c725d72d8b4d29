#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pollq/election.hpp"
#include "pollq/planner.hpp"
#include "pollq/stats.hpp"
#include "pollq/sweep.hpp"

namespace pollq::report {

// Output precision: minutes and ratios to 4 places, probabilities to 6.
inline constexpr int kMinutesDigits = 4;
inline constexpr int kFractionDigits = 6;

std::string fixed(double value, int digits);

struct RosterParse {
    std::vector<planner::PrecinctRecord> records;
    std::vector<planner::RecordError> errors;
};

/// Reads `precinct_id,registered[,machines]` rows after a header line.
/// Bad rows become errors tagged with their line number.
RosterParse parse_roster(std::istream& in);

void write_roster_csv(std::ostream& out, const planner::RosterReport& report);

struct ExceedanceRow {
    int servers;
    Statistic statistic;
    ExceedanceTable table;
};

// One row per (servers, statistic), one column per threshold.
void write_exceedance_csv(std::ostream& out, const std::vector<ExceedanceRow>& rows);

struct HistogramRow {
    int servers;
    Statistic statistic;
    Histogram histogram;
};

void write_histogram_csv(std::ostream& out, const std::vector<HistogramRow>& rows);

struct TraceRow {
    int servers;
    std::uint64_t replication;
    Minutes max_wait;
    Minutes close_delay;
    std::vector<TracePoint> trace;
};

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);

void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_overlay_csv(std::ostream& out, const SweepResult& result);

}  // namespace pollq::report
