#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pollq/profile.hpp"
#include "pollq/rng.hpp"
#include "pollq/service.hpp"

namespace pollq {

/// One precinct and station type.
struct ScenarioConfig {
    int servers = 1;
    double expected_voters = 0.0;  // per day, across all servers
    ArrivalProfile profile = maryland_profile();
    ServiceModel service = ServiceModel::deterministic(5.0);
    std::uint64_t seed = 0;

    double voters_per_server() const { return expected_voters / servers; }
    void validate() const;
};

struct ElectionOutcome {
    std::vector<Minutes> arrival_times;
    std::vector<Minutes> wait_minutes;
    std::vector<Minutes> service_start;
    std::vector<Minutes> departure;
    Minutes max_wait = 0.0;
    Minutes close_delay = 0.0;
    std::size_t voter_count = 0;
};

// Piecewise-homogeneous Poisson arrivals, sorted, all in [0, day_length).
std::vector<Minutes> sample_arrivals(const ArrivalProfile& profile, double expected_voters,
                                     Engine& engine);

std::vector<Minutes> draw_service_times(const ServiceModel& service, std::size_t count,
                                        Engine& engine);

/// FIFO multi-server queue with given per-voter service durations.
///
/// Voter k starts at max(arrival_k, earliest free server); ties between
/// free servers go to the lowest index. Everyone who arrived before close is
/// served, so close_delay = max(0, last departure - day_length).
ElectionOutcome simulate_election(std::span<const Minutes> arrivals,
                                  std::span<const Minutes> service_times, int servers,
                                  Minutes day_length);

// Draws one service time per voter from `service`, then runs the queue.
ElectionOutcome simulate_election(std::span<const Minutes> arrivals, int servers,
                                  const ServiceModel& service, Minutes day_length,
                                  Engine& engine);

// Full replication: arrivals then service, all from one engine.
ElectionOutcome run_replication(const ScenarioConfig& config, std::uint64_t index);

struct ReplicationStats {
    Minutes max_wait = 0.0;
    Minutes close_delay = 0.0;
    std::size_t voter_count = 0;
};

// Same draws as run_replication, without keeping per-voter vectors.
ReplicationStats run_replication_stats(const ScenarioConfig& config, std::uint64_t index);

/// Per-minute view of one election for trace output.
struct TracePoint {
    int minute;
    std::size_t queue_length;  // arrived, not yet in service
    Minutes wait;              // wait of the latest voter to arrive by this minute
};

std::vector<TracePoint> minute_trace(const ElectionOutcome& outcome, Minutes day_length);

}  // namespace pollq
