#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pollq/election.hpp"
#include "pollq/parallel.hpp"

namespace pollq {

struct ReplicationSummary {
    std::vector<Minutes> max_waits;
    std::vector<Minutes> close_delays;
    std::size_t replications = 0;
    ScenarioConfig config;
};

/// Runs n replications of `config`. Replication i uses the engine seeded
/// from (config.seed, i), and results land in slot i, so the summary does
/// not depend on the thread count.
ReplicationSummary replicate(const ScenarioConfig& config, std::size_t n,
                             unsigned threads = default_thread_count());

enum class Statistic { max_wait, close_delay };

std::string_view to_string(Statistic s);
Statistic parse_statistic(std::string_view name);
const std::vector<Minutes>& values_of(const ReplicationSummary& summary, Statistic s);

struct ExceedanceTable {
    std::vector<Minutes> thresholds;
    std::vector<double> fractions;  // share of replications with statistic strictly above
};

ExceedanceTable exceedance(const ReplicationSummary& summary, Statistic statistic,
                           std::span<const Minutes> thresholds);
ExceedanceTable exceedance(std::span<const Minutes> values, std::span<const Minutes> thresholds);

// 15, 30, ..., 120 minutes.
std::vector<Minutes> default_thresholds();

// Standard error of a binomial proportion estimate.
double binomial_std_error(double p, std::size_t n);

/// Bins are right-closed, (i*w, (i+1)*w], with zero falling in the first
/// bin. This keeps a value equal to a multiple of the bin width in the bin
/// it closes.
struct Histogram {
    std::vector<Minutes> bin_edges;
    std::vector<std::size_t> counts;
    std::vector<double> normalized_peak;
};

Histogram histogram(std::span<const Minutes> values, Minutes bin_width);

// Linear-interpolation sample quantile (Hyndman-Fan type 7).
double quantile(std::span<const Minutes> values, double q);

// Indices of the k largest values, largest first; ties keep lower index first.
std::vector<std::size_t> worst_indices(std::span<const Minutes> values, std::size_t k);

/// Inputs for the per-device capacity search.
struct ThresholdQuery {
    Minutes cycle_time = 1.0;
    Minutes wait_limit = 30.0;
    double prob_limit = 0.01;
    ArrivalProfile profile = maryland_profile();
    int servers = 1;
    std::size_t replications = 10000;  // per probe
    ServiceKind service_kind = ServiceKind::deterministic;
    double dispersion = 0.0;
    std::uint64_t seed = 20081104;
    long max_voters_per_server = 50000;
    std::size_t confirm_factor = 10;
    unsigned threads = default_thread_count();
};

struct ThresholdProbe {
    long voters_per_server;
    double exceed_probability;
};

struct ThresholdResult {
    long voters_per_server = 0;
    bool unreachable = false;  // limit violated even at one voter per device
    bool hit_cap = false;      // still feasible at max_voters_per_server
    double probe_probability = 0.0;
    double confirm_probability = 0.0;
    std::size_t confirm_replications = 0;
    std::vector<ThresholdProbe> probes;
    std::string diagnostic;
};

/// Largest integer expected-voters-per-device V with
/// P(max_wait > wait_limit) <= prob_limit.
///
/// Assumes the exceedance probability is nondecreasing in V. Every probe
/// reuses the same base seed, so probes share random numbers and the
/// estimated curve is far smoother than independent runs would give. The
/// search doubles V until the limit breaks, bisects the bracket, then
/// re-estimates the answer with confirm_factor times the probe budget.
ThresholdResult capacity_threshold(const ThresholdQuery& query);

}  // namespace pollq
