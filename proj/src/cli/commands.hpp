#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pollq/election.hpp"
#include "pollq/planner.hpp"

namespace pollq::cli {

using nlohmann::json;
namespace fs = std::filesystem;

inline constexpr std::uint64_t kDefaultSeed = 20081104;

/// Scenario fields as entered by the user; `resolve()` materializes defaults.
struct ScenarioOptions {
    std::vector<int> servers = {10};
    std::optional<double> voters_per_server;
    std::optional<double> expected_voters;
    double day_minutes = 780.0;
    std::string profile = "maryland";
    std::vector<double> hourly_fractions;  // overrides `profile` when nonempty
    std::string service = "deterministic";
    std::optional<double> vote_minutes;
    std::optional<double> cycle_seconds;
    double dispersion = 0.0;
    std::uint64_t seed = kDefaultSeed;

    // Fills defaults (150 voters per server, 5 minute service) and checks
    // that mutually exclusive fields are not both set.
    void resolve();
    double service_minutes() const;
    ArrivalProfile arrival_profile() const;
    ScenarioConfig config_for(int server_count) const;
};

// Keys mirror the field names. Unknown keys are rejected.
void merge_scenario_json(const json& j, ScenarioOptions& opts);
json scenario_to_json(const ScenarioOptions& opts);

// "a:b:step" (inclusive) or "v1,v2,...".
std::vector<double> parse_grid(const std::string& text);

struct SimulateParams {
    ScenarioOptions scenario;
    std::size_t replications = 10000;
    double bin_minutes = 5.0;
    std::vector<double> thresholds;
    std::size_t worst = 4;
    unsigned threads = 1;
};

struct PlanParams {
    std::string roster;
    planner::PlanParameters plan;
};

struct ThresholdParams {
    ScenarioOptions scenario;  // servers[0], profile, service kind, seed
    double cycle_seconds = 60.0;
    std::string regime = "text";
    std::optional<double> wait_limit;
    std::optional<double> prob_limit;
    std::size_t replications = 10000;
    long max_voters = 50000;
    std::size_t confirm_factor = 10;
    unsigned threads = 1;

    void resolve();
};

struct SweepParams {
    ScenarioOptions scenario;
    std::string axis1 = "vote_minutes";
    std::vector<double> grid1;
    std::optional<std::string> axis2;
    std::vector<double> grid2;
    std::string statistic = "exceedance";
    std::vector<double> thresholds = {15.0, 30.0, 60.0, 120.0};
    double quantile = 0.5;
    std::size_t replications = 10000;
    std::size_t budget = 200'000'000;
    unsigned threads = 1;
};

struct QueueStopParams {
    planner::PlanParameters plan;
};

json to_json(const SimulateParams& p);
json to_json(const PlanParams& p);
json to_json(const ThresholdParams& p);
json to_json(const SweepParams& p);
json to_json(const QueueStopParams& p);

SimulateParams simulate_from_json(const json& j);
PlanParams plan_from_json(const json& j);
ThresholdParams threshold_from_json(const json& j);
SweepParams sweep_from_json(const json& j);
QueueStopParams queue_stop_from_json(const json& j);

// Each returns an ExitCode. Files (and manifest.json) go to out_dir when set.
int execute(const SimulateParams& p, const std::optional<fs::path>& out_dir, std::ostream& out,
            std::ostream& err);
int execute(const PlanParams& p, const std::optional<fs::path>& out_dir, std::ostream& out,
            std::ostream& err);
int execute(const ThresholdParams& p, const std::optional<fs::path>& out_dir, std::ostream& out,
            std::ostream& err);
int execute(const SweepParams& p, const std::optional<fs::path>& out_dir, std::ostream& out,
            std::ostream& err);
int execute(const QueueStopParams& p, const std::optional<fs::path>& out_dir, std::ostream& out,
            std::ostream& err);

// Re-runs the command recorded in a manifest.
int replay(const fs::path& manifest, const std::optional<fs::path>& out_dir, std::ostream& out,
           std::ostream& err);

}  // namespace pollq::cli
