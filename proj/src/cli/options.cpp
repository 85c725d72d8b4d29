#include <cmath>
#include <set>
#include <sstream>

#include "commands.hpp"
#include "pollq/errors.hpp"
#include "pollq/sweep.hpp"

namespace pollq::cli {

void ScenarioOptions::resolve() {
    if (voters_per_server && expected_voters) {
        throw DomainError("give voters_per_server or expected_voters, not both");
    }
    if (vote_minutes && cycle_seconds) {
        throw DomainError("give vote_minutes or cycle_seconds, not both");
    }
    if (!voters_per_server && !expected_voters) {
        voters_per_server = 150.0;
    }
    if (!vote_minutes && !cycle_seconds) {
        vote_minutes = planner::kDefaultVoteMinutes;
    }
    if (servers.empty()) {
        throw DomainError("servers: need at least one value");
    }
    for (const int s : servers) {
        if (s < 1) {
            throw DomainError("servers must be >= 1");
        }
    }
    parse_service_kind(service);
    (void)arrival_profile();
    (void)service_minutes();
}

double ScenarioOptions::service_minutes() const {
    const double m = vote_minutes ? *vote_minutes : (cycle_seconds ? *cycle_seconds / 60.0 : 0.0);
    if (!(m > 0.0)) {
        throw DomainError("service time must be positive");
    }
    return m;
}

ArrivalProfile ScenarioOptions::arrival_profile() const {
    if (!hourly_fractions.empty()) {
        return build_profile(day_minutes, hourly_fractions);
    }
    auto p = named_profile(profile, day_minutes);
    if (p.day_length() != day_minutes) {
        throw DomainError("profile '" + profile + "' spans " +
                          std::to_string(static_cast<int>(p.day_length())) +
                          " minutes but day_minutes is " + std::to_string(day_minutes));
    }
    return p;
}

ScenarioConfig ScenarioOptions::config_for(int server_count) const {
    ScenarioConfig c;
    c.servers = server_count;
    c.expected_voters = expected_voters ? *expected_voters : *voters_per_server * server_count;
    c.profile = arrival_profile();
    c.service = ServiceModel(parse_service_kind(service), service_minutes(), dispersion);
    c.seed = seed;
    c.validate();
    return c;
}

namespace {

template <class T>
std::optional<T> opt_value(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return j.at(key).get<T>();
}

template <class T>
json opt_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

void reject_unknown(const json& j, const std::set<std::string>& known, const char* what) {
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) {
            throw DomainError(std::string(what) + ": unknown key '" + key + "'");
        }
    }
}

const std::set<std::string> kScenarioKeys = {
    "servers",  "voters_per_server", "expected_voters", "day_minutes",   "profile", "hourly_fractions",
    "service",  "vote_minutes",      "cycle_seconds",   "dispersion",    "seed",    "name",
    "comment"};

json plan_to_json(const planner::PlanParameters& p) {
    return {{"turnout", p.turnout},
            {"day_minutes", p.day_minutes},
            {"vote_minutes", p.vote_minutes},
            {"quota", p.statutory_quota}};
}

planner::PlanParameters plan_from(const json& j) {
    planner::PlanParameters p;
    p.turnout = j.value("turnout", p.turnout);
    p.day_minutes = j.value("day_minutes", p.day_minutes);
    p.vote_minutes = j.value("vote_minutes", p.vote_minutes);
    p.statutory_quota = j.value("quota", p.statutory_quota);
    return p;
}

}  // namespace

void merge_scenario_json(const json& j, ScenarioOptions& o) {
    if (!j.is_object()) {
        throw DomainError("scenario: expected a JSON object");
    }
    reject_unknown(j, kScenarioKeys, "scenario");
    try {
        if (j.contains("servers")) {
            const auto& s = j.at("servers");
            o.servers = s.is_array() ? s.get<std::vector<int>>() : std::vector<int>{s.get<int>()};
        }
        if (auto v = opt_value<double>(j, "voters_per_server")) o.voters_per_server = v;
        if (auto v = opt_value<double>(j, "expected_voters")) o.expected_voters = v;
        o.day_minutes = j.value("day_minutes", o.day_minutes);
        o.profile = j.value("profile", o.profile);
        if (j.contains("hourly_fractions")) {
            o.hourly_fractions = j.at("hourly_fractions").get<std::vector<double>>();
        }
        o.service = j.value("service", o.service);
        if (auto v = opt_value<double>(j, "vote_minutes")) o.vote_minutes = v;
        if (auto v = opt_value<double>(j, "cycle_seconds")) o.cycle_seconds = v;
        o.dispersion = j.value("dispersion", o.dispersion);
        o.seed = j.value("seed", o.seed);
    } catch (const json::exception& e) {
        throw DomainError(std::string("scenario: ") + e.what());
    }
}

json scenario_to_json(const ScenarioOptions& o) {
    return {{"servers", o.servers},
            {"voters_per_server", opt_json(o.voters_per_server)},
            {"expected_voters", opt_json(o.expected_voters)},
            {"day_minutes", o.day_minutes},
            {"profile", o.profile},
            {"hourly_fractions", o.hourly_fractions},
            {"service", o.service},
            {"vote_minutes", opt_json(o.vote_minutes)},
            {"cycle_seconds", opt_json(o.cycle_seconds)},
            {"dispersion", o.dispersion},
            {"seed", o.seed}};
}

std::vector<double> parse_grid(const std::string& text) {
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) {
            throw DomainError("grid: cannot parse '" + s + "' in '" + text + "'");
        }
        return v;
    };
    std::vector<std::string> parts;
    const char sep = text.find(':') != std::string::npos ? ':' : ',';
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, sep);) {
        parts.push_back(part);
    }
    std::vector<double> out;
    if (sep == ',') {
        for (const auto& p : parts) {
            out.push_back(number(p));
        }
        return out;
    }
    if (parts.size() != 3) {
        throw DomainError("grid: range form is start:stop:step");
    }
    const double start = number(parts[0]);
    const double stop = number(parts[1]);
    const double step = number(parts[2]);
    if (!(step > 0.0) || stop < start) {
        throw DomainError("grid: need step > 0 and stop >= start");
    }
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) {
        // Round to 12 significant decimals so 4.0 + 3 * 0.2 prints as 4.6.
        const double v = start + static_cast<double>(i) * step;
        out.push_back(std::round(v * 1e12) / 1e12);
    }
    return out;
}

void ThresholdParams::resolve() {
    if (regime == "caption") {
        if (!wait_limit) wait_limit = 30.0;
        if (!prob_limit) prob_limit = 0.01;
    } else if (regime == "text") {
        if (!wait_limit) wait_limit = 15.0;
        if (!prob_limit) prob_limit = 0.001;
    } else if (regime == "custom") {
        if (!wait_limit || !prob_limit) {
            throw DomainError("threshold: custom regime needs --wait-limit and --prob-limit");
        }
    } else {
        throw DomainError("threshold: unknown regime '" + regime +
                          "' (expected caption, text or custom)");
    }
    if (!(cycle_seconds > 0.0)) {
        throw DomainError("threshold: cycle seconds must be positive");
    }
    scenario.vote_minutes.reset();
    scenario.cycle_seconds = cycle_seconds;
    scenario.resolve();
}

json to_json(const SimulateParams& p) {
    return {{"scenario", scenario_to_json(p.scenario)},
            {"replications", p.replications},
            {"bin_minutes", p.bin_minutes},
            {"thresholds", p.thresholds},
            {"worst", p.worst},
            {"threads", p.threads}};
}

json to_json(const PlanParams& p) {
    json j = plan_to_json(p.plan);
    j["roster"] = p.roster;
    return j;
}

json to_json(const ThresholdParams& p) {
    return {{"scenario", scenario_to_json(p.scenario)},
            {"cycle_seconds", p.cycle_seconds},
            {"regime", p.regime},
            {"wait_limit", opt_json(p.wait_limit)},
            {"prob_limit", opt_json(p.prob_limit)},
            {"replications", p.replications},
            {"max_voters", p.max_voters},
            {"confirm_factor", p.confirm_factor},
            {"threads", p.threads}};
}

json to_json(const SweepParams& p) {
    return {{"scenario", scenario_to_json(p.scenario)},
            {"axis1", p.axis1},
            {"grid1", p.grid1},
            {"axis2", opt_json(p.axis2)},
            {"grid2", p.grid2},
            {"statistic", p.statistic},
            {"thresholds", p.thresholds},
            {"quantile", p.quantile},
            {"replications", p.replications},
            {"budget", p.budget},
            {"threads", p.threads}};
}

json to_json(const QueueStopParams& p) { return plan_to_json(p.plan); }

namespace {

ScenarioOptions scenario_from(const json& j) {
    ScenarioOptions o;
    if (j.contains("scenario")) {
        merge_scenario_json(j.at("scenario"), o);
    }
    return o;
}

}  // namespace

SimulateParams simulate_from_json(const json& j) {
    SimulateParams p;
    p.scenario = scenario_from(j);
    p.replications = j.value("replications", p.replications);
    p.bin_minutes = j.value("bin_minutes", p.bin_minutes);
    p.thresholds = j.value("thresholds", p.thresholds);
    p.worst = j.value("worst", p.worst);
    p.threads = j.value("threads", p.threads);
    return p;
}

PlanParams plan_from_json(const json& j) {
    PlanParams p;
    p.plan = plan_from(j);
    p.roster = j.value("roster", std::string());
    return p;
}

ThresholdParams threshold_from_json(const json& j) {
    ThresholdParams p;
    p.scenario = scenario_from(j);
    p.cycle_seconds = j.value("cycle_seconds", p.cycle_seconds);
    p.regime = j.value("regime", p.regime);
    p.wait_limit = opt_value<double>(j, "wait_limit");
    p.prob_limit = opt_value<double>(j, "prob_limit");
    p.replications = j.value("replications", p.replications);
    p.max_voters = j.value("max_voters", p.max_voters);
    p.confirm_factor = j.value("confirm_factor", p.confirm_factor);
    p.threads = j.value("threads", p.threads);
    return p;
}

SweepParams sweep_from_json(const json& j) {
    SweepParams p;
    p.scenario = scenario_from(j);
    p.axis1 = j.value("axis1", p.axis1);
    p.grid1 = j.value("grid1", p.grid1);
    p.axis2 = opt_value<std::string>(j, "axis2");
    p.grid2 = j.value("grid2", p.grid2);
    p.statistic = j.value("statistic", p.statistic);
    p.thresholds = j.value("thresholds", p.thresholds);
    p.quantile = j.value("quantile", p.quantile);
    p.replications = j.value("replications", p.replications);
    p.budget = j.value("budget", p.budget);
    p.threads = j.value("threads", p.threads);
    return p;
}

QueueStopParams queue_stop_from_json(const json& j) {
    return {plan_from(j)};
}

}  // namespace pollq::cli
