#include "pollq/cli.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "pollq/errors.hpp"
#include "pollq/parallel.hpp"

namespace pollq::cli {

namespace {

// Flags shared by simulate, threshold and sweep. Values stay unset unless
// given so they can override a --config file.
struct ScenarioFlags {
    std::string config;
    std::vector<int> servers;
    std::optional<double> voters_per_server;
    std::optional<double> expected_voters;
    std::optional<double> day_minutes;
    std::optional<std::string> profile;
    std::vector<double> hourly_fractions;
    std::optional<std::string> service;
    std::optional<double> vote_minutes;
    std::optional<double> cycle_seconds;
    std::optional<double> dispersion;
    std::optional<std::uint64_t> seed;

    void add(CLI::App& app, bool with_service_time) {
        app.add_option("--config", config, "Scenario JSON file; flags override its values");
        app.add_option("--servers", servers, "Server count(s), comma separated")->delimiter(',');
        app.add_option("--voters-per-server", voters_per_server, "Expected voters per server");
        app.add_option("--expected-voters", expected_voters, "Expected voters for the whole precinct");
        app.add_option("--day-minutes", day_minutes, "Length of the polling day");
        app.add_option("--profile", profile, "maryland, maryland-caption or uniform");
        app.add_option("--hourly-fractions", hourly_fractions, "Per-hour arrival fractions")
            ->delimiter(',');
        app.add_option("--service", service, "deterministic, exponential or lognormal");
        if (with_service_time) {
            app.add_option("--vote-minutes", vote_minutes, "Mean service time in minutes");
            app.add_option("--cycle-seconds", cycle_seconds, "Mean service time in seconds");
        }
        app.add_option("--dispersion", dispersion, "Coefficient of variation (lognormal)");
        app.add_option("--seed", seed, "Base random seed");
    }

    ScenarioOptions build(ScenarioOptions o = {}) const {
        if (voters_per_server && expected_voters) {
            throw DomainError("give --voters-per-server or --expected-voters, not both");
        }
        if (vote_minutes && cycle_seconds) {
            throw DomainError("give --vote-minutes or --cycle-seconds, not both");
        }
        if (!config.empty()) {
            std::ifstream f(config);
            if (!f) {
                throw IoError("cannot read config " + config);
            }
            json j;
            try {
                f >> j;
            } catch (const json::exception& e) {
                throw DomainError("config " + config + ": " + e.what());
            }
            merge_scenario_json(j, o);
        }
        if (!servers.empty()) o.servers = servers;
        if (voters_per_server) {
            o.voters_per_server = voters_per_server;
            o.expected_voters.reset();
        }
        if (expected_voters) {
            o.expected_voters = expected_voters;
            o.voters_per_server.reset();
        }
        if (day_minutes) o.day_minutes = *day_minutes;
        if (profile) {
            o.profile = *profile;
            o.hourly_fractions.clear();
        }
        if (!hourly_fractions.empty()) o.hourly_fractions = hourly_fractions;
        if (service) o.service = *service;
        if (vote_minutes) {
            o.vote_minutes = vote_minutes;
            o.cycle_seconds.reset();
        }
        if (cycle_seconds) {
            o.cycle_seconds = cycle_seconds;
            o.vote_minutes.reset();
        }
        if (dispersion) o.dispersion = *dispersion;
        if (seed) o.seed = *seed;
        return o;
    }
};

void add_plan_flags(CLI::App& app, planner::PlanParameters& plan) {
    app.add_option("--turnout", plan.turnout, "Fraction of registered voters who vote")
        ->capture_default_str();
    app.add_option("--day-minutes", plan.day_minutes, "Length of the polling day")
        ->capture_default_str();
    app.add_option("--vote-minutes", plan.vote_minutes, "Mean time to vote")
        ->capture_default_str();
    app.add_option("--quota", plan.statutory_quota, "Registered voters per statutory machine")
        ->capture_default_str();
}

std::optional<fs::path> as_dir(const std::string& s) {
    return s.empty() ? std::nullopt : std::optional<fs::path>(s);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polling-place queue simulator and capacity planner", "pollq"};
    app.require_subcommand(1);
    app.set_version_flag("--version", POLLQ_VERSION);

    unsigned threads = default_thread_count();
    std::string out_dir;

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo waiting-time and late-closing statistics");
    ScenarioFlags sim_flags;
    SimulateParams sim_p;
    std::string sim_thresholds;
    sim_flags.add(*sim, true);
    sim->add_option("-n,--replications", sim_p.replications, "Simulated elections per server count")
        ->capture_default_str();
    sim->add_option("--bin-minutes", sim_p.bin_minutes, "Histogram bin width")->capture_default_str();
    sim->add_option("--thresholds", sim_thresholds, "Exceedance thresholds in minutes (grid syntax)");
    sim->add_option("--worst", sim_p.worst, "Worst elections to trace per server count")
        ->capture_default_str();
    sim->add_option("--out", out_dir, "Output directory")->default_str("pollq-out");

    // plan
    auto* plan = app.add_subcommand("plan", "Statutory vs Queue-Stop allocation for a precinct roster");
    PlanParams plan_p;
    plan->add_option("roster", plan_p.roster, "CSV with precinct_id,registered[,machines]")
        ->required();
    add_plan_flags(*plan, plan_p.plan);
    plan->add_option("--out", out_dir, "Also write roster_report.csv and a manifest here");

    // threshold
    auto* thr = app.add_subcommand("threshold", "Voters per device before long waits become likely");
    ScenarioFlags thr_flags;
    ThresholdParams thr_p;
    thr_flags.add(*thr, false);
    thr->add_option("--cycle-seconds", thr_p.cycle_seconds, "Per-voter device cycle time")
        ->capture_default_str();
    thr->add_option("--regime", thr_p.regime,
                    "caption: P(max wait > 30 min) <= 1%; text: P(> 15 min) <= 0.1%; custom")
        ->capture_default_str();
    thr->add_option("--wait-limit", thr_p.wait_limit, "Wait limit in minutes (overrides regime)");
    thr->add_option("--prob-limit", thr_p.prob_limit, "Probability limit (overrides regime)");
    thr->add_option("-n,--replications", thr_p.replications, "Replications per probe")
        ->capture_default_str();
    thr->add_option("--max-voters", thr_p.max_voters, "Search cap, voters per device")
        ->capture_default_str();
    thr->add_option("--confirm-factor", thr_p.confirm_factor,
                    "Confirmation run size as a multiple of the probe budget")
        ->capture_default_str();
    thr->add_option("--out", out_dir, "Also write threshold CSVs and a manifest here");

    // sweep
    auto* swp = app.add_subcommand("sweep", "Exceedance or quantile grid over vote time and load");
    ScenarioFlags swp_flags;
    SweepParams swp_p;
    std::string grid1;
    std::string grid2;
    std::string axis2;
    std::string swp_thresholds;
    swp_flags.add(*swp, true);
    swp->add_option("--axis1", swp_p.axis1, "vote_minutes or voters_per_server")
        ->capture_default_str();
    swp->add_option("--grid1", grid1, "start:stop:step or v1,v2,...")->required();
    swp->add_option("--axis2", axis2, "Second axis for a 2-D grid");
    swp->add_option("--grid2", grid2, "Grid for the second axis");
    swp->add_option("--statistic", swp_p.statistic, "exceedance or quantile")->capture_default_str();
    swp->add_option("--thresholds", swp_thresholds, "Exceedance thresholds in minutes");
    swp->add_option("--quantile", swp_p.quantile, "Quantile of max wait")->capture_default_str();
    swp->add_option("-n,--replications", swp_p.replications, "Replications per grid point")
        ->capture_default_str();
    swp->add_option("--budget", swp_p.budget, "Maximum total replications")->capture_default_str();
    swp->add_option("--out", out_dir, "Output directory")->default_str("pollq-out");

    // queue-stop
    auto* qs = app.add_subcommand("queue-stop", "Closed-form Queue-Stop capacity figures");
    QueueStopParams qs_p;
    add_plan_flags(*qs, qs_p.plan);
    qs->add_option("--out", out_dir, "Also write queue_stop.csv and a manifest here");

    // replay
    auto* rep = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    std::string manifest;
    rep->add_option("manifest", manifest, "manifest.json from an earlier run")->required();
    rep->add_option("--out", out_dir, "Output directory (default: the manifest's directory)");

    for (auto* sub : {sim, thr, swp}) {
        sub->add_option("--threads", threads, "Worker threads (default: POLLQ_THREADS or all cores)");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help(e.get_name().empty() ? "" : e.get_name());
        for (auto* sub : app.get_subcommands()) {
            out << sub->help();
        }
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << POLLQ_VERSION << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    }

    try {
        if (sim->parsed()) {
            sim_p.scenario = sim_flags.build();
            if (!sim_thresholds.empty()) sim_p.thresholds = parse_grid(sim_thresholds);
            sim_p.threads = threads;
            return execute(sim_p, fs::path(out_dir.empty() ? "pollq-out" : out_dir), out, err);
        }
        if (plan->parsed()) {
            return execute(plan_p, as_dir(out_dir), out, err);
        }
        if (thr->parsed()) {
            ScenarioOptions single_device;
            single_device.servers = {1};
            thr_p.scenario = thr_flags.build(single_device);
            if (thr_p.scenario.servers.size() != 1) {
                throw DomainError("threshold: give a single server count");
            }
            thr_p.threads = threads;
            return execute(thr_p, as_dir(out_dir), out, err);
        }
        if (swp->parsed()) {
            swp_p.scenario = swp_flags.build();
            swp_p.grid1 = parse_grid(grid1);
            if (!axis2.empty()) {
                if (grid2.empty()) {
                    throw DomainError("sweep: --axis2 needs --grid2");
                }
                swp_p.axis2 = axis2;
                swp_p.grid2 = parse_grid(grid2);
            }
            if (!swp_thresholds.empty()) swp_p.thresholds = parse_grid(swp_thresholds);
            swp_p.threads = threads;
            return execute(swp_p, fs::path(out_dir.empty() ? "pollq-out" : out_dir), out, err);
        }
        if (qs->parsed()) {
            return execute(qs_p, as_dir(out_dir), out, err);
        }
        if (rep->parsed()) {
            return replay(manifest, as_dir(out_dir), out, err);
        }
    } catch (const BudgetError& e) {
        err << "budget error: " << e.what() << '\n';
        return kBudgetError;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kIoError;
    } catch (const DomainError& e) {
        err << "validation error: " << e.what() << '\n';
        return kValidationError;
    } catch (const PreconditionError& e) {
        err << "validation error: " << e.what() << '\n';
        return kValidationError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternalError;
    }
    return kValidationError;
}

}  // namespace pollq::cli
