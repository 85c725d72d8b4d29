#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "pollq/cli.hpp"
#include "pollq/errors.hpp"
#include "pollq/report.hpp"
#include "pollq/stats.hpp"
#include "pollq/sweep.hpp"

#ifndef POLLQ_VERSION
#define POLLQ_VERSION "0.0.0"
#endif

namespace pollq::cli {

using report::fixed;

namespace {

class OutputDir {
public:
    explicit OutputDir(const std::optional<fs::path>& dir) : dir_(dir) {
        if (dir_) {
            std::error_code ec;
            fs::create_directories(*dir_, ec);
            if (ec) {
                throw IoError("cannot create output directory " + dir_->string() + ": " +
                              ec.message());
            }
        }
    }

    bool enabled() const { return dir_.has_value(); }

    template <class Writer>
    void write(const std::string& name, Writer&& writer) {
        if (!dir_) {
            return;
        }
        const fs::path path = *dir_ / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            throw IoError("cannot write " + path.string());
        }
        writer(f);
        f.flush();
        if (!f) {
            throw IoError("write failed for " + path.string());
        }
        files_.push_back(name);
    }

    void manifest(const std::string& command, std::uint64_t seed, const json& params) {
        if (!dir_) {
            return;
        }
        json m = {{"tool", "pollq"},
                  {"version", POLLQ_VERSION},
                  {"command", command},
                  {"seed", seed},
                  {"parameters", params},
                  {"outputs", files_}};
        write("manifest.json", [&](std::ostream& o) { o << m.dump(2) << '\n'; });
    }

private:
    std::optional<fs::path> dir_;
    std::vector<std::string> files_;
};

std::string percent(double f) { return fixed(100.0 * f, 1) + "%"; }

}  // namespace

int execute(const SimulateParams& in, const std::optional<fs::path>& out_dir, std::ostream& out,
            std::ostream&) {
    SimulateParams p = in;
    p.scenario.resolve();
    if (p.replications == 0) {
        throw DomainError("simulate: replications must be >= 1");
    }
    if (!(p.bin_minutes > 0.0)) {
        throw DomainError("simulate: bin minutes must be positive");
    }
    if (p.thresholds.empty()) {
        p.thresholds = default_thresholds();
    }
    if (!std::is_sorted(p.thresholds.begin(), p.thresholds.end())) {
        throw DomainError("simulate: thresholds must be ascending");
    }

    std::vector<report::ExceedanceRow> exceed_rows;
    std::vector<report::HistogramRow> hist_rows;
    std::vector<report::TraceRow> traces;
    for (const int servers : p.scenario.servers) {
        const auto config = p.scenario.config_for(servers);
        const auto summary = replicate(config, p.replications, p.threads);
        for (const auto stat : {Statistic::max_wait, Statistic::close_delay}) {
            exceed_rows.push_back({servers, stat, exceedance(summary, stat, p.thresholds)});
            hist_rows.push_back({servers, stat, histogram(values_of(summary, stat), p.bin_minutes)});
        }
        for (const auto idx : worst_indices(summary.max_waits, p.worst)) {
            const auto outcome = run_replication(config, idx);
            traces.push_back({servers, idx, outcome.max_wait, outcome.close_delay,
                              minute_trace(outcome, config.profile.day_length())});
        }
    }

    const auto& sc = p.scenario;
    out << "scenario: ";
    if (sc.expected_voters) {
        out << fixed(*sc.expected_voters, 2) << " expected voters";
    } else {
        out << fixed(*sc.voters_per_server, 2) << " voters/server";
    }
    out << ", " << sc.service << " service " << fixed(sc.service_minutes(), 4) << " min, profile "
        << (sc.hourly_fractions.empty() ? sc.profile : std::string("custom")) << ", "
        << p.replications << " replications, seed " << sc.seed << '\n';
    out << std::left << std::setw(8) << "servers" << std::setw(12) << "statistic";
    for (const double t : p.thresholds) {
        out << std::right << std::setw(9) << (">" + fixed(t, 0));
    }
    out << '\n';
    for (const auto& row : exceed_rows) {
        out << std::left << std::setw(8) << row.servers << std::setw(12)
            << to_string(row.statistic);
        for (const double f : row.table.fractions) {
            out << std::right << std::setw(9) << percent(f);
        }
        out << '\n';
    }

    OutputDir dir(out_dir);
    dir.write("exceedance.csv", [&](std::ostream& o) { report::write_exceedance_csv(o, exceed_rows); });
    dir.write("histogram.csv", [&](std::ostream& o) { report::write_histogram_csv(o, hist_rows); });
    dir.write("worst_traces.csv", [&](std::ostream& o) { report::write_trace_csv(o, traces); });
    dir.manifest("simulate", sc.seed, to_json(p));
    return kOk;
}

int execute(const PlanParams& p, const std::optional<fs::path>& out_dir, std::ostream& out,
            std::ostream& err) {
    p.plan.validate();
    std::ifstream f(p.roster);
    if (!f) {
        throw IoError("cannot read roster " + p.roster);
    }
    const auto parsed = report::parse_roster(f);
    const auto rep = planner::roster_report(parsed.records, p.plan);

    auto errors = parsed.errors;
    errors.insert(errors.end(), rep.errors.begin(), rep.errors.end());
    std::sort(errors.begin(), errors.end(),
              [](const auto& a, const auto& b) { return a.line < b.line; });
    for (const auto& e : errors) {
        err << p.roster << ':' << e.line << ": " << e.message << '\n';
    }
    if (rep.rows.empty()) {
        err << p.roster << ": no records\n";
        return kValidationError;
    }

    report::write_roster_csv(out, rep);
    OutputDir dir(out_dir);
    dir.write("roster_report.csv", [&](std::ostream& o) { report::write_roster_csv(o, rep); });
    dir.manifest("plan", 0, to_json(p));
    return kOk;
}

namespace {

// Published capacities per device, keyed by cycle seconds.
const std::map<double, std::string> kReferenceCapacity = {
    {5.0, "8000 (tabulated), over 7300 (stated in prose)"},
    {10.0, "3911 (tabulated), about 3600 (stated in prose)"},
    {30.0, "1074"},
    {60.0, "462"},
};

}  // namespace

int execute(const ThresholdParams& in, const std::optional<fs::path>& out_dir, std::ostream& out,
            std::ostream&) {
    ThresholdParams p = in;
    p.resolve();
    const auto base = p.scenario.config_for(p.scenario.servers.front());

    ThresholdQuery q;
    q.cycle_time = p.cycle_seconds / 60.0;
    q.wait_limit = *p.wait_limit;
    q.prob_limit = *p.prob_limit;
    q.profile = base.profile;
    q.servers = base.servers;
    q.replications = p.replications;
    q.service_kind = base.service.kind();
    q.dispersion = base.service.dispersion();
    q.seed = base.seed;
    q.max_voters_per_server = p.max_voters;
    q.confirm_factor = p.confirm_factor;
    q.threads = p.threads;
    const auto r = capacity_threshold(q);

    out << "cycle time: " << fixed(p.cycle_seconds, 2) << " s, servers " << q.servers
        << ", service " << to_string(q.service_kind) << '\n';
    out << "regime: " << p.regime << " (P(max_wait > " << fixed(q.wait_limit, 2)
        << " min) <= " << fixed(q.prob_limit, 6) << ")\n";
    out << "threshold: " << r.voters_per_server << " voters per device";
    if (r.hit_cap) {
        out << " (search cap)";
    }
    out << '\n';
    out << "probe estimate: " << fixed(r.probe_probability, 6) << " from " << q.replications
        << " replications per probe, " << r.probes.size() << " probes\n";
    if (r.confirm_replications > 0) {
        out << "confirmation: " << fixed(r.confirm_probability, 6) << " +/- "
            << fixed(binomial_std_error(r.confirm_probability, r.confirm_replications), 6)
            << " (1 s.e., " << r.confirm_replications << " replications)";
        if (r.confirm_probability > q.prob_limit) {
            out << " -- above the limit; threshold is optimistic at this budget";
        }
        out << '\n';
    }
    if (!r.diagnostic.empty()) {
        out << "note: " << r.diagnostic << '\n';
    }
    if (const auto it = kReferenceCapacity.find(p.cycle_seconds); it != kReferenceCapacity.end()) {
        out << "reference: " << it->second << '\n';
    }

    OutputDir dir(out_dir);
    dir.write("threshold_probes.csv", [&](std::ostream& o) {
        o << "voters_per_server,exceed_probability\n";
        for (const auto& pr : r.probes) {
            o << pr.voters_per_server << ',' << fixed(pr.exceed_probability, 6) << '\n';
        }
    });
    dir.write("threshold.csv", [&](std::ostream& o) {
        o << "cycle_seconds,wait_limit,prob_limit,servers,voters_per_server,hit_cap,unreachable,"
             "probe_probability,confirm_probability,confirm_replications\n";
        o << fixed(p.cycle_seconds, 4) << ',' << fixed(q.wait_limit, 4) << ','
          << fixed(q.prob_limit, 6) << ',' << q.servers << ',' << r.voters_per_server << ','
          << (r.hit_cap ? 1 : 0) << ',' << (r.unreachable ? 1 : 0) << ','
          << fixed(r.probe_probability, 6) << ',' << fixed(r.confirm_probability, 6) << ','
          << r.confirm_replications << '\n';
    });
    dir.manifest("threshold", q.seed, to_json(p));
    return kOk;
}

int execute(const SweepParams& in, const std::optional<fs::path>& out_dir, std::ostream& out,
            std::ostream&) {
    SweepParams p = in;
    p.scenario.resolve();
    if (p.scenario.servers.size() != 1) {
        throw DomainError("sweep: give a single server count");
    }
    SweepSpec spec;
    spec.fixed = p.scenario.config_for(p.scenario.servers.front());
    spec.axis1 = {parse_sweep_parameter(p.axis1), p.grid1};
    if (p.axis2) {
        spec.axis2 = SweepAxis{parse_sweep_parameter(*p.axis2), p.grid2};
    }
    if (p.statistic == "exceedance") {
        spec.statistic.kind = SweepStatistic::Kind::exceedance;
        spec.statistic.thresholds = p.thresholds;
    } else if (p.statistic == "quantile") {
        spec.statistic.kind = SweepStatistic::Kind::quantile;
        spec.statistic.q = p.quantile;
    } else {
        throw DomainError("sweep: unknown statistic '" + p.statistic +
                          "' (expected exceedance or quantile)");
    }
    spec.replications_per_point = p.replications;
    spec.max_replications = p.budget;
    spec.threads = p.threads;

    const auto result = spec.axis2 ? sweep_2d(spec) : sweep_1d(spec);
    out << "sweep: " << result.points.size() << " grid points x " << p.replications
        << " replications, " << spec.fixed.servers << " servers\n";

    OutputDir dir(out_dir);
    if (!dir.enabled()) {
        report::write_sweep_csv(out, result);
    }
    dir.write("sweep.csv", [&](std::ostream& o) { report::write_sweep_csv(o, result); });
    dir.write("queue_stop_overlay.csv",
              [&](std::ostream& o) { report::write_overlay_csv(o, result); });
    dir.manifest("sweep", spec.fixed.seed, to_json(p));
    return kOk;
}

int execute(const QueueStopParams& p, const std::optional<fs::path>& out_dir, std::ostream& out,
            std::ostream&) {
    p.plan.validate();
    const auto s = planner::queue_stop_summary(p.plan.day_minutes, p.plan.vote_minutes,
                                               p.plan.turnout, p.plan.statutory_quota);
    const std::vector<std::pair<std::string, double>> rows = {
        {"day_minutes", s.day_minutes},
        {"vote_minutes", s.vote_minutes},
        {"turnout", s.turnout},
        {"max_actual_voters_per_machine", s.actual_per_machine},
        {"max_registered_voters_per_machine", s.registered_per_machine},
        {"statutory_quota", static_cast<double>(s.statutory_quota)},
        {"statutory_actual_voters_per_machine", s.statutory_actual_per_machine},
        {"max_vote_minutes_at_statutory_quota", s.statutory_max_vote_time},
    };
    for (const auto& [name, value] : rows) {
        out << std::left << std::setw(38) << name << fixed(value, 4) << '\n';
    }
    OutputDir dir(out_dir);
    dir.write("queue_stop.csv", [&](std::ostream& o) {
        o << "quantity,value\n";
        for (const auto& [name, value] : rows) {
            o << name << ',' << fixed(value, 4) << '\n';
        }
    });
    dir.manifest("queue-stop", 0, to_json(p));
    return kOk;
}

int replay(const fs::path& manifest, const std::optional<fs::path>& out_dir, std::ostream& out,
           std::ostream& err) {
    std::ifstream f(manifest);
    if (!f) {
        throw IoError("cannot read manifest " + manifest.string());
    }
    json m;
    try {
        f >> m;
    } catch (const json::exception& e) {
        throw DomainError("manifest " + manifest.string() + ": " + e.what());
    }
    const auto command = m.value("command", std::string());
    const json params = m.value("parameters", json::object());
    const auto dir = out_dir ? out_dir : std::optional<fs::path>(manifest.parent_path());
    try {
        if (command == "simulate") return execute(simulate_from_json(params), dir, out, err);
        if (command == "plan") return execute(plan_from_json(params), dir, out, err);
        if (command == "threshold") return execute(threshold_from_json(params), dir, out, err);
        if (command == "sweep") return execute(sweep_from_json(params), dir, out, err);
        if (command == "queue-stop") return execute(queue_stop_from_json(params), dir, out, err);
    } catch (const json::exception& e) {
        throw DomainError("manifest " + manifest.string() + ": " + e.what());
    }
    throw DomainError("manifest " + manifest.string() + ": unknown command '" + command + "'");
}

}  // namespace pollq::cli
