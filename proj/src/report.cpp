#include "pollq/report.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string_view>

namespace pollq::report {

std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    std::string s(buf);
    if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);  // no "-0.0000"
    }
    return s;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    for (;;) {
        const auto comma = line.find(',');
        out.push_back(trim(line.substr(0, comma)));
        if (comma == std::string_view::npos) {
            return out;
        }
        line.remove_prefix(comma + 1);
    }
}

bool parse_long(std::string_view s, long& v) {
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    return ec == std::errc() && ptr == end && !s.empty();
}

}  // namespace

RosterParse parse_roster(std::istream& in) {
    RosterParse result;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (lineno == 1 && view.starts_with("\xEF\xBB\xBF")) {
            view.remove_prefix(3);
        }
        if (trim(view).empty()) {
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            const auto cols = split(view);
            if (cols.size() < 2 || cols[0] != "precinct_id" || cols[1] != "registered") {
                result.errors.push_back(
                    {lineno, "expected header precinct_id,registered[,machines]"});
            }
            continue;
        }
        const auto cols = split(view);
        if (cols.size() < 2 || cols.size() > 3) {
            result.errors.push_back({lineno, "expected 2 or 3 fields"});
            continue;
        }
        planner::PrecinctRecord rec;
        rec.line = lineno;
        rec.precinct_id = std::string(cols[0]);
        if (rec.precinct_id.empty()) {
            result.errors.push_back({lineno, "empty precinct_id"});
            continue;
        }
        if (!parse_long(cols[1], rec.registered) || rec.registered < 0) {
            result.errors.push_back({lineno, "registered must be a nonnegative integer"});
            continue;
        }
        if (cols.size() == 3 && !cols[2].empty()) {
            long m = 0;
            if (!parse_long(cols[2], m) || m < 1) {
                result.errors.push_back({lineno, "machines must be a positive integer"});
                continue;
            }
            rec.machines = m;
        }
        result.records.push_back(std::move(rec));
    }
    return result;
}

void write_roster_csv(std::ostream& out, const planner::RosterReport& report) {
    out << "precinct_id,registered,statutory_machines,queue_stop_machines,shortfall,"
           "machines,queueing_product,queueing_limit,within_queue_stop\n";
    for (const auto& r : report.rows) {
        out << r.precinct_id << ',' << r.registered << ',' << r.statutory_machines << ','
            << r.queue_stop_machines << ',' << r.shortfall << ','
            << (r.machines ? std::to_string(*r.machines) : std::string()) << ','
            << fixed(r.queueing_product, kMinutesDigits) << ','
            << fixed(r.queueing_limit, kMinutesDigits) << ','
            << (r.within_queue_stop ? "yes" : "no") << '\n';
    }
    const auto& t = report.totals;
    out << "TOTAL," << t.registered << ',' << t.statutory_machines << ','
        << t.queue_stop_machines << ',' << t.shortfall << ",,,,\n";
}

void write_exceedance_csv(std::ostream& out, const std::vector<ExceedanceRow>& rows) {
    out << "servers,statistic";
    if (!rows.empty()) {
        for (const Minutes t : rows.front().table.thresholds) {
            out << ",gt_" << fixed(t, 0);
        }
    }
    out << '\n';
    for (const auto& row : rows) {
        out << row.servers << ',' << to_string(row.statistic);
        for (const double f : row.table.fractions) {
            out << ',' << fixed(f, kFractionDigits);
        }
        out << '\n';
    }
}

void write_histogram_csv(std::ostream& out, const std::vector<HistogramRow>& rows) {
    out << "servers,statistic,bin_lo,bin_hi,count,normalized\n";
    for (const auto& row : rows) {
        const auto& h = row.histogram;
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            out << row.servers << ',' << to_string(row.statistic) << ','
                << fixed(h.bin_edges[i], kMinutesDigits) << ','
                << fixed(h.bin_edges[i + 1], kMinutesDigits) << ',' << h.counts[i] << ','
                << fixed(h.normalized_peak[i], kFractionDigits) << '\n';
        }
    }
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
    out << "servers,replication,max_wait,close_delay,minute,queue_length,wait\n";
    for (const auto& row : rows) {
        const auto mw = fixed(row.max_wait, kMinutesDigits);
        const auto cd = fixed(row.close_delay, kMinutesDigits);
        for (const auto& p : row.trace) {
            out << row.servers << ',' << row.replication << ',' << mw << ',' << cd << ','
                << p.minute << ',' << p.queue_length << ',' << fixed(p.wait, kMinutesDigits)
                << '\n';
        }
    }
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << to_string(result.axis1);
    if (result.axis2) {
        out << ',' << to_string(*result.axis2);
    }
    for (const auto& label : result.labels) {
        out << ',' << label << ",se_" << label;
    }
    out << '\n';
    for (const auto& p : result.points) {
        out << fixed(p.x1, kMinutesDigits);
        if (p.x2) {
            out << ',' << fixed(*p.x2, kMinutesDigits);
        }
        for (std::size_t i = 0; i < p.values.size(); ++i) {
            out << ',' << fixed(p.values[i], kFractionDigits) << ','
                << fixed(p.std_errors[i], kFractionDigits);
        }
        out << '\n';
    }
}

void write_overlay_csv(std::ostream& out, const SweepResult& result) {
    out << "vote_minutes,voters_per_server\n";
    for (const auto& p : result.queue_stop_curve) {
        out << fixed(p.vote_minutes, kMinutesDigits) << ','
            << fixed(p.voters_per_server, kMinutesDigits) << '\n';
    }
}

}  // namespace pollq::report
