#include "pollq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pollq/errors.hpp"

namespace pollq {

ReplicationSummary replicate(const ScenarioConfig& config, std::size_t n, unsigned threads) {
    if (n == 0) {
        throw DomainError("replicate: need at least one replication");
    }
    config.validate();
    ReplicationSummary summary;
    summary.replications = n;
    summary.config = config;
    summary.max_waits.resize(n);
    summary.close_delays.resize(n);
    parallel_for(n, threads, [&](std::size_t i) {
        const auto r = run_replication_stats(config, i);
        summary.max_waits[i] = r.max_wait;
        summary.close_delays[i] = r.close_delay;
    });
    return summary;
}

std::string_view to_string(Statistic s) {
    return s == Statistic::max_wait ? "max_wait" : "close_delay";
}

Statistic parse_statistic(std::string_view name) {
    if (name == "max_wait") return Statistic::max_wait;
    if (name == "close_delay") return Statistic::close_delay;
    throw DomainError("unknown statistic '" + std::string(name) +
                      "' (expected max_wait or close_delay)");
}

const std::vector<Minutes>& values_of(const ReplicationSummary& summary, Statistic s) {
    return s == Statistic::max_wait ? summary.max_waits : summary.close_delays;
}

ExceedanceTable exceedance(std::span<const Minutes> values, std::span<const Minutes> thresholds) {
    if (values.empty()) {
        throw DomainError("exceedance: empty summary");
    }
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
        throw DomainError("exceedance: thresholds must be ascending");
    }
    std::vector<Minutes> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    ExceedanceTable table;
    table.thresholds.assign(thresholds.begin(), thresholds.end());
    table.fractions.reserve(thresholds.size());
    const auto n = static_cast<double>(sorted.size());
    for (const Minutes t : thresholds) {
        const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
        table.fractions.push_back(static_cast<double>(above) / n);
    }
    return table;
}

ExceedanceTable exceedance(const ReplicationSummary& summary, Statistic statistic,
                           std::span<const Minutes> thresholds) {
    return exceedance(values_of(summary, statistic), thresholds);
}

std::vector<Minutes> default_thresholds() {
    std::vector<Minutes> t;
    for (int m = 15; m <= 120; m += 15) {
        t.push_back(m);
    }
    return t;
}

double binomial_std_error(double p, std::size_t n) {
    if (n == 0) {
        return 0.0;
    }
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

Histogram histogram(std::span<const Minutes> values, Minutes bin_width) {
    if (!(bin_width > 0.0)) {
        throw DomainError("histogram: bin width must be positive");
    }
    if (values.empty()) {
        throw DomainError("histogram: no values");
    }
    const Minutes top = *std::max_element(values.begin(), values.end());
    if (*std::min_element(values.begin(), values.end()) < 0.0) {
        throw DomainError("histogram: negative value");
    }
    const auto bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(top / bin_width)));
    Histogram h;
    h.counts.assign(bins, 0);
    for (const Minutes v : values) {
        const double pos = std::ceil(v / bin_width) - 1.0;
        const auto idx = std::min(bins - 1, static_cast<std::size_t>(std::max(0.0, pos)));
        ++h.counts[idx];
    }
    h.bin_edges.reserve(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        h.bin_edges.push_back(bin_width * static_cast<double>(i));
    }
    const auto peak = static_cast<double>(*std::max_element(h.counts.begin(), h.counts.end()));
    h.normalized_peak.reserve(bins);
    for (const auto c : h.counts) {
        h.normalized_peak.push_back(peak > 0 ? static_cast<double>(c) / peak : 0.0);
    }
    return h;
}

double quantile(std::span<const Minutes> values, double q) {
    if (values.empty()) {
        throw DomainError("quantile: no values");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw DomainError("quantile: q must lie in [0, 1]");
    }
    std::vector<Minutes> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(sorted.size() - 1, lo + 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<std::size_t> worst_indices(std::span<const Minutes> values, std::size_t k) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    k = std::min(k, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                          return values[a] != values[b] ? values[a] > values[b] : a < b;
                      });
    idx.resize(k);
    return idx;
}

namespace {

ScenarioConfig probe_config(const ThresholdQuery& q, long voters_per_server) {
    ScenarioConfig config;
    config.servers = q.servers;
    config.expected_voters = static_cast<double>(voters_per_server) * q.servers;
    config.profile = q.profile;
    config.service = ServiceModel(q.service_kind, q.cycle_time, q.dispersion);
    config.seed = q.seed;
    return config;
}

double exceed_probability(const ThresholdQuery& q, long voters_per_server, std::size_t n) {
    const auto summary = replicate(probe_config(q, voters_per_server), n, q.threads);
    const Minutes limit[] = {q.wait_limit};
    return exceedance(summary.max_waits, limit).fractions.front();
}

}  // namespace

ThresholdResult capacity_threshold(const ThresholdQuery& q) {
    if (!(q.cycle_time > 0.0)) {
        throw DomainError("threshold: cycle time must be positive");
    }
    if (!(q.prob_limit > 0.0 && q.prob_limit < 1.0)) {
        throw DomainError("threshold: probability limit must lie in (0, 1)");
    }
    if (!(q.wait_limit >= 0.0)) {
        throw DomainError("threshold: wait limit must be >= 0");
    }
    if (q.servers < 1) {
        throw DomainError("threshold: servers must be >= 1");
    }
    if (q.replications == 0) {
        throw DomainError("threshold: need at least one replication per probe");
    }
    if (q.max_voters_per_server < 1) {
        throw DomainError("threshold: search cap must be >= 1");
    }

    ThresholdResult result;
    auto probe = [&](long v) {
        const double p = exceed_probability(q, v, q.replications);
        result.probes.push_back({v, p});
        return p;
    };
    auto ok = [&](double p) { return p <= q.prob_limit; };

    const double at_one = probe(1);
    if (!ok(at_one)) {
        result.unreachable = true;
        result.probe_probability = at_one;
        std::ostringstream msg;
        msg << "limit unreachable: P(max_wait > " << q.wait_limit << ") = " << at_one
            << " already at 1 voter per device";
        result.diagnostic = msg.str();
        return result;
    }

    long lo = 1;
    double lo_p = at_one;
    long hi = 0;
    for (long v = std::min(2L, q.max_voters_per_server); hi == 0;) {
        const double p = probe(v);
        if (!ok(p)) {
            hi = v;
        } else {
            lo = v;
            lo_p = p;
            if (v == q.max_voters_per_server) {
                break;
            }
            v = std::min(v * 2, q.max_voters_per_server);
        }
    }
    if (hi == 0) {
        result.hit_cap = true;
        result.diagnostic = "search cap reached; true threshold is at least the cap";
    } else {
        while (hi - lo > 1) {
            const long mid = lo + (hi - lo) / 2;
            const double p = probe(mid);
            if (ok(p)) {
                lo = mid;
                lo_p = p;
            } else {
                hi = mid;
            }
        }
    }
    result.voters_per_server = lo;
    result.probe_probability = lo_p;
    if (q.confirm_factor > 0) {
        result.confirm_replications = q.replications * q.confirm_factor;
        result.confirm_probability = exceed_probability(q, lo, result.confirm_replications);
    }
    return result;
}

}  // namespace pollq
