#include "pollq/election.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pollq/errors.hpp"

namespace pollq {

void ScenarioConfig::validate() const {
    if (servers < 1) {
        throw DomainError("scenario: servers must be >= 1");
    }
    if (!(expected_voters >= 0.0) || !std::isfinite(expected_voters)) {
        throw DomainError("scenario: expected voters must be >= 0");
    }
}

namespace {

// Appends one segment's arrivals (sorted) to `out`.
void append_segment(const ProfileSegment& seg, double expected_voters, Engine& engine,
                    std::vector<Minutes>& out) {
    const double mean = expected_voters * seg.hourly_fraction * seg.length() / 60.0;
    if (mean <= 0.0) {
        return;
    }
    const auto count = std::poisson_distribution<long long>(mean)(engine);
    const std::size_t first = out.size();
    std::uniform_real_distribution<double> pos(seg.start, seg.end);
    const Minutes last = std::nextafter(seg.end, seg.start);
    for (long long i = 0; i < count; ++i) {
        out.push_back(std::min(pos(engine), last));
    }
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
}

void sample_into(const ArrivalProfile& profile, double expected_voters, Engine& engine,
                 std::vector<Minutes>& out) {
    if (!(expected_voters >= 0.0) || !std::isfinite(expected_voters)) {
        throw DomainError("arrivals: expected voters must be >= 0");
    }
    out.clear();
    for (const auto& seg : profile.segments()) {
        append_segment(seg, expected_voters, engine, out);
    }
}

// Min-heap of (free time, server index); ties resolve to the lowest index.
class ServerPool {
public:
    explicit ServerPool(int servers) {
        free_.reserve(static_cast<std::size_t>(servers));
        for (int i = 0; i < servers; ++i) {
            free_.push_back({0.0, i});
        }
    }

    // Assigns the next voter and returns the service start time.
    Minutes assign(Minutes arrival, Minutes duration, Minutes& departure) {
        std::pop_heap(free_.begin(), free_.end(), later);
        auto& slot = free_.back();
        const Minutes start = std::max(arrival, slot.first);
        departure = start + duration;
        slot.first = departure;
        std::push_heap(free_.begin(), free_.end(), later);
        return start;
    }

private:
    using Slot = std::pair<Minutes, int>;
    static bool later(const Slot& a, const Slot& b) { return a > b; }
    std::vector<Slot> free_;
};

void check_inputs(std::span<const Minutes> arrivals, int servers) {
    if (servers < 1) {
        throw DomainError("simulate: servers must be >= 1");
    }
    if (!std::is_sorted(arrivals.begin(), arrivals.end())) {
        throw PreconditionError("simulate: arrivals must be sorted ascending");
    }
}

}  // namespace

std::vector<Minutes> sample_arrivals(const ArrivalProfile& profile, double expected_voters,
                                     Engine& engine) {
    std::vector<Minutes> out;
    sample_into(profile, expected_voters, engine, out);
    return out;
}

std::vector<Minutes> draw_service_times(const ServiceModel& service, std::size_t count,
                                        Engine& engine) {
    std::vector<Minutes> out(count);
    for (auto& s : out) {
        s = service.draw(engine);
    }
    return out;
}

ElectionOutcome simulate_election(std::span<const Minutes> arrivals,
                                  std::span<const Minutes> service_times, int servers,
                                  Minutes day_length) {
    check_inputs(arrivals, servers);
    if (service_times.size() != arrivals.size()) {
        throw PreconditionError("simulate: one service time per arrival required");
    }
    ElectionOutcome out;
    const std::size_t n = arrivals.size();
    out.voter_count = n;
    out.arrival_times.assign(arrivals.begin(), arrivals.end());
    out.wait_minutes.resize(n);
    out.service_start.resize(n);
    out.departure.resize(n);

    ServerPool pool(servers);
    Minutes last_departure = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        Minutes dep = 0.0;
        const Minutes start = pool.assign(arrivals[k], service_times[k], dep);
        out.service_start[k] = start;
        out.departure[k] = dep;
        out.wait_minutes[k] = start - arrivals[k];
        out.max_wait = std::max(out.max_wait, out.wait_minutes[k]);
        last_departure = std::max(last_departure, dep);
    }
    out.close_delay = std::max(0.0, last_departure - day_length);
    return out;
}

ElectionOutcome simulate_election(std::span<const Minutes> arrivals, int servers,
                                  const ServiceModel& service, Minutes day_length,
                                  Engine& engine) {
    check_inputs(arrivals, servers);
    const auto durations = draw_service_times(service, arrivals.size(), engine);
    return simulate_election(arrivals, durations, servers, day_length);
}

ElectionOutcome run_replication(const ScenarioConfig& config, std::uint64_t index) {
    config.validate();
    Engine engine = make_engine(config.seed, index);
    const auto arrivals = sample_arrivals(config.profile, config.expected_voters, engine);
    return simulate_election(arrivals, config.servers, config.service,
                             config.profile.day_length(), engine);
}

ReplicationStats run_replication_stats(const ScenarioConfig& config, std::uint64_t index) {
    config.validate();
    thread_local std::vector<Minutes> arrivals;
    Engine engine = make_engine(config.seed, index);
    sample_into(config.profile, config.expected_voters, engine, arrivals);

    ReplicationStats stats;
    stats.voter_count = arrivals.size();
    ServerPool pool(config.servers);
    Minutes last_departure = 0.0;
    for (const Minutes a : arrivals) {
        Minutes dep = 0.0;
        const Minutes start = pool.assign(a, config.service.draw(engine), dep);
        stats.max_wait = std::max(stats.max_wait, start - a);
        last_departure = std::max(last_departure, dep);
    }
    stats.close_delay = std::max(0.0, last_departure - config.profile.day_length());
    return stats;
}

std::vector<TracePoint> minute_trace(const ElectionOutcome& outcome, Minutes day_length) {
    Minutes end = day_length;
    for (const Minutes d : outcome.departure) {
        end = std::max(end, d);
    }
    const int minutes = static_cast<int>(std::ceil(end));
    std::vector<TracePoint> trace;
    trace.reserve(static_cast<std::size_t>(minutes) + 1);

    // Arrivals and service starts are both nondecreasing, so two cursors suffice.
    std::size_t arrived = 0;
    std::size_t started = 0;
    const std::size_t n = outcome.voter_count;
    for (int m = 0; m <= minutes; ++m) {
        const Minutes t = m;
        while (arrived < n && outcome.arrival_times[arrived] <= t) ++arrived;
        while (started < n && outcome.service_start[started] <= t) ++started;
        const std::size_t queued = arrived > started ? arrived - started : 0;
        const Minutes wait = arrived > 0 ? outcome.wait_minutes[arrived - 1] : 0.0;
        trace.push_back({m, queued, wait});
    }
    return trace;
}

}  // namespace pollq
