#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "pollq/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run pollq_run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = pollq::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("pollq_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::size_t count_lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

fs::path write_file(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

const fs::path kScenarios = fs::path(POLLQ_SOURCE_DIR) / "scenarios";

}  // namespace

TEST_CASE("queue-stop prints the running example") {
    const auto r = pollq_run({"queue-stop"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("max_actual_voters_per_machine         78.0000") != std::string::npos);
    CHECK(r.out.find("max_registered_voters_per_machine     104.0000") != std::string::npos);
    CHECK(r.out.find("max_vote_minutes_at_statutory_quota   2.6000") != std::string::npos);
}

TEST_CASE("queue-stop validation") {
    CHECK(pollq_run({"queue-stop", "--turnout", "1.5"}).code == pollq::cli::kValidationError);
    CHECK(pollq_run({"queue-stop", "--bogus"}).code == pollq::cli::kValidationError);
    CHECK(pollq_run({}).code == pollq::cli::kValidationError);
}

TEST_CASE("plan") {
    const auto dir = scratch("plan");
    const auto roster = write_file(dir / "roster.csv",
                                   "precinct_id,registered\nP001,1740\nP002,0\nP003,x\n");
    const auto r = pollq_run({"plan", roster.string(), "--out", (dir / "out").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\nP001,1740,9,17,8,") != std::string::npos);
    CHECK(r.out.find("\nP002,0,0,0,0,") != std::string::npos);
    CHECK(r.err.find("roster.csv:4:") != std::string::npos);
    CHECK(slurp(dir / "out" / "roster_report.csv") == r.out);
    CHECK(fs::exists(dir / "out" / "manifest.json"));

    const auto header_only = write_file(dir / "empty.csv", "precinct_id,registered\n");
    const auto e = pollq_run({"plan", header_only.string()});
    CHECK(e.code == pollq::cli::kValidationError);
    CHECK(e.err.find("no records") != std::string::npos);

    CHECK(pollq_run({"plan", (dir / "missing.csv").string()}).code == pollq::cli::kIoError);
}

TEST_CASE("simulate writes tables, histograms, traces and a manifest") {
    const auto dir = scratch("simulate");
    const auto r = pollq_run({"simulate", "--servers", "2,10", "-n", "200", "--worst", "2",
                              "--out", dir.string(), "--threads", "2"});
    REQUIRE(r.code == 0);
    const auto exceed = slurp(dir / "exceedance.csv");
    CHECK(count_lines(exceed) == 5);
    CHECK(exceed.rfind("servers,statistic,gt_15,gt_30,gt_45,gt_60,gt_75,gt_90,gt_105,gt_120\n", 0) == 0);
    CHECK(exceed.find("\n10,max_wait,") != std::string::npos);
    CHECK(fs::exists(dir / "histogram.csv"));
    CHECK(fs::exists(dir / "worst_traces.csv"));
    CHECK(slurp(dir / "manifest.json").find("\"command\": \"simulate\"") != std::string::npos);
}

TEST_CASE("simulate with a single replication") {
    const auto dir = scratch("simulate_one");
    const auto r = pollq_run({"simulate", "--servers", "5", "-n", "1", "--worst", "1", "--out",
                              dir.string()});
    REQUIRE(r.code == 0);
    CHECK(count_lines(slurp(dir / "exceedance.csv")) == 3);
}

TEST_CASE("worst trace peaks inside a heavy-traffic period") {
    const auto dir = scratch("trace");
    const auto r = pollq_run({"simulate", "--servers", "2", "-n", "500", "--worst", "1",
                              "--out", dir.string()});
    REQUIRE(r.code == 0);
    std::istringstream in(slurp(dir / "worst_traces.csv"));
    std::string line;
    std::getline(in, line);
    int peak_minute = -1;
    double peak_wait = -1.0;
    while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
        const double wait = std::stod(cols[6]);
        if (wait > peak_wait) {
            peak_wait = wait;
            peak_minute = std::stoi(cols[4]);
        }
    }
    const bool morning = peak_minute < 120 + 60;       // waits lag arrivals a little
    const bool midday = peak_minute >= 300 && peak_minute < 420 + 60;
    const bool evening = peak_minute >= 600;
    CHECK((morning || midday || evening));
    CHECK(peak_wait > 50.0);
}

TEST_CASE("config file with flag overrides") {
    const auto dir = scratch("config");
    const auto r = pollq_run({"simulate", "--config", (kScenarios / "maryland_dre.json").string(),
                              "--servers", "3", "-n", "50", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("150.00 voters/server") != std::string::npos);
    CHECK(slurp(dir / "exceedance.csv").find("\n3,max_wait") != std::string::npos);

    for (const char* name : {"scanner_5s.json", "epollbook_60s.json", "lee_ma.json",
                             "lee_ma_scanner.json"}) {
        CAPTURE(name);
        const auto s = pollq_run({"simulate", "--config", (kScenarios / name).string(), "-n", "5",
                                  "--worst", "0", "--out", (dir / name).string()});
        CHECK(s.code == 0);
    }

    CHECK(pollq_run({"simulate", "--config", (dir / "nope.json").string()}).code ==
          pollq::cli::kIoError);
    const auto bad = write_file(dir / "bad.json", "{\"servers\": 2, \"colour\": 1}");
    CHECK(pollq_run({"simulate", "--config", bad.string(), "--out", dir.string()}).code ==
          pollq::cli::kValidationError);
    CHECK(pollq_run({"simulate", "--servers", "0", "--out", dir.string()}).code ==
          pollq::cli::kValidationError);
    CHECK(pollq_run({"simulate", "--vote-minutes", "5", "--cycle-seconds", "3", "--out",
                     dir.string()})
              .code == pollq::cli::kValidationError);
}

TEST_CASE("sweep grids, overlay and determinism") {
    const auto dir = scratch("sweep");
    const auto r = pollq_run({"sweep", "--servers", "2", "--grid1", "4.0:6.0:0.2", "-n", "50",
                              "--out", (dir / "a").string()});
    REQUIRE(r.code == 0);
    const auto grid = slurp(dir / "a" / "sweep.csv");
    CHECK(count_lines(grid) == 12);
    CHECK(grid.find("\n4.6000,") != std::string::npos);

    const auto again = pollq_run({"sweep", "--servers", "2", "--grid1", "4.0:6.0:0.2", "-n", "50",
                                  "--out", (dir / "b").string(), "--threads", "3"});
    REQUIRE(again.code == 0);
    CHECK(slurp(dir / "b" / "sweep.csv") == grid);

    const auto two = pollq_run({"sweep", "--servers", "2", "--grid1", "4,5", "--axis2",
                                "voters_per_server", "--grid2", "100,150", "-n", "20", "--out",
                                (dir / "c").string()});
    REQUIRE(two.code == 0);
    CHECK(count_lines(slurp(dir / "c" / "sweep.csv")) == 5);
    CHECK(slurp(dir / "c" / "queue_stop_overlay.csv").find("\n5.0000,78.0000\n") != std::string::npos);

    const auto budget = pollq_run({"sweep", "--grid1", "4:6:0.5", "-n", "1000", "--budget", "10",
                                   "--out", (dir / "d").string()});
    CHECK(budget.code == pollq::cli::kBudgetError);
    CHECK(pollq_run({"sweep", "--grid1", "6,4", "--out", (dir / "e").string()}).code ==
          pollq::cli::kValidationError);
    CHECK(pollq_run({"sweep", "--grid1", "4,x", "--out", (dir / "e").string()}).code ==
          pollq::cli::kValidationError);
}

TEST_CASE("replaying a manifest reproduces every output byte for byte") {
    const auto dir = scratch("replay");
    REQUIRE(pollq_run({"simulate", "--servers", "2,4", "-n", "300", "--service", "exponential",
                       "--worst", "2", "--out", (dir / "orig").string()})
                .code == 0);
    REQUIRE(pollq_run({"replay", (dir / "orig" / "manifest.json").string(), "--out",
                       (dir / "copy").string()})
                .code == 0);
    for (const char* f : {"exceedance.csv", "histogram.csv", "worst_traces.csv", "manifest.json"}) {
        CAPTURE(f);
        CHECK(slurp(dir / "orig" / f) == slurp(dir / "copy" / f));
    }

    REQUIRE(pollq_run({"sweep", "--servers", "2", "--grid1", "4,5", "--axis2", "voters_per_server",
                       "--grid2", "100,150", "-n", "30", "--out", (dir / "sw").string()})
                .code == 0);
    REQUIRE(pollq_run({"replay", (dir / "sw" / "manifest.json").string(), "--out",
                       (dir / "sw2").string()})
                .code == 0);
    CHECK(slurp(dir / "sw" / "sweep.csv") == slurp(dir / "sw2" / "sweep.csv"));
    CHECK(slurp(dir / "sw" / "manifest.json") == slurp(dir / "sw2" / "manifest.json"));

    REQUIRE(pollq_run({"queue-stop", "--vote-minutes", "4", "--out", (dir / "qs").string()}).code == 0);
    REQUIRE(pollq_run({"replay", (dir / "qs" / "manifest.json").string(), "--out",
                       (dir / "qs2").string()})
                .code == 0);
    CHECK(slurp(dir / "qs" / "queue_stop.csv") == slurp(dir / "qs2" / "queue_stop.csv"));

    CHECK(pollq_run({"replay", (dir / "none.json").string()}).code == pollq::cli::kIoError);
}

TEST_CASE("threshold command") {
    const auto dir = scratch("threshold");
    const auto r = pollq_run({"threshold", "--cycle-seconds", "60", "--regime", "caption", "-n",
                              "300", "--confirm-factor", "1", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("regime: caption") != std::string::npos);
    CHECK(r.out.find("threshold: ") != std::string::npos);
    CHECK(r.out.find("reference: 462") != std::string::npos);
    CHECK(fs::exists(dir / "threshold.csv"));
    CHECK(fs::exists(dir / "threshold_probes.csv"));

    const auto unreachable = pollq_run({"threshold", "--cycle-seconds", "36000", "--regime",
                                        "custom", "--wait-limit", "0", "--prob-limit", "0.0001",
                                        "-n", "500"});
    CHECK(unreachable.code == 0);
    CHECK(unreachable.out.find("threshold: 0 voters per device") != std::string::npos);
    CHECK(unreachable.out.find("unreachable") != std::string::npos);

    CHECK(pollq_run({"threshold", "--regime", "custom"}).code == pollq::cli::kValidationError);
    CHECK(pollq_run({"threshold", "--regime", "vibes"}).code == pollq::cli::kValidationError);
}
