#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "dd/ledger.hpp"
#include "dd/metrics.hpp"
#include "dd/synth.hpp"

namespace {

struct CmdResult {
    int status = -1;
    std::string out;
};

CmdResult run(const std::string& cmd) {
    CmdResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int rc = pclose(p);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::string tool() { return DDTOOL_BIN; }

std::string tmp_path(const std::string& name) {
    return std::string("/tmp/ddtool_test_") + name;
}

std::string last_line(const std::string& text) {
    std::istringstream ss(text);
    std::string line, last;
    while (std::getline(ss, line))
        if (!line.empty()) last = line;
    return last;
}

}  // namespace

TEST_CASE("--version prints and exits 0") {
    auto r = run(tool() + " --version");
    CHECK(r.status == 0);
    CHECK(r.out.find("ddtool") != std::string::npos);
}

TEST_CASE("unknown subcommand exits 1 with usage") {
    auto r = run(tool() + " frobnicate 2>&1");
    CHECK(r.status == 1);
}

TEST_CASE("missing input file exits 2") {
    auto r = run(tool() + " replay -i /nonexistent/ledger.jsonl 2>/dev/null");
    CHECK(r.status == 2);
}

TEST_CASE("malformed ledger exits 1") {
    const std::string path = tmp_path("bad.jsonl");
    std::ofstream(path) << "{\"txid\": 42}\n";
    auto r = run(tool() + " replay -i " + path + " 2>/dev/null");
    CHECK(r.status == 1);
}

TEST_CASE("metrics --window 30 on the jill fixture ends at dormancy 4.0") {
    auto r = run(tool() + " synth --scenario jill | " + tool() + " metrics --window 30");
    REQUIRE(r.status == 0);
    const std::string last = last_line(r.out);
    // date,window_days,volume_sats,coin_days,dormancy_days,turnover_annual
    std::istringstream ss(last);
    std::string field;
    for (int i = 0; i < 5; ++i) std::getline(ss, field, ',');
    CHECK(std::stod(field) == 4.0);
}

TEST_CASE("synth | replay | metrics pipeline equals in-process computation") {
    auto piped = run(tool() + " synth --scenario jill | " + tool() + " replay | " + tool() +
                     " metrics --window 30");
    REQUIRE(piped.status == 0);

    dd::SynthResult jill = dd::jill_scenario();
    auto records = dd::replay(jill.txs, dd::AgeMode::fractional).records;
    auto points = dd::dormancy_series(dd::bucketize(records), 30);
    std::stringstream expect;
    dd::write_dormancy_csv(expect, points);
    CHECK(piped.out == expect.str());
}

TEST_CASE("whatif with zero volume is a no-op") {
    auto r = run(tool() + " synth --scenario jill | " + tool() +
                 " whatif --volume-sats 0 --age-days 100");
    REQUIRE(r.status == 0);
    CHECK(r.out.find("\"baseline_dormancy\": 4.0") != std::string::npos);
    CHECK(r.out.find("\"new_dormancy\": 4.0") != std::string::npos);
}

TEST_CASE("littles report is valid JSON with the identity intact") {
    auto r = run(tool() + " synth --scenario jill | " + tool() + " littles --segments 2");
    REQUIRE(r.status == 0);
    CHECK(r.out.find("\"lambda_btc_per_day\"") != std::string::npos);
    CHECK(r.out.find("\"stationary\"") != std::string::npos);
}

TEST_CASE("skew emits the share CSV and median on stderr") {
    auto r = run(tool() +
                 " synth --scenario jill | " + tool() +
                 " skew --median 1970-01-01:1970-01-12 2>" + tmp_path("median.txt"));
    REQUIRE(r.status == 0);
    CHECK(r.out.rfind("date,share,max_txid,total_coin_days\n", 0) == 0);
    std::ifstream med(tmp_path("median.txt"));
    std::string line;
    std::getline(med, line);
    CHECK(line.rfind("median_share=", 0) == 0);
}

TEST_CASE("synth --config with a fixed seed is byte-deterministic") {
    const std::string cfg_path = tmp_path("cfg.json");
    std::ofstream(cfg_path) << R"({"days": 60,
        "arrival": {"kind": "poisson", "rate": 10.0},
        "hold": {"kind": "exponential", "mean": 5.0},
        "amount": {"kind": "lognormal", "median_sats": 8e7, "sigma": 1.0},
        "change_fraction": 0.2})";
    auto a = run(tool() + " synth --seed 42 --config " + cfg_path);
    auto b = run(tool() + " synth --seed 42 --config " + cfg_path);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
    auto c = run(tool() + " synth --seed 43 --config " + cfg_path);
    CHECK(a.out != c.out);
}

TEST_CASE("correlate runs end to end with a threshold") {
    const std::string dorm_path = tmp_path("dorm.csv");
    const std::string price_path = tmp_path("prices.csv");
    {
        auto r = run(tool() + " synth --scenario jill | " + tool() +
                     " metrics --window 1 -o " + dorm_path);
        REQUIRE(r.status == 0);
    }
    std::ofstream(price_path) << "date,usd_per_btc\n1970-01-06,1200\n1970-01-07,1300\n"
                                 "1970-01-08,900\n1970-01-09,1500\n1970-01-10,1700\n"
                                 "1970-01-11,1900\n";
    auto r = run(tool() + " correlate -i " + dorm_path + " --prices " + price_path +
                 " --threshold-usd 1000");
    REQUIRE(r.status == 0);
    CHECK(r.out.find("\"n\": 5") != std::string::npos);
    CHECK(r.out.find("\"pearson_r\"") != std::string::npos);
}

TEST_CASE("replay output is byte-deterministic") {
    auto a = run(tool() + " synth --scenario dormant-burst --seed 5 | " + tool() + " replay");
    auto b = run(tool() + " synth --scenario dormant-burst --seed 5 | " + tool() + " replay");
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
}
