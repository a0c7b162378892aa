#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dd/ledger.hpp"
#include "dd/metrics.hpp"
#include "dd/prices.hpp"
#include "dd/queueing.hpp"
#include "dd/synth.hpp"
#include "dd/tailstats.hpp"
#include "dd/tx_io.hpp"

namespace {

constexpr const char* kVersion = "ddtool 1.0.0 (ledger generator v1)";

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "-" means stdin/stdout
std::unique_ptr<std::istream> open_input(const std::string& path) {
    if (path == "-") return std::make_unique<std::istream>(std::cin.rdbuf());
    auto f = std::make_unique<std::ifstream>(path);
    if (!*f) throw IoError("cannot open " + path);
    return f;
}

std::unique_ptr<std::ostream> open_output(const std::string& path) {
    if (path == "-") return std::make_unique<std::ostream>(std::cout.rdbuf());
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f) throw IoError("cannot open " + path);
    return f;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_records_csv(std::ostream& out, std::span<const dd::SpendRecord> records) {
    out << "txid,time,volume_sats,change_sats,coin_days\n";
    for (const auto& r : records)
        out << r.txid << ',' << r.time << ',' << r.volume_destroyed.sats << ','
            << r.change_value.sats << ',' << fmt_double(r.coin_days) << '\n';
}

std::vector<dd::SpendRecord> read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "txid,time,volume_sats,change_sats,coin_days")
        throw dd::ParseError("missing records CSV header", 1);
    std::vector<dd::SpendRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        dd::SpendRecord r;
        try {
            std::getline(ss, r.txid, ',');
            std::getline(ss, field, ',');
            r.time = std::stoll(field);
            std::getline(ss, field, ',');
            r.volume_destroyed.sats = std::stoll(field);
            std::getline(ss, field, ',');
            r.change_value.sats = std::stoll(field);
            std::getline(ss, field, ',');
            r.coin_days = std::stod(field);
        } catch (const std::exception& e) {
            throw dd::ParseError(e.what(), lineno);
        }
        records.push_back(std::move(r));
    }
    return records;
}

// Ledger JSONL and record CSV are both accepted where only aggregates
// are needed; JSONL is replayed first.
std::vector<dd::SpendRecord> load_records(std::istream& in, dd::AgeMode mode,
                                          bool annotate_change) {
    const int c = in.peek();
    if (c == '{') {
        std::vector<dd::Transaction> txs = dd::read_tx_jsonl(in);
        return dd::replay(std::span(txs), dd::ReplayOptions{mode, annotate_change}).records;
    }
    return read_records_csv(in);
}

dd::AgeMode parse_age_mode(const std::string& s) {
    if (s == "fractional") return dd::AgeMode::fractional;
    if (s == "integral") return dd::AgeMode::integral;
    throw CLI::ValidationError("--age-mode", "must be 'fractional' or 'integral'");
}

std::pair<dd::DayIndex, dd::DayIndex> full_day_range(std::span<const dd::DailyBucket> buckets) {
    if (buckets.empty())
        throw dd::MetricsError(dd::MetricsError::Kind::empty_input, "no transactions");
    return {buckets.front().day, buckets.back().day};
}

int run(int argc, char** argv) {
    CLI::App app{"UTXO replay and days-destroyed analytics"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string input = "-", output = "-";
    std::string age_mode_str = "fractional";

    auto add_io = [&](CLI::App* cmd, bool with_age = true) {
        cmd->add_option("-i,--input", input, "input path, '-' for stdin");
        cmd->add_option("-o,--output", output, "output path, '-' for stdout");
        if (with_age)
            cmd->add_option("--age-mode", age_mode_str, "fractional|integral")
                ->check(CLI::IsMember({"fractional", "integral"}));
    };

    // replay: ledger JSONL -> spend records CSV
    auto* cmd_replay = app.add_subcommand("replay", "replay a ledger into spend records");
    bool annotate_change = false;
    add_io(cmd_replay);
    cmd_replay->add_flag("--annotate-change", annotate_change,
                         "apply the address-equality change heuristic");

    // metrics: ledger or records -> dormancy/turnover CSV
    auto* cmd_metrics = app.add_subcommand("metrics", "windowed dormancy and turnover series");
    int window = 30;
    bool exclude_change = false;
    add_io(cmd_metrics);
    cmd_metrics->add_option("--window", window, "trailing window in days")
        ->check(CLI::PositiveNumber);
    cmd_metrics->add_flag("--exclude-change", exclude_change,
                          "subtract change outputs from volume");

    // littles: window report as JSON
    auto* cmd_littles = app.add_subcommand("littles", "Little's Law window report");
    int segments = 4;
    double tol = 0.25;
    std::string from_str, to_str;
    add_io(cmd_littles);
    cmd_littles->add_option("--segments", segments, "stationarity segments")
        ->check(CLI::Range(2, 64));
    cmd_littles->add_option("--tol", tol, "stationarity drift tolerance");
    cmd_littles->add_option("--from", from_str, "window start date (YYYY-MM-DD)");
    cmd_littles->add_option("--to", to_str, "window end date, inclusive");

    // skew: max-share CSV
    auto* cmd_skew = app.add_subcommand("skew", "max-transaction share of daily days destroyed");
    std::string median_range;
    add_io(cmd_skew);
    cmd_skew->add_option("--median", median_range,
                         "report median share over FROM:TO (dates) on stderr");

    // whatif: hypothetical spend impact as JSON
    auto* cmd_whatif = app.add_subcommand("whatif", "impact of injecting a hypothetical spend");
    std::int64_t volume_sats = 0;
    double inj_age_days = 0.0;
    add_io(cmd_whatif);
    cmd_whatif->add_option("--volume-sats", volume_sats, "injected volume in satoshis")
        ->required()
        ->check(CLI::NonNegativeNumber);
    cmd_whatif->add_option("--age-days", inj_age_days, "injected coin age in days")
        ->required()
        ->check(CLI::NonNegativeNumber);

    // synth: generate a ledger
    auto* cmd_synth = app.add_subcommand("synth", "generate a synthetic ledger");
    std::uint64_t seed = 0;
    std::string scenario_name, config_path, truth_path;
    cmd_synth->add_option("-o,--output", output, "output path, '-' for stdout");
    cmd_synth->add_option("--seed", seed, "generator seed");
    auto* scen_opt = cmd_synth->add_option("--scenario", scenario_name,
                                           "named scenario: jill, dormant-burst");
    cmd_synth->add_option("--config", config_path, "generator config JSON file")
        ->excludes(scen_opt);
    cmd_synth->add_option("--truth", truth_path, "write ground-truth sidecar CSV here");

    // correlate: dormancy CSV x price CSV
    auto* cmd_corr = app.add_subcommand("correlate", "dormancy vs USD/BTC correlation");
    std::string prices_path;
    std::optional<double> threshold_usd;
    bool spearman = false;
    add_io(cmd_corr, false);
    cmd_corr->add_option("--prices", prices_path, "price CSV (date,usd_per_btc)")->required();
    double threshold_val = 0.0;
    auto* thr_opt = cmd_corr->add_option("--threshold-usd", threshold_val,
                                         "keep only days with price above this");
    cmd_corr->add_flag("--spearman", spearman, "rank correlation instead of Pearson");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }
    const dd::AgeMode mode = parse_age_mode(age_mode_str);

    if (cmd_replay->parsed()) {
        auto in = open_input(input);
        std::vector<dd::Transaction> txs = dd::read_tx_jsonl(*in);
        auto result = dd::replay(std::span(txs), dd::ReplayOptions{mode, annotate_change});
        auto out = open_output(output);
        write_records_csv(*out, result.records);
    } else if (cmd_metrics->parsed()) {
        auto in = open_input(input);
        auto records = load_records(*in, mode, exclude_change);
        auto buckets = dd::bucketize(records, dd::BucketizeOptions{exclude_change});
        auto points = dd::dormancy_series(buckets, window);
        auto out = open_output(output);
        dd::write_dormancy_csv(*out, points);
    } else if (cmd_littles->parsed()) {
        auto in = open_input(input);
        auto records = load_records(*in, mode, false);
        auto buckets = dd::bucketize(records);
        auto [first, last] = full_day_range(buckets);
        if (!from_str.empty()) first = dd::parse_iso_date(from_str);
        if (!to_str.empty()) last = dd::parse_iso_date(to_str);
        auto dense = dd::fill_days(buckets, first, last);
        dd::LittlesReport rep = dd::littles_estimate(dense, segments, tol);
        nlohmann::ordered_json j;
        j["lambda_btc_per_day"] = rep.lambda_btc_per_day;
        j["w_days"] = rep.w_days;
        j["l_btc"] = rep.l_btc;
        j["measured_pool_btc"] =
            rep.measured_pool_btc ? nlohmann::json(*rep.measured_pool_btc) : nlohmann::json();
        j["stationary"] = dd::to_string(rep.stationary);
        j["drift_stat"] = rep.drift_stat;
        auto out = open_output(output);
        *out << j.dump(2) << '\n';
    } else if (cmd_skew->parsed()) {
        auto in = open_input(input);
        auto records = load_records(*in, mode, false);
        auto buckets = dd::bucketize(records);
        auto points = dd::max_share_series(buckets);
        auto out = open_output(output);
        dd::write_share_csv(*out, points);
        if (!median_range.empty()) {
            const auto colon = median_range.find(':');
            if (colon == std::string::npos)
                throw CLI::ValidationError("--median", "expected FROM:TO");
            const double med = dd::median_share(points,
                                                dd::parse_iso_date(median_range.substr(0, colon)),
                                                dd::parse_iso_date(median_range.substr(colon + 1)));
            std::cerr << "median_share=" << fmt_double(med) << '\n';
        }
    } else if (cmd_whatif->parsed()) {
        auto in = open_input(input);
        auto records = load_records(*in, mode, false);
        auto buckets = dd::bucketize(records);
        double window_dd = 0.0, max_dd = 0.0;
        dd::Amount window_vol;
        for (const auto& b : buckets) {
            window_dd += b.coin_days;
            window_vol += b.volume;
            max_dd = std::max(max_dd, b.max_tx_coin_days);
        }
        dd::WhatIfImpact w = dd::whatif_spend(window_dd, window_vol, max_dd,
                                              dd::Amount{volume_sats}, inj_age_days);
        nlohmann::ordered_json j;
        j["injected_volume_sats"] = w.injected_volume.sats;
        j["injected_age_days"] = w.injected_age_days;
        j["injected_coin_days"] = w.injected_coin_days;
        j["baseline_dormancy"] = w.baseline_dormancy;
        j["new_dormancy"] = w.new_dormancy;
        j["dd_multiple_of_max"] = w.dd_multiple_of_max;
        auto out = open_output(output);
        *out << j.dump(2) << '\n';
    } else if (cmd_synth->parsed()) {
        dd::SynthResult res;
        if (!scenario_name.empty()) {
            res = dd::scenario(scenario_name, seed);
        } else if (!config_path.empty()) {
            auto in = open_input(config_path);
            std::stringstream ss;
            ss << in->rdbuf();
            dd::GenConfig cfg = dd::parse_gen_config(ss.str());
            cfg.seed = seed;
            res = dd::generate(cfg);
        } else {
            throw CLI::ValidationError("synth", "need --scenario or --config");
        }
        auto out = open_output(output);
        dd::write_tx_jsonl(*out, res.txs);
        if (!truth_path.empty()) {
            auto tout = open_output(truth_path);
            dd::write_truth_csv(*tout, res.truth);
        }
    } else if (cmd_corr->parsed()) {
        if (thr_opt->count() > 0) threshold_usd = threshold_val;
        auto in = open_input(input);
        auto dormancy = dd::read_dormancy_csv(*in);
        auto pin = open_input(prices_path);
        auto prices = dd::load_prices(*pin);
        dd::CorrelationReport rep = dd::correlate(dormancy, prices, threshold_usd, spearman);
        nlohmann::ordered_json j;
        j["n"] = rep.n;
        j["pearson_r"] = rep.pearson_r;
        j["r_squared"] = rep.r_squared;
        j["threshold_usd"] =
            rep.threshold_usd ? nlohmann::json(*rep.threshold_usd) : nlohmann::json();
        j["spearman"] = rep.spearman;
        auto out = open_output(output);
        *out << j.dump(2) << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}
