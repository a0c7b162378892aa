#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "dd/types.hpp"

namespace dd {

struct InvalidConfig : std::runtime_error {
    explicit InvalidConfig(std::string msg) : std::runtime_error(std::move(msg)) {}
};

// Generator v1: std::mt19937_64 driven through fixed inverse-CDF /
// Box-Muller transforms (never the implementation-defined std::
// distributions), so a (seed, config) pair is byte-identical everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double exponential(double mean) { return -mean * std::log1p(-uniform()); }

    // standard normal, Box-Muller
    double normal();

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct ArrivalSpec {
    enum class Kind { constant, poisson, ramp };
    Kind kind = Kind::poisson;
    double rate = 10.0;   // coins per day (constant, poisson)
    double start = 0.0;   // coins per day at day 0 (ramp)
    double end = 0.0;     // coins per day at the horizon (ramp)
};

struct HoldComponent {
    enum class Kind { fixed, exponential };
    Kind kind = Kind::fixed;
    double days = 1.0;  // fixed value or exponential mean
};

struct HoldSpec {
    enum class Kind { fixed, exponential, mixture };
    Kind kind = Kind::fixed;
    double days = 1.0;
    std::vector<std::pair<double, HoldComponent>> mixture;  // weights sum to 1
};

struct AmountSpec {
    enum class Kind { fixed, lognormal };
    Kind kind = Kind::fixed;
    std::int64_t sats = Amount::kSatsPerBtc;
    double median_sats = 1e8;  // lognormal scale
    double sigma = 1.0;        // lognormal shape
};

struct GenConfig {
    std::uint64_t seed = 0;
    int days = 30;
    ArrivalSpec arrival;
    HoldSpec hold;
    AmountSpec amount;
    double change_fraction = 0.0;

    void validate() const;  // throws InvalidConfig
};

// True age of every generated spend, plus the planted change outputs.
struct SpendTruth {
    std::string txid;
    std::uint32_t input_index = 0;
    double true_age_days = 0.0;
    bool has_change = false;
};

struct GroundTruth {
    std::vector<SpendTruth> spends;
    std::vector<OutPoint> change_outputs;
};

struct SynthResult {
    std::vector<Transaction> txs;  // time-sorted, replay-valid
    GroundTruth truth;
};

SynthResult generate(const GenConfig& config);

// The worked dormancy example: 10 BTC minted day 0, split five ways on
// day 5, each 2 BTC re-spent on days 6..10. Total 80 coin-days over
// 20 BTC of volume.
SynthResult jill_scenario();

// Nonstationary fixture: a steady short-hold stream plus a late burst of
// long-dormant coins. Breaks the pool-size reading of L = lambda * W.
SynthResult dormant_burst_scenario(std::uint64_t seed);

// Named scenarios for the CLI: "jill", "dormant-burst".
SynthResult scenario(const std::string& name, std::uint64_t seed);

// Sidecar CSV: txid,input_index,true_age_days,is_change
void write_truth_csv(std::ostream& out, const GroundTruth& truth);

// JSON config for the CLI --config flag.
GenConfig parse_gen_config(const std::string& json_text);

// FNV-1a over a serialized stream; used for determinism checks.
std::uint64_t stream_hash(const std::string& bytes);

}  // namespace dd
