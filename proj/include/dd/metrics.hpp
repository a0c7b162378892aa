#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "dd/types.hpp"

namespace dd {

struct MetricsError : std::runtime_error {
    enum class Kind { empty_input, non_positive_dormancy, bad_window };
    MetricsError(Kind k, std::string msg) : std::runtime_error(std::move(msg)), kind(k) {}
    Kind kind;
};

// Per-UTC-day aggregates of volume (delta-B) and days destroyed (D).
struct DailyBucket {
    DayIndex day = 0;
    Amount volume;               // destroyed that day (optionally net of change)
    double coin_days = 0.0;
    int tx_count = 0;
    double max_tx_coin_days = 0.0;
    std::string max_tx_id;       // largest-coin-days tx; ties: smaller txid
};

struct BucketizeOptions {
    bool exclude_change = false;  // subtract flagged change value from volume
};

// Groups time-ordered spend records into one bucket per active UTC day.
std::vector<DailyBucket> bucketize(std::span<const SpendRecord> records,
                                   const BucketizeOptions& opts = {});

// Densifies buckets over [first, last]: missing days become zero buckets.
std::vector<DailyBucket> fill_days(std::span<const DailyBucket> buckets);
std::vector<DailyBucket> fill_days(std::span<const DailyBucket> buckets, DayIndex first,
                                   DayIndex last);

// One point of the windowed dormancy / turnover series.
struct DormancyPoint {
    DayIndex day = 0;
    int window_days = 1;
    Amount window_volume;
    double window_coin_days = 0.0;
    std::optional<double> dormancy;         // days; empty when window volume is 0
    std::optional<double> turnover_annual;  // 365 / dormancy; empty when dormancy is 0
};

// Trailing-window series: day d covers [d - window_days + 1, d], endpoint
// inclusive. Missing calendar days count as zero-volume buckets.
std::vector<DormancyPoint> dormancy_series(std::span<const DailyBucket> buckets,
                                           int window_days);

// period_days / dormancy; throws on dormancy <= 0.
double turnover(double dormancy_days, double period_days = 365.0);

struct CreationHistogram {
    std::vector<Timestamp> bin_edges;  // size bins + 1
    std::vector<Amount> mass;          // amount created per bin; sums to window delta-B
    std::vector<double> normalized;    // f(t); sums to 1

    // Amount-weighted mean creation time.
    double mean_creation_time() const;
};

// Amount-weighted histogram of the creation times of the coins destroyed
// by the given records.
CreationHistogram creation_histogram(std::span<const SpendRecord> records, int bins);

// CSV: date,window_days,volume_sats,coin_days,dormancy_days,turnover_annual
// Undefined points leave their fields empty. Header row mandatory.
void write_dormancy_csv(std::ostream& out, std::span<const DormancyPoint> points);
std::vector<DormancyPoint> read_dormancy_csv(std::istream& in);

}  // namespace dd
