#pragma once

#include <iosfwd>
#include <optional>
#include <span>

#include "dd/metrics.hpp"

namespace dd {

struct TailStatsError : std::runtime_error {
    enum class Kind { empty_range, empty_window };
    TailStatsError(Kind k, std::string msg) : std::runtime_error(std::move(msg)), kind(k) {}
    Kind kind;
};

// Fraction of a day's total days destroyed contributed by its largest
// transaction. share is empty on zero-DD days.
struct MaxSharePoint {
    DayIndex day = 0;
    std::optional<double> share;  // in (0, 1]
    std::string max_tx_id;
    double total_coin_days = 0.0;
};

std::vector<MaxSharePoint> max_share_series(std::span<const DailyBucket> buckets);

// Lower median of the defined shares with day in [first, last].
double median_share(std::span<const MaxSharePoint> points, DayIndex first, DayIndex last);

// Effect of injecting a hypothetical spend into a window's aggregates.
struct WhatIfImpact {
    Amount injected_volume;
    double injected_age_days = 0.0;
    double injected_coin_days = 0.0;
    double baseline_dormancy = 0.0;
    double new_dormancy = 0.0;
    double dd_multiple_of_max = 0.0;  // injected DD / largest observed single-tx DD
};

WhatIfImpact whatif_spend(double window_coin_days, Amount window_volume,
                          double max_tx_coin_days, Amount volume, double age_days);

// CSV: date,share,max_txid,total_coin_days (share empty on zero-DD days)
void write_share_csv(std::ostream& out, std::span<const MaxSharePoint> points);

}  // namespace dd
