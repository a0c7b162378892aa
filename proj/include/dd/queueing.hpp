#pragma once

#include <optional>
#include <span>

#include "dd/metrics.hpp"
#include "dd/types.hpp"

namespace dd {

struct QueueingError : std::runtime_error {
    enum class Kind { empty_window, window_too_short };
    QueueingError(Kind k, std::string msg) : std::runtime_error(std::move(msg)), kind(k) {}
    Kind kind;
};

enum class Verdict { stationary, nonstationary, indeterminate };

const char* to_string(Verdict v);

struct StationarityResult {
    Verdict verdict = Verdict::indeterminate;
    double drift_stat = 0.0;  // max relative segment-mean drift (volume or dormancy)
};

// Splits the window into equal segments and compares per-segment mean
// daily volume and mean dormancy against the grand means. Stationary iff
// both drift statistics stay within tol. Buckets must be a dense
// (calendar-contiguous) window, e.g. from fill_days.
StationarityResult stationarity_test(std::span<const DailyBucket> window, int segments = 4,
                                     double tol = 0.25);

// L = lambda * W reading of a window: lambda = delta-B / T, W = D / delta-B,
// so L = D / T identically.
struct LittlesReport {
    double lambda_btc_per_day = 0.0;
    double w_days = 0.0;
    double l_btc = 0.0;
    std::optional<double> measured_pool_btc;  // only computable on closed data
    Verdict stationary = Verdict::indeterminate;
    double drift_stat = 0.0;
};

LittlesReport littles_estimate(std::span<const DailyBucket> window, int segments = 4,
                               double tol = 0.25);

// Time-average BTC in flight over [t1, t2) among coins spent inside the
// window. Needs full coin lifetimes, so it only works on closed fixtures
// or synthetic data.
double measured_pool_btc(std::span<const DestroyedCoin> coins, Timestamp t1, Timestamp t2);

}  // namespace dd
