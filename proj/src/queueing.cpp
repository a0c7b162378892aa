#include "dd/queueing.hpp"

#include <algorithm>
#include <cmath>

namespace dd {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::stationary: return "stationary";
        case Verdict::nonstationary: return "nonstationary";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

StationarityResult stationarity_test(std::span<const DailyBucket> window, int segments,
                                     double tol) {
    if (segments < 2) segments = 2;
    const std::size_t n = window.size();
    if (n < 2 * static_cast<std::size_t>(segments))
        throw QueueingError(QueueingError::Kind::window_too_short,
                            "window needs at least " + std::to_string(2 * segments) + " days");

    double grand_vol = 0.0, grand_dd = 0.0;
    for (const auto& b : window) {
        grand_vol += b.volume.btc();
        grand_dd += b.coin_days;
    }
    StationarityResult res;
    if (grand_vol <= 0.0) {
        res.verdict = Verdict::indeterminate;
        return res;
    }
    const double grand_vol_mean = grand_vol / static_cast<double>(n);
    const double grand_dorm = grand_dd / grand_vol;

    bool indeterminate = false;
    double drift = 0.0;
    for (int s = 0; s < segments; ++s) {
        const std::size_t lo = n * static_cast<std::size_t>(s) / segments;
        const std::size_t hi = n * (static_cast<std::size_t>(s) + 1) / segments;
        double seg_vol = 0.0, seg_dd = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            seg_vol += window[i].volume.btc();
            seg_dd += window[i].coin_days;
        }
        if (seg_vol <= 0.0) {
            indeterminate = true;
            continue;
        }
        const double seg_vol_mean = seg_vol / static_cast<double>(hi - lo);
        drift = std::max(drift, std::abs(seg_vol_mean - grand_vol_mean) / grand_vol_mean);
        if (grand_dorm > 0.0)
            drift = std::max(drift, std::abs(seg_dd / seg_vol - grand_dorm) / grand_dorm);
    }
    res.drift_stat = drift;
    res.verdict = indeterminate ? Verdict::indeterminate
                                : (drift <= tol ? Verdict::stationary : Verdict::nonstationary);
    return res;
}

LittlesReport littles_estimate(std::span<const DailyBucket> window, int segments, double tol) {
    if (window.empty())
        throw QueueingError(QueueingError::Kind::empty_window, "empty window");
    double vol_btc = 0.0, dd = 0.0;
    for (const auto& b : window) {
        vol_btc += b.volume.btc();
        dd += b.coin_days;
    }
    if (vol_btc <= 0.0)
        throw QueueingError(QueueingError::Kind::empty_window, "window has zero volume");

    const double t_days = static_cast<double>(window.size());
    LittlesReport rep;
    rep.lambda_btc_per_day = vol_btc / t_days;
    rep.w_days = dd / vol_btc;
    rep.l_btc = rep.lambda_btc_per_day * rep.w_days;
    try {
        const StationarityResult s = stationarity_test(window, segments, tol);
        rep.stationary = s.verdict;
        rep.drift_stat = s.drift_stat;
    } catch (const QueueingError&) {
        rep.stationary = Verdict::indeterminate;
    }
    return rep;
}

double measured_pool_btc(std::span<const DestroyedCoin> coins, Timestamp t1, Timestamp t2) {
    if (t2 <= t1)
        throw QueueingError(QueueingError::Kind::empty_window, "t2 <= t1");
    double mass_btc_seconds = 0.0;
    for (const DestroyedCoin& c : coins) {
        if (c.spent_at < t1 || c.spent_at >= t2) continue;
        const Timestamp lo = std::max(c.created_at, t1);
        const Timestamp hi = std::min(c.spent_at, t2);
        if (hi > lo) mass_btc_seconds += c.amount.btc() * static_cast<double>(hi - lo);
    }
    return mass_btc_seconds / static_cast<double>(t2 - t1);
}

}  // namespace dd
