#include "dd/tailstats.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <vector>

namespace dd {

std::vector<MaxSharePoint> max_share_series(std::span<const DailyBucket> buckets) {
    std::vector<MaxSharePoint> points;
    points.reserve(buckets.size());
    for (const DailyBucket& b : buckets) {
        MaxSharePoint p;
        p.day = b.day;
        p.total_coin_days = b.coin_days;
        if (b.coin_days > 0.0) {
            p.share = b.max_tx_coin_days / b.coin_days;
            p.max_tx_id = b.max_tx_id;
        }
        points.push_back(std::move(p));
    }
    return points;
}

double median_share(std::span<const MaxSharePoint> points, DayIndex first, DayIndex last) {
    std::vector<double> shares;
    for (const MaxSharePoint& p : points)
        if (p.share && p.day >= first && p.day <= last) shares.push_back(*p.share);
    if (shares.empty())
        throw TailStatsError(TailStatsError::Kind::empty_range,
                             "no defined share points in range");
    // lower median: element at index (n-1)/2
    const std::size_t k = (shares.size() - 1) / 2;
    std::nth_element(shares.begin(), shares.begin() + static_cast<std::ptrdiff_t>(k),
                     shares.end());
    return shares[k];
}

WhatIfImpact whatif_spend(double window_coin_days, Amount window_volume,
                          double max_tx_coin_days, Amount volume, double age_days) {
    if (window_volume.sats <= 0)
        throw TailStatsError(TailStatsError::Kind::empty_window, "window has zero volume");
    WhatIfImpact w;
    w.injected_volume = volume;
    w.injected_age_days = age_days;
    w.injected_coin_days = volume.btc() * age_days;
    w.baseline_dormancy = window_coin_days / window_volume.btc();
    w.new_dormancy = (window_coin_days + w.injected_coin_days) /
                     (window_volume.btc() + volume.btc());
    w.dd_multiple_of_max =
        max_tx_coin_days > 0.0 ? w.injected_coin_days / max_tx_coin_days : 0.0;
    return w;
}

void write_share_csv(std::ostream& out, std::span<const MaxSharePoint> points) {
    out << "date,share,max_txid,total_coin_days\n";
    char buf[40];
    for (const MaxSharePoint& p : points) {
        out << iso_date(p.day) << ',';
        if (p.share) {
            std::snprintf(buf, sizeof buf, "%.12g", *p.share);
            out << buf;
        }
        out << ',' << p.max_tx_id << ',';
        std::snprintf(buf, sizeof buf, "%.12g", p.total_coin_days);
        out << buf << '\n';
    }
}

}  // namespace dd
