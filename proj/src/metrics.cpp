#include "dd/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace dd {

std::vector<DailyBucket> bucketize(std::span<const SpendRecord> records,
                                   const BucketizeOptions& opts) {
    std::vector<DailyBucket> buckets;
    for (const SpendRecord& rec : records) {
        const DayIndex day = day_of(rec.time);
        if (buckets.empty() || buckets.back().day != day) {
            if (!buckets.empty() && day < buckets.back().day)
                throw MetricsError(MetricsError::Kind::bad_window, "records not time-ordered");
            buckets.emplace_back();
            buckets.back().day = day;
        }
        DailyBucket& b = buckets.back();
        b.volume += opts.exclude_change ? rec.volume_destroyed - rec.change_value
                                        : rec.volume_destroyed;
        b.coin_days += rec.coin_days;
        b.tx_count += 1;
        if (rec.coin_days > b.max_tx_coin_days ||
            (rec.coin_days == b.max_tx_coin_days &&
             (b.max_tx_id.empty() || rec.txid < b.max_tx_id))) {
            b.max_tx_coin_days = rec.coin_days;
            b.max_tx_id = rec.txid;
        }
    }
    return buckets;
}

std::vector<DailyBucket> fill_days(std::span<const DailyBucket> buckets, DayIndex first,
                                   DayIndex last) {
    std::vector<DailyBucket> dense;
    dense.reserve(static_cast<std::size_t>(last - first + 1));
    auto it = buckets.begin();
    while (it != buckets.end() && it->day < first) ++it;
    for (DayIndex d = first; d <= last; ++d) {
        if (it != buckets.end() && it->day == d)
            dense.push_back(*it++);
        else {
            dense.emplace_back();
            dense.back().day = d;
        }
    }
    return dense;
}

std::vector<DailyBucket> fill_days(std::span<const DailyBucket> buckets) {
    if (buckets.empty()) return {};
    return fill_days(buckets, buckets.front().day, buckets.back().day);
}

std::vector<DormancyPoint> dormancy_series(std::span<const DailyBucket> buckets,
                                           int window_days) {
    if (buckets.empty()) throw MetricsError(MetricsError::Kind::empty_input, "no buckets");
    if (window_days < 1) throw MetricsError(MetricsError::Kind::bad_window, "window_days < 1");

    const std::vector<DailyBucket> dense = fill_days(buckets);
    const std::size_t n = dense.size();

    std::vector<DormancyPoint> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i + 1 >= static_cast<std::size_t>(window_days)
                                   ? i + 1 - static_cast<std::size_t>(window_days)
                                   : 0;
        DormancyPoint p;
        p.day = dense[i].day;
        p.window_days = window_days;
        // summed in ascending day order so daily sub-sums telescope exactly
        for (std::size_t j = lo; j <= i; ++j) {
            p.window_volume += dense[j].volume;
            p.window_coin_days += dense[j].coin_days;
        }
        if (p.window_volume.sats > 0) {
            p.dormancy = p.window_coin_days / p.window_volume.btc();
            if (*p.dormancy > 0.0) p.turnover_annual = 365.0 / *p.dormancy;
        }
        points.push_back(std::move(p));
    }
    return points;
}

double turnover(double dormancy_days, double period_days) {
    if (dormancy_days <= 0.0)
        throw MetricsError(MetricsError::Kind::non_positive_dormancy,
                           "dormancy must be positive");
    return period_days / dormancy_days;
}

double CreationHistogram::mean_creation_time() const {
    double m = 0.0;
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        const double center = 0.5 * (static_cast<double>(bin_edges[i]) +
                                     static_cast<double>(bin_edges[i + 1]));
        m += normalized[i] * center;
    }
    return m;
}

CreationHistogram creation_histogram(std::span<const SpendRecord> records, int bins) {
    if (bins < 1) throw MetricsError(MetricsError::Kind::bad_window, "bins < 1");
    std::vector<DestroyedCoin> coins;
    for (const auto& rec : records)
        coins.insert(coins.end(), rec.inputs.begin(), rec.inputs.end());
    if (coins.empty()) throw MetricsError(MetricsError::Kind::empty_input, "no spent inputs");

    Timestamp lo = coins.front().created_at, hi = lo;
    for (const auto& c : coins) {
        lo = std::min(lo, c.created_at);
        hi = std::max(hi, c.created_at);
    }
    // keep at least 1-day-wide bins when the creation span is degenerate
    if (hi - lo < static_cast<Timestamp>(bins)) hi = lo + bins * kSecondsPerDay;

    CreationHistogram h;
    h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i)
        h.bin_edges[static_cast<std::size_t>(i)] =
            lo + static_cast<Timestamp>((static_cast<double>(hi - lo) * i) / bins);
    h.bin_edges.back() = hi;
    h.mass.assign(static_cast<std::size_t>(bins), Amount{});

    const double span = static_cast<double>(hi - lo);
    Amount total;
    for (const auto& c : coins) {
        auto idx = static_cast<std::size_t>(
            (static_cast<double>(c.created_at - lo) / span) * bins);
        if (idx >= static_cast<std::size_t>(bins)) idx = static_cast<std::size_t>(bins) - 1;
        h.mass[idx] += c.amount;
        total += c.amount;
    }
    h.normalized.resize(h.mass.size());
    for (std::size_t i = 0; i < h.mass.size(); ++i)
        h.normalized[i] = static_cast<double>(h.mass[i].sats) / static_cast<double>(total.sats);
    return h;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void write_dormancy_csv(std::ostream& out, std::span<const DormancyPoint> points) {
    out << "date,window_days,volume_sats,coin_days,dormancy_days,turnover_annual\n";
    for (const DormancyPoint& p : points) {
        out << iso_date(p.day) << ',' << p.window_days << ',' << p.window_volume.sats << ','
            << fmt_double(p.window_coin_days) << ',';
        if (p.dormancy) out << fmt_double(*p.dormancy);
        out << ',';
        if (p.turnover_annual) out << fmt_double(*p.turnover_annual);
        out << '\n';
    }
}

std::vector<DormancyPoint> read_dormancy_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) ||
        line != "date,window_days,volume_sats,coin_days,dormancy_days,turnover_annual")
        throw MetricsError(MetricsError::Kind::empty_input, "missing dormancy CSV header");
    std::vector<DormancyPoint> points;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        DormancyPoint p;
        try {
            std::getline(ss, field, ',');
            p.day = parse_iso_date(field);
            std::getline(ss, field, ',');
            p.window_days = std::stoi(field);
            std::getline(ss, field, ',');
            p.window_volume.sats = std::stoll(field);
            std::getline(ss, field, ',');
            p.window_coin_days = std::stod(field);
            std::getline(ss, field, ',');
            if (!field.empty()) p.dormancy = std::stod(field);
            std::getline(ss, field, ',');
            if (!field.empty()) p.turnover_annual = std::stod(field);
        } catch (const std::exception& e) {
            throw MetricsError(MetricsError::Kind::empty_input,
                               "dormancy CSV line " + std::to_string(lineno) + ": " + e.what());
        }
        points.push_back(std::move(p));
    }
    return points;
}

}  // namespace dd
