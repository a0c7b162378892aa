#include "dd/prices.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_map>

namespace dd {

std::vector<PricePoint> load_prices(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line) || line != "date,usd_per_btc")
        throw PriceError(PriceError::Kind::parse, "missing header 'date,usd_per_btc'", 1);
    lineno = 1;
    std::vector<PricePoint> points;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw PriceError(PriceError::Kind::parse,
                             "line " + std::to_string(lineno) + ": expected 2 fields", lineno);
        PricePoint p;
        try {
            p.day = parse_iso_date(line.substr(0, comma));
            std::size_t used = 0;
            const std::string num = line.substr(comma + 1);
            p.usd_per_btc = std::stod(num, &used);
            if (used != num.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception& e) {
            throw PriceError(PriceError::Kind::parse,
                             "line " + std::to_string(lineno) + ": " + e.what(), lineno);
        }
        if (p.usd_per_btc <= 0.0)
            throw PriceError(PriceError::Kind::non_positive_price,
                             "line " + std::to_string(lineno) + ": price must be > 0", lineno);
        points.push_back(p);
    }
    std::sort(points.begin(), points.end(),
              [](const PricePoint& a, const PricePoint& b) { return a.day < b.day; });
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].day == points[i - 1].day)
            throw PriceError(PriceError::Kind::duplicate_date,
                             "duplicate date " + iso_date(points[i].day));
    return points;
}

void save_prices(std::ostream& out, std::span<const PricePoint> prices) {
    out << "date,usd_per_btc\n";
    char buf[48];
    for (const PricePoint& p : prices) {
        // shortest representation that parses back bit-exactly
        for (int prec = 12; prec <= 17; ++prec) {
            std::snprintf(buf, sizeof buf, "%.*g", prec, p.usd_per_btc);
            if (std::stod(buf) == p.usd_per_btc) break;
        }
        out << iso_date(p.day) << ',' << buf << '\n';
    }
}

namespace {

// average ranks, ties averaged
std::vector<double> ranks(const std::vector<double>& xs) {
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> r(xs.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
        i = j + 1;
    }
    return r;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0)
        throw CorrelationError(CorrelationError::Kind::zero_variance,
                               "aligned series is constant");
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

CorrelationReport correlate(std::span<const DormancyPoint> dormancy,
                            std::span<const PricePoint> prices,
                            std::optional<double> threshold_usd, bool spearman) {
    std::unordered_map<DayIndex, double> price_by_day;
    for (const PricePoint& p : prices) price_by_day.emplace(p.day, p.usd_per_btc);

    std::vector<double> xs, ys;  // price, dormancy
    for (const DormancyPoint& d : dormancy) {
        if (!d.dormancy) continue;
        auto it = price_by_day.find(d.day);
        if (it == price_by_day.end()) continue;
        if (threshold_usd && !(it->second > *threshold_usd)) continue;
        xs.push_back(it->second);
        ys.push_back(*d.dormancy);
    }
    if (xs.size() < 2)
        throw CorrelationError(CorrelationError::Kind::insufficient_overlap,
                               "need >= 2 aligned points, have " + std::to_string(xs.size()));

    CorrelationReport rep;
    rep.n = static_cast<int>(xs.size());
    rep.threshold_usd = threshold_usd;
    rep.spearman = spearman;
    rep.pearson_r = spearman ? pearson(ranks(xs), ranks(ys)) : pearson(xs, ys);
    rep.r_squared = rep.pearson_r * rep.pearson_r;
    return rep;
}

}  // namespace dd
