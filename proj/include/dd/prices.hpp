#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "dd/metrics.hpp"

namespace dd {

struct PriceError : std::runtime_error {
    enum class Kind { parse, duplicate_date, non_positive_price };
    PriceError(Kind k, std::string msg, std::size_t line = 0)
        : std::runtime_error(std::move(msg)), kind(k), line(line) {}
    Kind kind;
    std::size_t line;
};

struct CorrelationError : std::runtime_error {
    enum class Kind { insufficient_overlap, zero_variance };
    CorrelationError(Kind k, std::string msg) : std::runtime_error(std::move(msg)), kind(k) {}
    Kind kind;
};

struct PricePoint {
    DayIndex day = 0;
    double usd_per_btc = 0.0;
};

// CSV with header "date,usd_per_btc", ISO dates. Result is sorted;
// duplicate dates and non-positive prices are rejected.
std::vector<PricePoint> load_prices(std::istream& in);
void save_prices(std::ostream& out, std::span<const PricePoint> prices);

struct CorrelationReport {
    int n = 0;
    double pearson_r = 0.0;
    double r_squared = 0.0;
    std::optional<double> threshold_usd;
    bool spearman = false;
};

// Pearson (or Spearman rank) correlation of dormancy vs price over
// date-aligned pairs; threshold keeps only days with price > threshold.
CorrelationReport correlate(std::span<const DormancyPoint> dormancy,
                            std::span<const PricePoint> prices,
                            std::optional<double> threshold_usd = std::nullopt,
                            bool spearman = false);

}  // namespace dd
