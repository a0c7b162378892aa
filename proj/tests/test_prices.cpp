#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dd/prices.hpp"

using namespace dd;

namespace {

std::vector<DormancyPoint> dorm_series(const std::vector<std::pair<DayIndex, double>>& vals) {
    std::vector<DormancyPoint> out;
    for (auto [day, v] : vals) {
        DormancyPoint p;
        p.day = day;
        p.window_days = 1;
        p.window_volume = Amount{100};
        p.dormancy = v;
        out.push_back(p);
    }
    return out;
}

std::vector<PricePoint> price_series(const std::vector<std::pair<DayIndex, double>>& vals) {
    std::vector<PricePoint> out;
    for (auto [day, v] : vals) out.push_back({day, v});
    return out;
}

}  // namespace

TEST_CASE("load_prices: valid rows load sorted") {
    std::stringstream ss("date,usd_per_btc\n2017-01-02,998.5\n2017-01-01,963.2\n");
    auto prices = load_prices(ss);
    REQUIRE(prices.size() == 2);
    CHECK(iso_date(prices[0].day) == "2017-01-01");
    CHECK(prices[0].usd_per_btc == 963.2);
    CHECK(iso_date(prices[1].day) == "2017-01-02");
}

TEST_CASE("load_prices guards") {
    SUBCASE("zero price") {
        std::stringstream ss("date,usd_per_btc\n2017-01-01,0\n");
        try {
            load_prices(ss);
            FAIL("expected PriceError");
        } catch (const PriceError& e) {
            CHECK(e.kind == PriceError::Kind::non_positive_price);
            CHECK(e.line == 2);
        }
    }
    SUBCASE("duplicate date") {
        std::stringstream ss("date,usd_per_btc\n2017-01-01,10\n2017-01-01,11\n");
        CHECK_THROWS_AS(load_prices(ss), PriceError);
    }
    SUBCASE("bad header") {
        std::stringstream ss("day,price\n2017-01-01,10\n");
        CHECK_THROWS_AS(load_prices(ss), PriceError);
    }
    SUBCASE("malformed number carries the line") {
        std::stringstream ss("date,usd_per_btc\n2017-01-01,12.5\n2017-01-02,oops\n");
        try {
            load_prices(ss);
            FAIL("expected PriceError");
        } catch (const PriceError& e) {
            CHECK(e.kind == PriceError::Kind::parse);
            CHECK(e.line == 3);
        }
    }
}

TEST_CASE("shuffled price file loads equal to the pre-shuffle set") {
    std::mt19937_64 rng(17);
    std::vector<PricePoint> original;
    for (int d = 0; d < 1000; ++d)
        original.push_back({17000 + d, 100.0 + static_cast<double>(rng() % 100000) / 100.0});
    auto shuffled = original;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::stringstream ss;
    save_prices(ss, shuffled);
    auto loaded = load_prices(ss);
    REQUIRE(loaded.size() == original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
        CHECK(loaded[i].day == original[i].day);
        CHECK(loaded[i].usd_per_btc == original[i].usd_per_btc);
    }
}

TEST_CASE("save then load is the identity on valid data") {
    std::vector<PricePoint> prices{{100, 963.25}, {101, 1021.5}, {102, 18.75}};
    std::stringstream ss;
    save_prices(ss, prices);
    auto loaded = load_prices(ss);
    REQUIRE(loaded.size() == prices.size());
    for (std::size_t i = 0; i < prices.size(); ++i) {
        CHECK(loaded[i].day == prices[i].day);
        CHECK(loaded[i].usd_per_btc == prices[i].usd_per_btc);
    }
}

TEST_CASE("perfect linear relation gives r = 1, inverse gives r = -1") {
    auto prices = price_series({{0, 10}, {1, 20}, {2, 35}, {3, 50}});
    auto d_pos = dorm_series({{0, 20}, {1, 40}, {2, 70}, {3, 100}});
    auto rep = correlate(d_pos, prices);
    CHECK(rep.pearson_r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    auto d_neg = dorm_series({{0, -10}, {1, -20}, {2, -35}, {3, -50}});
    CHECK(correlate(d_neg, prices).pearson_r == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("threshold filter drops low-price days; r matches the direct formula") {
    // 5 hand points; threshold 1000 keeps the last 3
    auto prices = price_series({{0, 800}, {1, 950}, {2, 1200}, {3, 1500}, {4, 2000}});
    auto dorm = dorm_series({{0, 11}, {1, 14}, {2, 30}, {3, 44}, {4, 52}});
    auto rep = correlate(dorm, prices, 1000.0);
    CHECK(rep.n == 3);

    // direct Pearson over (1200,30),(1500,44),(2000,52)
    const double xs[] = {1200, 1500, 2000}, ys[] = {30, 44, 52};
    double mx = (1200 + 1500 + 2000) / 3.0, my = (30 + 44 + 52) / 3.0;
    double sxy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < 3; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    CHECK(rep.pearson_r == doctest::Approx(sxy / std::sqrt(sxx * syy)).epsilon(1e-12));
    CHECK(rep.r_squared == doctest::Approx(rep.pearson_r * rep.pearson_r).epsilon(1e-12));
}

TEST_CASE("correlation is invariant under positive affine transforms") {
    std::mt19937_64 rng(4);
    auto u = [&] { return static_cast<double>(rng() % 10000) / 100.0; };
    std::vector<std::pair<DayIndex, double>> pv, dv;
    for (int d = 0; d < 50; ++d) {
        pv.emplace_back(d, 1.0 + u());
        dv.emplace_back(d, 1.0 + u());
    }
    const double base = correlate(dorm_series(dv), price_series(pv)).pearson_r;

    for (auto& [day, v] : pv) v = 3.5 * v + 17.0;
    for (auto& [day, v] : dv) v = 0.2 * v + 400.0;
    const double transformed = correlate(dorm_series(dv), price_series(pv)).pearson_r;
    CHECK(transformed == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("alignment is an inner join; days missing from either side are dropped") {
    auto prices = price_series({{0, 10}, {2, 20}, {4, 30}});
    auto dorm = dorm_series({{0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}});
    auto rep = correlate(dorm, prices);
    CHECK(rep.n == 3);
}

TEST_CASE("undefined dormancy points are skipped") {
    auto dorm = dorm_series({{0, 5}, {1, 6}, {2, 7}});
    dorm[1].dormancy.reset();
    auto rep = correlate(dorm, price_series({{0, 10}, {1, 20}, {2, 30}}));
    CHECK(rep.n == 2);
}

TEST_CASE("correlate error paths") {
    auto prices = price_series({{0, 10}, {1, 20}});
    CHECK_THROWS_AS(correlate(dorm_series({{5, 1}, {6, 2}}), prices), CorrelationError);
    CHECK_THROWS_AS(correlate(dorm_series({{0, 3}, {1, 3}}), prices), CorrelationError);
}

TEST_CASE("spearman: any monotone relation scores 1") {
    auto prices = price_series({{0, 10}, {1, 11}, {2, 100}, {3, 5000}});
    auto dorm = dorm_series({{0, 1}, {1, 2}, {2, 2.1}, {3, 2.2}});
    auto rep = correlate(dorm, prices, std::nullopt, true);
    CHECK(rep.spearman);
    CHECK(rep.pearson_r == doctest::Approx(1.0).epsilon(1e-12));
}
