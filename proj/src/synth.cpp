#include "dd/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace dd {

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

void GenConfig::validate() const {
    if (days < 1) throw InvalidConfig("days must be >= 1");
    switch (arrival.kind) {
        case ArrivalSpec::Kind::constant:
        case ArrivalSpec::Kind::poisson:
            if (arrival.rate <= 0.0) throw InvalidConfig("arrival rate must be > 0");
            break;
        case ArrivalSpec::Kind::ramp:
            if (arrival.start <= 0.0 || arrival.end <= 0.0)
                throw InvalidConfig("ramp rates must be > 0");
            break;
    }
    auto check_hold = [](HoldComponent::Kind, double d) {
        if (d <= 0.0) throw InvalidConfig("hold time parameter must be > 0");
    };
    if (hold.kind == HoldSpec::Kind::mixture) {
        if (hold.mixture.empty()) throw InvalidConfig("empty hold mixture");
        double wsum = 0.0;
        for (const auto& [w, c] : hold.mixture) {
            if (w < 0.0) throw InvalidConfig("negative mixture weight");
            check_hold(c.kind, c.days);
            wsum += w;
        }
        if (std::abs(wsum - 1.0) > 1e-9) throw InvalidConfig("mixture weights must sum to 1");
    } else {
        check_hold(HoldComponent::Kind::fixed, hold.days);
    }
    if (amount.kind == AmountSpec::Kind::fixed) {
        if (amount.sats <= 0) throw InvalidConfig("amount sats must be > 0");
    } else {
        if (amount.median_sats <= 0.0 || amount.sigma <= 0.0)
            throw InvalidConfig("lognormal parameters must be > 0");
    }
    if (change_fraction < 0.0 || change_fraction > 1.0)
        throw InvalidConfig("change_fraction must be in [0,1]");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// 64 hex chars; the first quadword is a bijection of the counter, so ids
// are unique and deterministic
std::string make_txid(std::uint64_t n) {
    char buf[72];
    std::snprintf(buf, sizeof buf, "%016llx%016llx%016llx%016llx",
                  static_cast<unsigned long long>(splitmix64(n)),
                  static_cast<unsigned long long>(splitmix64(n ^ 0x1111111111111111ULL)),
                  static_cast<unsigned long long>(splitmix64(n ^ 0x2222222222222222ULL)),
                  static_cast<unsigned long long>(n));
    return buf;
}

double sample_hold(const HoldSpec& spec, Rng& rng) {
    switch (spec.kind) {
        case HoldSpec::Kind::fixed:
            return spec.days;
        case HoldSpec::Kind::exponential:
            return rng.exponential(spec.days);
        case HoldSpec::Kind::mixture: {
            double u = rng.uniform();
            for (const auto& [w, c] : spec.mixture) {
                if (u < w || &c == &spec.mixture.back().second)
                    return c.kind == HoldComponent::Kind::fixed ? c.days
                                                               : rng.exponential(c.days);
                u -= w;
            }
            return spec.mixture.back().second.days;
        }
    }
    return spec.days;
}

std::int64_t sample_sats(const AmountSpec& spec, Rng& rng) {
    if (spec.kind == AmountSpec::Kind::fixed) return spec.sats;
    const double v = spec.median_sats * std::exp(spec.sigma * rng.normal());
    return std::max<std::int64_t>(1, std::llround(v));
}

std::vector<double> sample_arrivals(const ArrivalSpec& spec, int days, Rng& rng) {
    std::vector<double> times;
    switch (spec.kind) {
        case ArrivalSpec::Kind::constant:
            for (double t = 0.0; t < days; t += 1.0 / spec.rate) times.push_back(t);
            break;
        case ArrivalSpec::Kind::poisson:
            for (double t = rng.exponential(1.0 / spec.rate); t < days;
                 t += rng.exponential(1.0 / spec.rate))
                times.push_back(t);
            break;
        case ArrivalSpec::Kind::ramp: {
            // inhomogeneous Poisson via thinning
            const double rmax = std::max(spec.start, spec.end);
            double t = 0.0;
            while (true) {
                t += rng.exponential(1.0 / rmax);
                if (t >= days) break;
                const double rate = spec.start + (spec.end - spec.start) * t / days;
                if (rng.uniform() < rate / rmax) times.push_back(t);
            }
            break;
        }
    }
    return times;
}

}  // namespace

SynthResult generate(const GenConfig& config) {
    config.validate();
    Rng rng(config.seed);
    SynthResult res;
    const Timestamp horizon = static_cast<Timestamp>(config.days) * kSecondsPerDay;

    const std::vector<double> arrivals = sample_arrivals(config.arrival, config.days, rng);
    std::uint64_t next_id = 1;
    for (std::size_t i = 0; i < arrivals.size(); ++i) {
        const Timestamp created = std::llround(arrivals[i] * kSecondsPerDay);
        if (created >= horizon) continue;
        const Amount amount{sample_sats(config.amount, rng)};
        const double hold = sample_hold(config.hold, rng);
        const bool want_change = rng.uniform() < config.change_fraction;
        const double change_frac = 0.25 + 0.5 * rng.uniform();

        const std::string miner = "m" + std::to_string(i);
        Transaction mint;
        mint.txid = make_txid(next_id++);
        mint.time = created;
        mint.coinbase = true;
        mint.outputs.push_back({amount, miner});

        const Timestamp spent = std::llround((arrivals[i] + hold) * kSecondsPerDay);
        if (spent < horizon) {
            Transaction spend;
            spend.txid = make_txid(next_id++);
            spend.time = std::max(spent, created);
            spend.coinbase = false;
            spend.inputs.push_back({mint.txid, 0});
            bool planted = false;
            if (want_change && amount.sats >= 2) {
                const std::int64_t back = std::clamp<std::int64_t>(
                    std::llround(change_frac * static_cast<double>(amount.sats)), 1,
                    amount.sats - 1);
                spend.outputs.push_back({Amount{amount.sats - back}, "r" + std::to_string(i)});
                spend.outputs.push_back({Amount{back}, miner});
                res.truth.change_outputs.push_back({spend.txid, 1});
                planted = true;
            } else {
                spend.outputs.push_back({amount, "r" + std::to_string(i)});
            }
            res.truth.spends.push_back(
                {spend.txid, 0,
                 static_cast<double>(spend.time - created) / kSecondsPerDay, planted});
            res.txs.push_back(std::move(mint));
            res.txs.push_back(std::move(spend));
        } else {
            res.txs.push_back(std::move(mint));
        }
    }
    std::stable_sort(res.txs.begin(), res.txs.end(),
                     [](const Transaction& a, const Transaction& b) { return a.time < b.time; });
    return res;
}

SynthResult jill_scenario() {
    SynthResult res;
    auto day = [](std::int64_t d) { return d * kSecondsPerDay; };
    const Amount ten = Amount::from_btc_whole(10);
    const Amount two = Amount::from_btc_whole(2);
    const char* names[] = {"anya", "bob", "cai", "dave", "elena"};

    Transaction mint;
    mint.txid = make_txid(1);
    mint.time = day(0);
    mint.coinbase = true;
    mint.outputs.push_back({ten, "jill"});
    res.txs.push_back(mint);

    Transaction split;
    split.txid = make_txid(2);
    split.time = day(5);
    split.inputs.push_back({mint.txid, 0});
    for (const char* n : names) split.outputs.push_back({two, n});
    res.truth.spends.push_back({split.txid, 0, 5.0, false});
    res.txs.push_back(split);

    for (std::uint32_t k = 0; k < 5; ++k) {
        Transaction spend;
        spend.txid = make_txid(3 + k);
        spend.time = day(6 + k);
        spend.inputs.push_back({split.txid, k});
        spend.outputs.push_back({two, std::string("shop") + std::to_string(k)});
        res.truth.spends.push_back({spend.txid, 0, static_cast<double>(k + 1), false});
        res.txs.push_back(spend);
    }
    return res;
}

SynthResult dormant_burst_scenario(std::uint64_t seed) {
    Rng rng(seed);
    SynthResult res;
    const int days = 500;
    const Amount one = Amount::from_btc_whole(1);
    std::uint64_t next_id = 1;

    auto emit_pair = [&](double created_days, double spent_days, std::size_t i) {
        const Timestamp created = std::llround(created_days * kSecondsPerDay);
        const Timestamp spent = std::llround(spent_days * kSecondsPerDay);
        Transaction mint;
        mint.txid = make_txid(next_id++);
        mint.time = created;
        mint.coinbase = true;
        mint.outputs.push_back({one, "m" + std::to_string(i)});
        Transaction spend;
        spend.txid = make_txid(next_id++);
        spend.time = std::max(spent, created);
        spend.inputs.push_back({mint.txid, 0});
        spend.outputs.push_back({one, "r" + std::to_string(i)});
        res.truth.spends.push_back(
            {spend.txid, 0, static_cast<double>(spend.time - created) / kSecondsPerDay, false});
        res.txs.push_back(std::move(mint));
        res.txs.push_back(std::move(spend));
    };

    // steady short-hold traffic: ~100 x 1 BTC per day held 2 days
    std::size_t i = 0;
    for (double t = rng.exponential(0.01); t + 2.0 < days; t += rng.exponential(0.01))
        emit_pair(t, t + 2.0, i++);
    // long-dormant coins minted at the start, all spent late in the horizon
    for (int k = 0; k < 20000; ++k)
        emit_pair(10.0 * rng.uniform(), 430.0 + 60.0 * rng.uniform(), i++);

    std::stable_sort(res.txs.begin(), res.txs.end(),
                     [](const Transaction& a, const Transaction& b) { return a.time < b.time; });
    return res;
}

SynthResult scenario(const std::string& name, std::uint64_t seed) {
    if (name == "jill") return jill_scenario();
    if (name == "dormant-burst") return dormant_burst_scenario(seed);
    throw InvalidConfig("unknown scenario: " + name);
}

void write_truth_csv(std::ostream& out, const GroundTruth& truth) {
    out << "txid,input_index,true_age_days,is_change\n";
    char buf[40];
    for (const SpendTruth& s : truth.spends) {
        std::snprintf(buf, sizeof buf, "%.12g", s.true_age_days);
        out << s.txid << ',' << s.input_index << ',' << buf << ',' << (s.has_change ? 1 : 0)
            << '\n';
    }
}

GenConfig parse_gen_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidConfig(std::string("config JSON: ") + e.what());
    }
    GenConfig c;
    try {
        c.seed = j.value("seed", std::uint64_t{0});
        c.days = j.at("days").get<int>();
        if (j.contains("arrival")) {
            const auto& a = j["arrival"];
            const std::string kind = a.at("kind").get<std::string>();
            if (kind == "constant") {
                c.arrival.kind = ArrivalSpec::Kind::constant;
                c.arrival.rate = a.at("rate").get<double>();
            } else if (kind == "poisson") {
                c.arrival.kind = ArrivalSpec::Kind::poisson;
                c.arrival.rate = a.at("rate").get<double>();
            } else if (kind == "ramp") {
                c.arrival.kind = ArrivalSpec::Kind::ramp;
                c.arrival.start = a.at("start").get<double>();
                c.arrival.end = a.at("end").get<double>();
            } else {
                throw InvalidConfig("unknown arrival kind: " + kind);
            }
        }
        if (j.contains("hold")) {
            const auto& h = j["hold"];
            const std::string kind = h.at("kind").get<std::string>();
            if (kind == "fixed") {
                c.hold.kind = HoldSpec::Kind::fixed;
                c.hold.days = h.at("days").get<double>();
            } else if (kind == "exponential") {
                c.hold.kind = HoldSpec::Kind::exponential;
                c.hold.days = h.at("mean").get<double>();
            } else if (kind == "mixture") {
                c.hold.kind = HoldSpec::Kind::mixture;
                for (const auto& comp : h.at("components")) {
                    HoldComponent hc;
                    const std::string ck = comp.at("kind").get<std::string>();
                    if (ck == "fixed") {
                        hc.kind = HoldComponent::Kind::fixed;
                        hc.days = comp.at("days").get<double>();
                    } else if (ck == "exponential") {
                        hc.kind = HoldComponent::Kind::exponential;
                        hc.days = comp.at("mean").get<double>();
                    } else {
                        throw InvalidConfig("unknown hold component kind: " + ck);
                    }
                    c.hold.mixture.emplace_back(comp.at("weight").get<double>(), hc);
                }
            } else {
                throw InvalidConfig("unknown hold kind: " + kind);
            }
        }
        if (j.contains("amount")) {
            const auto& a = j["amount"];
            const std::string kind = a.at("kind").get<std::string>();
            if (kind == "fixed") {
                c.amount.kind = AmountSpec::Kind::fixed;
                c.amount.sats = a.at("sats").get<std::int64_t>();
            } else if (kind == "lognormal") {
                c.amount.kind = AmountSpec::Kind::lognormal;
                c.amount.median_sats = a.at("median_sats").get<double>();
                c.amount.sigma = a.at("sigma").get<double>();
            } else {
                throw InvalidConfig("unknown amount kind: " + kind);
            }
        }
        c.change_fraction = j.value("change_fraction", 0.0);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidConfig(std::string("config JSON: ") + e.what());
    }
    c.validate();
    return c;
}

std::uint64_t stream_hash(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace dd
