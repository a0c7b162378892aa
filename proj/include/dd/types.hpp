#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dd/dates.hpp"

namespace dd {

// Exact integer satoshi amount. 1 BTC = 100,000,000 sats.
struct Amount {
    std::int64_t sats = 0;

    static constexpr std::int64_t kSatsPerBtc = 100'000'000;

    static constexpr Amount from_btc_whole(std::int64_t btc) { return {btc * kSatsPerBtc}; }

    constexpr double btc() const noexcept { return static_cast<double>(sats) / kSatsPerBtc; }

    constexpr auto operator<=>(const Amount&) const = default;
    constexpr Amount& operator+=(Amount o) noexcept { sats += o.sats; return *this; }
    constexpr Amount& operator-=(Amount o) noexcept { sats -= o.sats; return *this; }
    friend constexpr Amount operator+(Amount a, Amount b) noexcept { return {a.sats + b.sats}; }
    friend constexpr Amount operator-(Amount a, Amount b) noexcept { return {a.sats - b.sats}; }
};

struct OutPoint {
    std::string txid;  // 32-byte id, lowercase hex
    std::uint32_t vout = 0;

    auto operator<=>(const OutPoint&) const = default;
};

struct OutPointHash {
    std::size_t operator()(const OutPoint& o) const noexcept {
        std::size_t h = std::hash<std::string>{}(o.txid);
        return h ^ (static_cast<std::size_t>(o.vout) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};

struct Utxo {
    OutPoint outpoint;
    Amount amount;
    Timestamp created_at = 0;
    std::string address;
};

struct TxOutput {
    Amount amount;
    std::string address;
    bool change = false;  // set by the change heuristic, never by the parser
};

struct Transaction {
    std::string txid;
    Timestamp time = 0;
    bool coinbase = false;
    std::vector<OutPoint> inputs;  // empty iff coinbase
    std::vector<TxOutput> outputs;
};

// One spent input: the coin destroyed, with its full lifetime.
struct DestroyedCoin {
    Amount amount;
    Timestamp created_at = 0;
    Timestamp spent_at = 0;

    double age_seconds() const noexcept { return static_cast<double>(spent_at - created_at); }
};

enum class AgeMode { fractional, integral };

inline double age_days(Timestamp created, Timestamp spent, AgeMode mode) noexcept {
    const std::int64_t dt = spent - created;
    if (mode == AgeMode::integral) return static_cast<double>(dt / kSecondsPerDay);
    return static_cast<double>(dt) / kSecondsPerDay;
}

struct SpendRecord {
    std::string txid;
    Timestamp time = 0;
    Amount volume_destroyed;        // sum of input amounts (0 for coinbase)
    Amount change_value;            // sum of outputs flagged as change
    double coin_days = 0.0;         // BTC * days over the inputs
    std::vector<DestroyedCoin> inputs;
};

}  // namespace dd
