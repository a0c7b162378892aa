#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dd/types.hpp"

namespace dd {

struct ReplayError : std::runtime_error {
    enum class Kind {
        unknown_input,   // outpoint absent: double spend or missing history
        time_travel,     // input created after the spending tx's time
        duplicate_txid,
        negative_fee,
        out_of_order,    // stream not sorted by time
    };

    ReplayError(Kind k, std::string msg, std::size_t tx_index = kNoIndex)
        : std::runtime_error(std::move(msg)), kind(k), tx_index(tx_index) {}

    static constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);
    Kind kind;
    std::size_t tx_index;
};

// The unspent-output set plus the set of txids already seen.
class UtxoSet {
public:
    bool contains(const OutPoint& op) const { return utxos_.contains(op); }
    const Utxo* find(const OutPoint& op) const {
        auto it = utxos_.find(op);
        return it == utxos_.end() ? nullptr : &it->second;
    }
    bool txid_seen(const std::string& txid) const { return txids_.contains(txid); }

    std::size_t size() const { return utxos_.size(); }
    Amount total() const {
        Amount t;
        for (const auto& [op, u] : utxos_) t += u.amount;
        return t;
    }

    void insert(Utxo u) {
        txids_.insert(u.outpoint.txid);
        utxos_.emplace(u.outpoint, std::move(u));
    }
    void erase(const OutPoint& op) { utxos_.erase(op); }
    void note_txid(const std::string& txid) { txids_.insert(txid); }

    auto begin() const { return utxos_.begin(); }
    auto end() const { return utxos_.end(); }

private:
    std::unordered_map<OutPoint, Utxo, OutPointHash> utxos_;
    std::unordered_set<std::string> txids_;
};

// Marks as change every output whose address is in known_senders.
// Coinbase transactions are never flagged. Pure annotation.
void mark_change(Transaction& tx, const std::unordered_set<std::string>& known_senders);

struct ReplayOptions {
    AgeMode mode = AgeMode::fractional;
    bool annotate_change = false;  // address-equality change heuristic
};

// Applies tx to state: removes spent inputs, inserts new outputs, and
// returns the spend record (volume destroyed and coin-days).
SpendRecord apply_transaction(UtxoSet& state, Transaction& tx, const ReplayOptions& opts);

inline SpendRecord apply_transaction(UtxoSet& state, Transaction& tx, AgeMode mode) {
    return apply_transaction(state, tx, ReplayOptions{mode, false});
}

// Sequential single-writer replay. Transactions must arrive in
// non-decreasing time order; ties keep submission order.
class Replayer {
public:
    explicit Replayer(ReplayOptions opts = {}) : opts_(opts) {}

    SpendRecord apply(Transaction& tx);

    const UtxoSet& state() const { return state_; }
    UtxoSet take_state() { return std::move(state_); }

private:
    ReplayOptions opts_;
    UtxoSet state_;
    std::optional<Timestamp> last_time_;
    std::size_t index_ = 0;
};

struct ReplayResult {
    std::vector<SpendRecord> records;
    UtxoSet final_state;
};

ReplayResult replay(std::span<Transaction> txs, const ReplayOptions& opts = {});

inline ReplayResult replay(std::vector<Transaction>& txs, AgeMode mode) {
    return replay(std::span<Transaction>(txs), ReplayOptions{mode, false});
}

// Flattens spend records to their destroyed-coin lifetimes.
std::vector<DestroyedCoin> destroyed_coins(std::span<const SpendRecord> records);

}  // namespace dd
