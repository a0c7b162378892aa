#include "dd/ledger.hpp"

#include <algorithm>

namespace dd {

void mark_change(Transaction& tx, const std::unordered_set<std::string>& known_senders) {
    if (tx.coinbase) return;
    for (auto& out : tx.outputs)
        if (known_senders.contains(out.address)) out.change = true;
}

SpendRecord apply_transaction(UtxoSet& state, Transaction& tx, const ReplayOptions& opts) {
    if (state.txid_seen(tx.txid))
        throw ReplayError(ReplayError::Kind::duplicate_txid, "duplicate txid " + tx.txid);

    SpendRecord rec;
    rec.txid = tx.txid;
    rec.time = tx.time;

    if (!tx.coinbase) {
        std::unordered_set<std::string> senders;
        rec.inputs.reserve(tx.inputs.size());
        for (const OutPoint& op : tx.inputs) {
            const Utxo* u = state.find(op);
            if (!u)
                throw ReplayError(ReplayError::Kind::unknown_input,
                                  "unknown input " + op.txid + ":" + std::to_string(op.vout));
            if (u->created_at > tx.time)
                throw ReplayError(ReplayError::Kind::time_travel,
                                  "input " + op.txid + ":" + std::to_string(op.vout) +
                                      " created after spend time");
            rec.volume_destroyed += u->amount;
            rec.coin_days += u->amount.btc() * age_days(u->created_at, tx.time, opts.mode);
            rec.inputs.push_back({u->amount, u->created_at, tx.time});
            if (opts.annotate_change) senders.insert(u->address);
        }
        Amount out_total;
        for (const auto& out : tx.outputs) out_total += out.amount;
        if (out_total > rec.volume_destroyed)
            throw ReplayError(ReplayError::Kind::negative_fee,
                              "tx " + tx.txid + " outputs exceed inputs");
        for (const OutPoint& op : tx.inputs) state.erase(op);
        if (opts.annotate_change) mark_change(tx, senders);
    }

    state.note_txid(tx.txid);
    for (std::uint32_t i = 0; i < tx.outputs.size(); ++i) {
        const TxOutput& out = tx.outputs[i];
        if (out.amount.sats <= 0) continue;
        if (out.change) rec.change_value += out.amount;
        state.insert(Utxo{OutPoint{tx.txid, i}, out.amount, tx.time, out.address});
    }
    return rec;
}

SpendRecord Replayer::apply(Transaction& tx) {
    const std::size_t idx = index_++;
    try {
        if (last_time_ && tx.time < *last_time_)
            throw ReplayError(ReplayError::Kind::out_of_order,
                              "tx " + tx.txid + " breaks time order");
        last_time_ = tx.time;
        return apply_transaction(state_, tx, opts_);
    } catch (ReplayError& e) {
        throw ReplayError(e.kind, std::string(e.what()) + " (tx index " + std::to_string(idx) + ")",
                          idx);
    }
}

ReplayResult replay(std::span<Transaction> txs, const ReplayOptions& opts) {
    Replayer r(opts);
    ReplayResult out;
    out.records.reserve(txs.size());
    for (Transaction& tx : txs) out.records.push_back(r.apply(tx));
    out.final_state = r.take_state();
    return out;
}

std::vector<DestroyedCoin> destroyed_coins(std::span<const SpendRecord> records) {
    std::vector<DestroyedCoin> coins;
    for (const auto& rec : records)
        coins.insert(coins.end(), rec.inputs.begin(), rec.inputs.end());
    return coins;
}

}  // namespace dd
