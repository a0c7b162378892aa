#include "dd/tx_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

namespace dd {

namespace {

bool is_hex(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F')))
            return false;
    return true;
}

}  // namespace

std::vector<Transaction> read_tx_jsonl(std::istream& in) {
    std::vector<Transaction> txs;
    std::string line;
    std::size_t lineno = 0;
    Timestamp last_time = 0;
    bool have_last = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(e.what(), lineno);
        }
        try {
            Transaction tx;
            tx.txid = j.at("txid").get<std::string>();
            if (!is_hex(tx.txid)) throw ParseError("txid is not hex", lineno);
            tx.time = j.at("time").get<std::int64_t>();
            tx.coinbase = j.at("coinbase").get<bool>();
            for (const auto& ji : j.at("inputs")) {
                OutPoint op;
                op.txid = ji.at("txid").get<std::string>();
                const std::int64_t vout = ji.at("vout").get<std::int64_t>();
                if (vout < 0) throw ParseError("negative vout", lineno);
                op.vout = static_cast<std::uint32_t>(vout);
                tx.inputs.push_back(std::move(op));
            }
            for (const auto& jo : j.at("outputs")) {
                TxOutput out;
                out.amount.sats = jo.at("sats").get<std::int64_t>();
                if (out.amount.sats < 0) throw ParseError("negative sats", lineno);
                out.address = jo.at("addr").get<std::string>();
                tx.outputs.push_back(std::move(out));
            }
            if (tx.coinbase && !tx.inputs.empty())
                throw ParseError("coinbase with inputs", lineno);
            if (!tx.coinbase && tx.inputs.empty())
                throw ParseError("non-coinbase without inputs", lineno);
            if (have_last && tx.time < last_time)
                throw ParseError("out-of-order timestamp", lineno);
            last_time = tx.time;
            have_last = true;
            txs.push_back(std::move(tx));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return txs;
}

void write_tx_jsonl(std::ostream& out, std::span<const Transaction> txs) {
    for (const Transaction& tx : txs) {
        nlohmann::ordered_json j;
        j["txid"] = tx.txid;
        j["time"] = tx.time;
        j["coinbase"] = tx.coinbase;
        auto& ins = j["inputs"] = nlohmann::ordered_json::array();
        for (const OutPoint& op : tx.inputs)
            ins.push_back({{"txid", op.txid}, {"vout", op.vout}});
        auto& outs = j["outputs"] = nlohmann::ordered_json::array();
        for (const TxOutput& o : tx.outputs)
            outs.push_back({{"sats", o.amount.sats}, {"addr", o.address}});
        out << j.dump() << '\n';
    }
}

}  // namespace dd
