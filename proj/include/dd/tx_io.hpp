#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "dd/types.hpp"

namespace dd {

struct ParseError : std::runtime_error {
    ParseError(std::string msg, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + std::move(msg)),
          line(line) {}
    std::size_t line;
};

// Reads the JSON Lines transaction format, one object per line:
//   {"txid": hex, "time": unix seconds, "coinbase": bool,
//    "inputs": [{"txid": hex, "vout": int}], "outputs": [{"sats": int, "addr": string}]}
// Lines must be time-sorted; an out-of-order line is a ParseError.
std::vector<Transaction> read_tx_jsonl(std::istream& in);

// Writes the same format, one compact object per line, fixed key order.
void write_tx_jsonl(std::ostream& out, std::span<const Transaction> txs);

}  // namespace dd
