#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "msgpass/payload.hpp"

namespace msgpass {

// Exact per-pair communication accounting for one protocol run. Index k
// (one past the last site) is the coordinator; its row and column stay zero
// unless the run was executed in coordinator mode.
struct CostLedger {
  int site_count = 0;
  std::vector<std::vector<std::uint64_t>> pair_bits;
  std::vector<std::vector<std::uint64_t>> pair_messages;
  std::uint64_t total_bits = 0;
  std::uint64_t total_messages = 0;

  CostLedger() = default;
  explicit CostLedger(int k)
      : site_count(k),
        pair_bits(k + 1, std::vector<std::uint64_t>(k + 1, 0)),
        pair_messages(k + 1, std::vector<std::uint64_t>(k + 1, 0)) {}

  void record(int src, int dst, std::uint64_t bits) {
    pair_bits[src][dst] += bits;
    pair_messages[src][dst] += 1;
    total_bits += bits;
    total_messages += 1;
  }

  bool operator==(const CostLedger&) const = default;

  nlohmann::json to_json() const;
};

struct TranscriptEntry {
  int round;
  int src;
  int dst;
  Payload payload;
};

struct Transcript {
  std::vector<TranscriptEntry> entries;

  // Re-derives the ledger purely from the recorded entries.
  CostLedger replay_ledger(int site_count) const;

  // Line-delimited export: round,src,dst,kind,bits
  std::string to_lines() const;
};

}  // namespace msgpass
