#include "msgpass/ledger.hpp"

#include <sstream>

namespace msgpass {

nlohmann::json CostLedger::to_json() const {
  return nlohmann::json{
      {"k", site_count},
      {"total_bits", total_bits},
      {"total_messages", total_messages},
      {"pair_bits", pair_bits},
  };
}

CostLedger Transcript::replay_ledger(int site_count) const {
  CostLedger ledger(site_count);
  for (const TranscriptEntry& e : entries) {
    ledger.record(e.src, e.dst, e.payload.bit_length());
  }
  return ledger;
}

std::string Transcript::to_lines() const {
  std::ostringstream out;
  for (const TranscriptEntry& e : entries) {
    out << e.round << ',' << e.src << ',' << e.dst << ',' << to_string(e.payload.kind()) << ','
        << e.payload.bit_length() << '\n';
  }
  return out.str();
}

}  // namespace msgpass
