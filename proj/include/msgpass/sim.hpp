#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "msgpass/answer.hpp"
#include "msgpass/instances.hpp"
#include "msgpass/ledger.hpp"
#include "msgpass/payload.hpp"
#include "msgpass/rng.hpp"

namespace msgpass {

// Sites are numbered 0..k-1; index k is reserved for the coordinator when
// coordinator mode is active. (Site 0 plays the distinguished first site.)
using SiteId = int;

struct Message {
  SiteId src;
  Payload payload;
};

// The messages delivered to one site in the current round, ordered by
// (sender, emission order).
class Inbox {
 public:
  explicit Inbox(const std::vector<Message>* msgs) : msgs_(msgs) {}

  const std::vector<Message>& all() const { return *msgs_; }

  const Payload* from(SiteId src) const {
    for (const Message& m : *msgs_) {
      if (m.src == src) return &m.payload;
    }
    return nullptr;
  }

  // Throws ProtocolLogicError when the expected message is missing.
  const Payload& require_from(SiteId src) const;

  std::vector<const Payload*> all_from(SiteId src) const {
    std::vector<const Payload*> out;
    for (const Message& m : *msgs_) {
      if (m.src == src) out.push_back(&m.payload);
    }
    return out;
  }

 private:
  const std::vector<Message>* msgs_;
};

namespace detail {
class Runtime;
}

// The per-round view a site program gets: its identity, its inbox, its own
// random stream, and the ability to send and to report the final answer.
// Nothing else about the run is reachable from here.
class SiteCtx {
 public:
  SiteId id() const { return id_; }
  int site_count() const;
  int round() const { return round_; }
  const Inbox& inbox() const { return inbox_; }
  SplitRng& rng();
  void send(SiteId dst, Payload p);
  void report(Answer answer);

  // constructible only by the kernel: detail::Runtime is not reachable
  // from protocol code
  SiteCtx(detail::Runtime& rt, SiteId id, int round, const std::vector<Message>* inbox)
      : rt_(rt), id_(id), round_(round), inbox_(inbox) {}

 private:
  detail::Runtime& rt_;
  SiteId id_;
  int round_;
  Inbox inbox_;
  std::unique_ptr<SplitRng> rng_;
};

class SiteProgram {
 public:
  virtual ~SiteProgram() = default;
  virtual void on_round(SiteCtx& ctx) = 0;
};

// A protocol is a recipe for per-site programs. make_sites must hand each
// program only that site's share of the instance.
class Protocol {
 public:
  virtual ~Protocol() = default;
  virtual std::string name() const = 0;
  // Throws UsageError when the instance shape does not match.
  virtual void check_instance(const Instance& inst) const = 0;
  virtual std::vector<std::unique_ptr<SiteProgram>> make_sites(const Instance& inst) const = 0;
  // Default kernel limit is 10x the instance dimension; protocols that run
  // many sequential sub-phases may raise it.
  virtual long round_limit_hint(const Instance& inst) const;
};

struct RunOptions {
  bool coordinator_mode = false;
  bool record_transcript = true;
  long round_limit = 0;  // 0 = MSGPASS_ROUND_LIMIT env if set, else protocol hint
};

struct RunResult {
  Answer answer;
  CostLedger ledger;
  Transcript transcript;
  int rounds_used = 0;
};

// Executes the protocol under the synchronous round scheduler. The result is
// a pure function of (protocol, instance, seed, options).
RunResult run_protocol(const Protocol& proto, const Instance& inst, std::uint64_t seed,
                       const RunOptions& opts = {});

}  // namespace msgpass
