#include "msgpass/sim.hpp"

#include <cstdlib>
#include <sstream>

#include "msgpass/errors.hpp"

namespace msgpass {

const Payload& Inbox::require_from(SiteId src) const {
  const Payload* p = from(src);
  if (!p) {
    std::ostringstream os;
    os << "required inbox slot from site " << src << " is empty";
    throw ProtocolLogicError(os.str());
  }
  return *p;
}

long Protocol::round_limit_hint(const Instance& inst) const {
  return 10 * static_cast<long>(instance_dimension(inst));
}

namespace detail {

class Runtime {
 public:
  Runtime(int k, std::uint64_t seed, const RunOptions& opts)
      : k_(k), opts_(opts), root_(seed), ledger_(k), pending_(k) {}

  int site_count() const { return k_; }

  void send(SiteId src, SiteId dst, Payload p) {
    if (dst == src) throw UsageError("self-send is not allowed");
    if (dst < 0 || dst >= k_) {
      std::ostringstream os;
      os << "send target " << dst << " is not a valid site id (k=" << k_ << ")";
      throw UsageError(os.str());
    }
    const std::uint64_t bits = p.bit_length();
    if (opts_.coordinator_mode) {
      // re-route through the coordinator: two physical hops per logical message
      ledger_.record(src, k_, bits);
      ledger_.record(k_, dst, bits);
      if (opts_.record_transcript) {
        transcript_.entries.push_back({round_, src, k_, p});
        transcript_.entries.push_back({round_, k_, dst, p});
      }
    } else {
      ledger_.record(src, dst, bits);
      if (opts_.record_transcript) {
        transcript_.entries.push_back({round_, src, dst, p});
      }
    }
    pending_[dst].push_back(Message{src, std::move(p)});
  }

  void report(Answer answer) {
    if (!answered_) {
      answered_ = true;
      answer_ = std::move(answer);
    }
  }

  SplitRng site_round_rng(SiteId id) const {
    return root_.split(static_cast<std::uint64_t>(id), static_cast<std::uint64_t>(round_));
  }

  int k_;
  const RunOptions& opts_;
  SplitRng root_;
  CostLedger ledger_;
  Transcript transcript_;
  std::vector<std::vector<Message>> pending_;
  int round_ = 0;
  bool answered_ = false;
  Answer answer_;
};

}  // namespace detail

int SiteCtx::site_count() const { return rt_.site_count(); }

SplitRng& SiteCtx::rng() {
  if (!rng_) rng_ = std::make_unique<SplitRng>(rt_.site_round_rng(id_));
  return *rng_;
}

void SiteCtx::send(SiteId dst, Payload p) { rt_.send(id_, dst, std::move(p)); }

void SiteCtx::report(Answer answer) { rt_.report(std::move(answer)); }

namespace {

long resolve_round_limit(const Protocol& proto, const Instance& inst, const RunOptions& opts) {
  if (opts.round_limit > 0) return opts.round_limit;
  if (const char* env = std::getenv("MSGPASS_ROUND_LIMIT")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return proto.round_limit_hint(inst);
}

}  // namespace

RunResult run_protocol(const Protocol& proto, const Instance& inst, std::uint64_t seed,
                       const RunOptions& opts) {
  proto.check_instance(inst);
  const int k = instance_site_count(inst);
  const long limit = resolve_round_limit(proto, inst, opts);

  auto programs = proto.make_sites(inst);
  if (static_cast<int>(programs.size()) != k) {
    throw ProtocolLogicError(proto.name() + ": make_sites produced wrong site count");
  }

  detail::Runtime rt(k, seed, opts);
  std::vector<std::vector<Message>> inboxes(k);

  int rounds_used = 0;
  for (int round = 0;; ++round) {
    if (round >= limit) {
      std::ostringstream os;
      os << proto.name() << ": exceeded round limit " << limit;
      throw DivergenceError(os.str());
    }
    rt.round_ = round;
    for (int i = 0; i < k; ++i) {
      SiteCtx ctx(rt, i, round, &inboxes[i]);
      programs[i]->on_round(ctx);
    }
    if (rt.answered_) {
      rounds_used = round + 1;
      break;
    }
    for (int i = 0; i < k; ++i) {
      inboxes[i] = std::move(rt.pending_[i]);
      rt.pending_[i].clear();
    }
  }

  return RunResult{std::move(rt.answer_), std::move(rt.ledger_), std::move(rt.transcript_),
                   rounds_used};
}

}  // namespace msgpass
