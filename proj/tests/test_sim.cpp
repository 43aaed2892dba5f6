#include <doctest.h>

#include <cstdlib>

#include "msgpass/errors.hpp"
#include "msgpass/protocols.hpp"
#include "msgpass/rng.hpp"
#include "msgpass/sim.hpp"

using namespace msgpass;

namespace {

SetFamilyInstance small_sets() {
  SetFamilyInstance inst;
  inst.k = 3;
  inst.n = 8;
  inst.sets = {{1, 2}, {2, 3}, {}};
  return inst;
}

// one fixed-size message per remote site, then an echo back from site 0
class PingSite : public SiteProgram {
 public:
  void on_round(SiteCtx& ctx) override {
    if (ctx.round() == 0 && ctx.id() != 0) {
      ctx.send(0, Payload::uint_of(static_cast<std::uint64_t>(ctx.id()), 15));
    } else if (ctx.round() == 1 && ctx.id() == 0) {
      std::uint64_t sum = 0;
      for (const Message& m : ctx.inbox().all()) sum += m.payload.value();
      for (int i = 1; i < ctx.site_count(); ++i) ctx.send(i, Payload::uint_of(sum, 1023));
      ctx.report(CountAnswer{sum});
    }
  }
};

template <typename SiteT>
class SimpleProtocol : public Protocol {
 public:
  explicit SimpleProtocol(std::string name) : name_(std::move(name)) {}
  std::string name() const override { return name_; }
  void check_instance(const Instance&) const override {}
  std::vector<std::unique_ptr<SiteProgram>> make_sites(const Instance& inst) const override {
    std::vector<std::unique_ptr<SiteProgram>> sites;
    for (int i = 0; i < instance_site_count(inst); ++i) sites.push_back(std::make_unique<SiteT>());
    return sites;
  }

 private:
  std::string name_;
};

class SelfSendSite : public SiteProgram {
 public:
  void on_round(SiteCtx& ctx) override {
    if (ctx.id() == 2) ctx.send(2, Payload::uint_of(0, 1));
    ctx.report(CountAnswer{0});
  }
};

class BadTargetSite : public SiteProgram {
 public:
  void on_round(SiteCtx& ctx) override { ctx.send(ctx.site_count(), Payload::uint_of(0, 1)); }
};

class SilentSite : public SiteProgram {
 public:
  void on_round(SiteCtx&) override {}
};

// site 2 asserts that messages between 0 and 1 never reach its inbox
class ProbeSite : public SiteProgram {
 public:
  void on_round(SiteCtx& ctx) override {
    if (ctx.id() == 0 && ctx.round() == 0) ctx.send(1, Payload::uint_of(9, 15));
    if (ctx.id() == 2) {
      CHECK(ctx.inbox().all().empty());
      CHECK(ctx.inbox().from(0) == nullptr);
    }
    if (ctx.id() == 1 && ctx.round() == 1) {
      CHECK(ctx.inbox().require_from(0).value() == 9);
      CHECK_THROWS_AS(ctx.inbox().require_from(2), ProtocolLogicError);
      ctx.report(BoolAnswer{true});
    }
  }
};

}  // namespace

TEST_CASE("send accounting per ordered pair") {
  SimpleProtocol<PingSite> proto("ping");
  const RunResult r = run_protocol(proto, Instance(small_sets()), 7);
  // sites 1 and 2 send 4-bit uints to 0; site 0 replies with 10-bit uints
  CHECK(r.ledger.pair_bits[1][0] == 4);
  CHECK(r.ledger.pair_bits[2][0] == 4);
  CHECK(r.ledger.pair_bits[0][1] == 10);
  CHECK(r.ledger.pair_messages[1][0] == 1);
  CHECK(r.ledger.total_bits == 4 + 4 + 10 + 10);
  CHECK(r.ledger.total_messages == 4);
  CHECK(std::get<CountAnswer>(r.answer).value == 3);
}

TEST_CASE("determinism: identical runs produce identical results") {
  SimpleProtocol<PingSite> proto("ping");
  const RunResult a = run_protocol(proto, Instance(small_sets()), 42);
  const RunResult b = run_protocol(proto, Instance(small_sets()), 42);
  CHECK(a.ledger == b.ledger);
  CHECK(answers_equal(a.answer, b.answer));
  REQUIRE(a.transcript.entries.size() == b.transcript.entries.size());
  for (std::size_t i = 0; i < a.transcript.entries.size(); ++i) {
    CHECK(a.transcript.entries[i].round == b.transcript.entries[i].round);
    CHECK(a.transcript.entries[i].src == b.transcript.entries[i].src);
    CHECK(a.transcript.entries[i].dst == b.transcript.entries[i].dst);
    CHECK(a.transcript.entries[i].payload.bit_length() ==
          b.transcript.entries[i].payload.bit_length());
  }
}

TEST_CASE("ledger equals the transcript replay") {
  SimpleProtocol<PingSite> proto("ping");
  const RunResult r = run_protocol(proto, Instance(small_sets()), 3);
  CHECK(r.transcript.replay_ledger(3) == r.ledger);

  const RunResult f = f0_baseline(small_sets(), 11);
  CHECK(f.transcript.replay_ledger(3) == f.ledger);
}

TEST_CASE("self-send and invalid targets are usage errors") {
  SimpleProtocol<SelfSendSite> self_proto("selfsend");
  CHECK_THROWS_AS(run_protocol(self_proto, Instance(small_sets()), 1), UsageError);
  SimpleProtocol<BadTargetSite> bad_proto("badtarget");
  CHECK_THROWS_AS(run_protocol(bad_proto, Instance(small_sets()), 1), UsageError);
}

TEST_CASE("a stalled protocol hits the round limit") {
  SimpleProtocol<SilentSite> proto("silent");
  RunOptions opts;
  opts.round_limit = 5;
  CHECK_THROWS_AS(run_protocol(proto, Instance(small_sets()), 1, opts), DivergenceError);
}

TEST_CASE("MSGPASS_ROUND_LIMIT overrides the kernel default") {
  SimpleProtocol<PingSite> proto("ping");
  setenv("MSGPASS_ROUND_LIMIT", "1", 1);
  CHECK_THROWS_AS(run_protocol(proto, Instance(small_sets()), 1), DivergenceError);
  unsetenv("MSGPASS_ROUND_LIMIT");
  CHECK_NOTHROW(run_protocol(proto, Instance(small_sets()), 1));
}

TEST_CASE("coordinator mode doubles bits and messages exactly") {
  SimpleProtocol<PingSite> proto("ping");
  const RunResult direct = run_protocol(proto, Instance(small_sets()), 5);
  RunOptions opts;
  opts.coordinator_mode = true;
  const RunResult routed = run_protocol(proto, Instance(small_sets()), 5, opts);
  CHECK(routed.ledger.total_bits == 2 * direct.ledger.total_bits);
  CHECK(routed.ledger.total_messages == 2 * direct.ledger.total_messages);
  CHECK(answers_equal(routed.answer, direct.answer));
  // all traffic flows through index k
  const int k = 3;
  std::uint64_t through = 0;
  for (int i = 0; i <= k; ++i) through += routed.ledger.pair_bits[i][k];
  CHECK(through == direct.ledger.total_bits);
}

TEST_CASE("privacy: a site sees only payloads addressed to it") {
  SimpleProtocol<ProbeSite> proto("probe");
  const RunResult r = run_protocol(proto, Instance(small_sets()), 1);
  CHECK(std::get<BoolAnswer>(r.answer).value);
}

TEST_CASE("per-(site,round) random streams are stable under site count changes") {
  SplitRng root(99);
  const std::uint64_t a = root.split(1, 0).next_u64();
  const std::uint64_t b = root.split(1, 0).next_u64();
  CHECK(a == b);
  CHECK(root.split(1, 0).next_u64() != root.split(2, 0).next_u64());
  CHECK(root.split(1, 0).next_u64() != root.split(1, 1).next_u64());
}

TEST_CASE("transcript export format") {
  SimpleProtocol<PingSite> proto("ping");
  const RunResult r = run_protocol(proto, Instance(small_sets()), 3);
  const std::string lines = r.transcript.to_lines();
  CHECK(lines.find("0,1,0,uint,4") != std::string::npos);
  CHECK(lines.find("1,0,1,uint,10") != std::string::npos);
}
