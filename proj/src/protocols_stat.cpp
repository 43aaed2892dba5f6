#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "msgpass/protocols.hpp"
#include "proto_util.hpp"

namespace msgpass {

namespace {

using detail::element_list_1based;
using detail::read_element_list_1based;
using detail::TypedProtocol;

// --- f0_baseline -------------------------------------------------------------

class F0BaselineSite : public SiteProgram {
 public:
  F0BaselineSite(int k, std::uint64_t n, std::vector<std::uint32_t> local)
      : k_(k), n_(n), local_(std::move(local)) {}

  void on_round(SiteCtx& ctx) override {
    if (ctx.round() == 0 && ctx.id() != 0) {
      ctx.send(0, element_list_1based(local_, n_, n_));
      return;
    }
    if (ctx.id() == 0 && ctx.round() == (k_ == 1 ? 0 : 1)) {
      std::set<std::uint32_t> all(local_.begin(), local_.end());
      for (const Message& m : ctx.inbox().all()) {
        for (std::uint64_t id : m.payload.ids()) all.insert(static_cast<std::uint32_t>(id) + 1);
      }
      ctx.report(CountAnswer{all.size()});
    }
  }

 private:
  int k_;
  std::uint64_t n_;
  std::vector<std::uint32_t> local_;
};

class F0BaselineProtocol : public TypedProtocol<SetFamilyInstance> {
 public:
  std::string name() const override { return "f0_baseline"; }

 protected:
  std::vector<std::unique_ptr<SiteProgram>> make_typed(const SetFamilyInstance& inst) const override {
    std::vector<std::unique_ptr<SiteProgram>> sites;
    for (int i = 0; i < inst.k; ++i) {
      sites.push_back(std::make_unique<F0BaselineSite>(inst.k, inst.n, inst.sets[i]));
    }
    return sites;
  }
};

// --- linfty_counts -----------------------------------------------------------

class LinftySite : public SiteProgram {
 public:
  LinftySite(int k, std::uint64_t n, std::vector<std::uint32_t> local)
      : k_(k), n_(n), local_(std::move(local)) {}

  void on_round(SiteCtx& ctx) override {
    if (ctx.round() == 0 && ctx.id() != 0) {
      ctx.send(0, element_list_1based(local_, n_, n_));
      return;
    }
    if (ctx.id() == 0 && ctx.round() == (k_ == 1 ? 0 : 1)) {
      std::map<std::uint32_t, std::uint32_t> freq;
      for (std::uint32_t e : local_) ++freq[e];
      for (const Message& m : ctx.inbox().all()) {
        for (std::uint64_t id : m.payload.ids()) ++freq[static_cast<std::uint32_t>(id) + 1];
      }
      if (freq.empty()) throw EmptyInputError("linfty_counts: all sets are empty");
      std::uint32_t best_elt = 0, best_freq = 0;
      for (const auto& [elt, f] : freq) {
        if (f > best_freq) {  // map iterates ascending, so ties keep the smallest element
          best_elt = elt;
          best_freq = f;
        }
      }
      ctx.report(ArgMaxAnswer{best_elt, best_freq});
    }
  }

 private:
  int k_;
  std::uint64_t n_;
  std::vector<std::uint32_t> local_;
};

class LinftyProtocol : public TypedProtocol<SetFamilyInstance> {
 public:
  std::string name() const override { return "linfty_counts"; }

 protected:
  std::vector<std::unique_ptr<SiteProgram>> make_typed(const SetFamilyInstance& inst) const override {
    std::vector<std::unique_ptr<SiteProgram>> sites;
    for (int i = 0; i < inst.k; ++i) {
      sites.push_back(std::make_unique<LinftySite>(inst.k, inst.n, inst.sets[i]));
    }
    return sites;
  }
};

// --- f0_hashed ---------------------------------------------------------------

std::uint64_t cube_clamped(std::uint64_t x) {
  const unsigned __int128 c = static_cast<unsigned __int128>(x) * x * x;
  const unsigned __int128 cap = static_cast<unsigned __int128>(1) << 62;
  return static_cast<std::uint64_t>(c > cap ? cap : c);
}

std::uint64_t hash_to_universe(std::uint64_t hash_seed, std::uint64_t x, std::uint64_t universe) {
  const std::uint64_t h = mix64(hash_seed ^ mix64(x));
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(h) * universe) >> 64);
}

std::vector<std::uint64_t> hashed_distinct(const std::vector<std::uint32_t>& elems,
                                           std::uint64_t hash_seed, std::uint64_t universe) {
  std::vector<std::uint64_t> hashed;
  hashed.reserve(elems.size());
  for (std::uint32_t e : elems) hashed.push_back(hash_to_universe(hash_seed, e, universe));
  std::sort(hashed.begin(), hashed.end());
  hashed.erase(std::unique(hashed.begin(), hashed.end()), hashed.end());
  return hashed;
}

class F0HashedSite : public SiteProgram {
 public:
  F0HashedSite(int k, std::uint64_t n, std::vector<std::uint32_t> local)
      : k_(k), n_(n), local_(std::move(local)) {}

  void on_round(SiteCtx& ctx) override {
    const int id = ctx.id();
    if (k_ == 1) {
      if (ctx.round() == 0) ctx.report(CountAnswer{local_.size()});  // input is a set
      return;
    }
    if (id != 0) {
      if (ctx.round() == 0) {
        ctx.send(0, Payload::uint_of(local_.size(), n_));
      } else if (ctx.round() == 2) {
        const Payload& p = ctx.inbox().require_from(0);
        const std::uint64_t hash_seed = p.parts()[0].value();
        const std::uint64_t f0_over = p.parts()[1].value();
        const std::uint64_t universe = cube_clamped(f0_over);
        ctx.send(0, Payload::element_list(hashed_distinct(local_, hash_seed, universe), universe,
                                          n_));
      }
      return;
    }
    // first site
    if (ctx.round() == 1) {
      f0_over_ = local_.size();
      for (const Message& m : ctx.inbox().all()) f0_over_ += m.payload.value();
      if (f0_over_ == 0) {
        ctx.report(CountAnswer{0});
        return;
      }
      hash_seed_ = ctx.rng().next_u64();
      const std::uint64_t count_max =
          static_cast<std::uint64_t>(k_) * n_;  // F0' <= sum of set sizes <= k*n
      for (int i = 1; i < k_; ++i) {
        ctx.send(i, Payload::composite({Payload::uint_of(hash_seed_, UINT64_MAX),
                                        Payload::uint_of(f0_over_, count_max)}));
      }
    } else if (ctx.round() == 3) {
      const std::uint64_t universe = cube_clamped(f0_over_);
      std::set<std::uint64_t> all;
      for (std::uint64_t h : hashed_distinct(local_, hash_seed_, universe)) all.insert(h);
      for (const Message& m : ctx.inbox().all()) {
        for (std::uint64_t h : m.payload.ids()) all.insert(h);
      }
      ctx.report(CountAnswer{all.size()});
    }
  }

 private:
  int k_;
  std::uint64_t n_;
  std::vector<std::uint32_t> local_;
  std::uint64_t f0_over_ = 0;
  std::uint64_t hash_seed_ = 0;
};

class F0HashedProtocol : public TypedProtocol<SetFamilyInstance> {
 public:
  std::string name() const override { return "f0_hashed"; }

 protected:
  std::vector<std::unique_ptr<SiteProgram>> make_typed(const SetFamilyInstance& inst) const override {
    std::vector<std::unique_ptr<SiteProgram>> sites;
    for (int i = 0; i < inst.k; ++i) {
      sites.push_back(std::make_unique<F0HashedSite>(inst.k, inst.n, inst.sets[i]));
    }
    return sites;
  }
};

}  // namespace

RunResult f0_baseline(const SetFamilyInstance& inst, std::uint64_t seed, const RunOptions& opts) {
  return run_protocol(F0BaselineProtocol{}, Instance(inst), seed, opts);
}

RunResult f0_hashed(const SetFamilyInstance& inst, std::uint64_t seed, const RunOptions& opts) {
  return run_protocol(F0HashedProtocol{}, Instance(inst), seed, opts);
}

RunResult linfty_counts(const SetFamilyInstance& inst, std::uint64_t seed, const RunOptions& opts) {
  return run_protocol(LinftyProtocol{}, Instance(inst), seed, opts);
}

}  // namespace msgpass
