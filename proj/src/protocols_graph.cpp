#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <numeric>
#include <set>

#include "msgpass/protocols.hpp"
#include "proto_util.hpp"

namespace msgpass {

namespace {

using detail::edge_list_payload;
using detail::edges_contain_cycle;
using detail::element_list_1based;
using detail::local_adjacency;
using detail::local_spanning_forest;
using detail::read_edge_list;
using detail::read_element_list_1based;
using detail::TypedProtocol;

std::uint32_t isqrt_u64(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return static_cast<std::uint32_t>(r);
}

// Control tags for coordinator broadcasts. Every broadcast is a Composite
// whose first part is UInt(tag, 7); the 3 tag bits are charged to the ledger.
enum : std::uint64_t {
  kTagBfsNew = 0,       // frontier announcement, fresh BFS
  kTagBfsCont = 1,      // frontier announcement, next layer
  kTagDegCounts = 2,    // request per-vertex local degree counts
  kTagDegFlags = 3,     // request low-degree candidate flags
  kTagNbrLists = 4,     // request neighbour lists for an attached vertex list
  kTagShipIncident = 5  // request edges incident to an attached vertex set
};

Payload tagged(std::uint64_t tag) { return Payload::composite({Payload::uint_of(tag, 7)}); }

Payload tagged(std::uint64_t tag, Payload body) {
  return Payload::composite({Payload::uint_of(tag, 7), std::move(body)});
}

bool is_tagged(const Payload& p) {
  return p.kind() == PayloadKind::Composite && !p.parts().empty() &&
         p.parts()[0].kind() == PayloadKind::UInt;
}

// --- layered BFS, remote side ------------------------------------------------

// Responds to frontier announcements with the site's local candidate edges
// for the next layer; flags odd cycles seen as local same-layer edges.
class BfsResponder {
 public:
  BfsResponder(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>* adj, bool alarms)
      : n_(n), adj_(adj), alarms_(alarms) {}

  void handle_frontier(std::uint64_t tag, const Payload& frontier_list, SiteCtx& ctx) {
    if (tag == kTagBfsNew) {
      layer_.assign(n_ + 1, -1);
      depth_ = 0;
    } else {
      ++depth_;
    }
    const auto frontier = read_element_list_1based(frontier_list);
    for (std::uint32_t u : frontier) layer_[u] = depth_;
    // same-layer local edge = odd cycle witness
    for (std::uint32_t u : frontier) {
      for (std::uint32_t w : (*adj_)[u]) {
        if (layer_[w] == depth_) odd_cycle_ = true;
      }
    }
    std::vector<std::uint32_t> best_parent(n_ + 1, 0);
    std::vector<std::uint32_t> children;
    for (std::uint32_t u : frontier) {
      for (std::uint32_t w : (*adj_)[u]) {
        if (layer_[w] != -1) continue;
        if (best_parent[w] == 0) {
          best_parent[w] = u;
          children.push_back(w);
        }
      }
    }
    if (!children.empty()) {
      std::sort(children.begin(), children.end());
      std::vector<EdgeRec> pairs;
      pairs.reserve(children.size());
      for (std::uint32_t w : children) pairs.push_back(make_edge(best_parent[w], w));
      std::sort(pairs.begin(), pairs.end());
      ctx.send(0, edge_list_payload(pairs, n_, n_ > 0 ? n_ - 1 : 0));
    }
    if (alarms_ && odd_cycle_ && !alarm_sent_) {
      ctx.send(0, Payload::uint_of(1, 1));
      alarm_sent_ = true;
    }
  }

 private:
  std::uint32_t n_;
  const std::vector<std::vector<std::uint32_t>>* adj_;
  bool alarms_;
  std::vector<std::int32_t> layer_;
  int depth_ = 0;
  bool odd_cycle_ = false;
  bool alarm_sent_ = false;
};

// --- layered BFS, coordinator side -------------------------------------------

class BfsDriver {
 public:
  BfsDriver(std::uint32_t n, int k, bool alarms) : n_(n), k_(k), alarms_(alarms) {}

  void attach_local(const std::vector<std::vector<std::uint32_t>>* adj) { adj_ = adj; }

  void begin(std::uint32_t root, SiteCtx& ctx) {
    parent_.assign(n_ + 1, 0);
    layer_.assign(n_ + 1, -1);
    layer_[root] = 0;
    frontier_ = {root};
    depth_ = 0;
    active_ = true;
    broadcast(ctx, /*fresh=*/true);
  }

  bool active() const { return active_; }
  bool is_merge_round(int round) const { return active_ && round == merge_round_; }

  // Merges the replies to the last announcement. Returns true when the BFS
  // has no further layer (the traversal is complete).
  bool on_merge(SiteCtx& ctx) {
    std::vector<std::uint32_t> best_parent(n_ + 1, 0);
    std::vector<std::uint32_t> children;
    auto offer = [&](std::uint32_t parent, std::uint32_t child) {
      if (best_parent[child] == 0) {
        best_parent[child] = parent;
        children.push_back(child);
      } else if (parent < best_parent[child]) {
        best_parent[child] = parent;
      }
    };
    for (const auto& [u, w] : own_pairs_) offer(u, w);
    for (const Message& m : ctx.inbox().all()) {
      if (m.payload.kind() == PayloadKind::UInt) {
        alarm_ = true;
        continue;
      }
      for (const EdgeRec& e : read_edge_list(m.payload)) {
        if (layer_[e.u] == depth_ && layer_[e.v] == -1) {
          offer(e.u, e.v);
        } else if (layer_[e.v] == depth_ && layer_[e.u] == -1) {
          offer(e.v, e.u);
        } else {
          throw ProtocolLogicError("bfs: candidate edge does not touch the frontier");
        }
      }
    }
    if (children.empty()) {
      // odd cycles visible in the coordinator's own subgraph
      if (own_same_layer_edge()) alarm_ = true;
      active_ = false;
      return true;
    }
    std::sort(children.begin(), children.end());
    for (std::uint32_t c : children) {
      parent_[c] = best_parent[c];
      layer_[c] = depth_ + 1;
    }
    frontier_ = std::move(children);
    ++depth_;
    broadcast(ctx, /*fresh=*/false);
    return false;
  }

  const std::vector<std::uint32_t>& parent() const { return parent_; }
  const std::vector<std::int32_t>& layer() const { return layer_; }
  bool alarm() const { return alarm_; }

 private:
  void broadcast(SiteCtx& ctx, bool fresh) {
    const std::uint64_t tag = fresh ? kTagBfsNew : kTagBfsCont;
    for (int i = 1; i < k_; ++i) {
      ctx.send(i, tagged(tag, element_list_1based(frontier_, n_, n_)));
    }
    own_pairs_.clear();
    if (adj_) {
      for (std::uint32_t u : frontier_) {
        for (std::uint32_t w : (*adj_)[u]) {
          if (layer_[w] == -1) own_pairs_.emplace_back(u, w);
        }
      }
    }
    merge_round_ = ctx.round() + 2;
  }

  bool own_same_layer_edge() const {
    if (!adj_) return false;
    for (std::uint32_t u = 1; u <= n_; ++u) {
      if (layer_[u] == -1) continue;
      for (std::uint32_t w : (*adj_)[u]) {
        if (w > u && layer_[w] == layer_[u]) return true;
      }
    }
    return false;
  }

  std::uint32_t n_;
  int k_;
  bool alarms_;
  const std::vector<std::vector<std::uint32_t>>* adj_ = nullptr;
  std::vector<std::uint32_t> parent_;
  std::vector<std::int32_t> layer_;
  std::vector<std::uint32_t> frontier_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> own_pairs_;
  int depth_ = 0;
  int merge_round_ = -1;
  bool active_ = false;
  bool alarm_ = false;
};

// --- degree ------------------------------------------------------------------

class DegreeNodupSite : public SiteProgram {
 public:
  DegreeNodupSite(int k, std::uint32_t n, std::uint32_t v, std::uint32_t local_deg)
      : k_(k), n_(n), v_(v), local_deg_(local_deg) {}

  void on_round(SiteCtx& ctx) override {
    if (ctx.round() == 0 && ctx.id() != 0) {
      ctx.send(0, Payload::uint_of(local_deg_, n_ - 1));
      return;
    }
    if (ctx.id() == 0 && ctx.round() == (k_ == 1 ? 0 : 1)) {
      std::uint64_t total = local_deg_;
      for (const Message& m : ctx.inbox().all()) total += m.payload.value();
      ctx.report(DegreeAnswer{static_cast<std::uint32_t>(total)});
    }
  }

 private:
  int k_;
  std::uint32_t n_, v_, local_deg_;
};

class DegreeNodupProtocol : public TypedProtocol<GraphPartitionInstance> {
 public:
  explicit DegreeNodupProtocol(std::uint32_t v) : v_(v) {}
  std::string name() const override { return "degree_nodup"; }

 protected:
  void check_typed(const GraphPartitionInstance& inst) const override {
    if (inst.allow_duplication) {
      throw UsageError("degree_nodup requires a duplication-free instance");
    }
    if (v_ < 1 || v_ > inst.n) throw UsageError("degree query vertex out of range");
  }
  std::vector<std::unique_ptr<SiteProgram>> make_typed(
      const GraphPartitionInstance& inst) const override {
    std::vector<std::unique_ptr<SiteProgram>> sites;
    for (int i = 0; i < inst.k; ++i) {
      std::uint32_t deg = 0;
      for (const EdgeRec& e : inst.local_edges[i]) {
        if (e.u == v_ || e.v == v_) ++deg;
      }
      sites.push_back(std::make_unique<DegreeNodupSite>(inst.k, inst.n, v_, deg));
    }
    return sites;
  }

 private:
  std::uint32_t v_;
};

class DegreeDupSite : public SiteProgram {
 public:
  DegreeDupSite(int k, std::uint32_t n, std::vector<std::uint32_t> local_nbrs)
      : k_(k), n_(n), local_nbrs_(std::move(local_nbrs)) {}

  void on_round(SiteCtx& ctx) override {
    if (ctx.round() == 0 && ctx.id() != 0) {
      ctx.send(0, element_list_1based(local_nbrs_, n_, n_ - 1));
      return;
    }
    if (ctx.id() == 0 && ctx.round() == (k_ == 1 ? 0 : 1)) {
      std::set<std::uint32_t> nbrs(local_nbrs_.begin(), local_nbrs_.end());
      for (const Message& m : ctx.inbox().all()) {
        for (std::uint32_t w : read_element_list_1based(m.payload)) nbrs.insert(w);
      }
      ctx.report(DegreeAnswer{static_cast<std::uint32_t>(nbrs.size())});
    }
  }

 private:
  int k_;
  std::uint32_t n_;
  std::vector<std::uint32_t> local_nbrs_;
};

class DegreeDupProtocol : public TypedProtocol<GraphPartitionInstance> {
 public:
  explicit DegreeDupProtocol(std::uint32_t v) : v_(v) {}
  std::string name() const override { return "degree_dup"; }

 protected:
  void check_typed(const GraphPartitionInstance& inst) const override {
    if (v_ < 1 || v_ > inst.n) throw UsageError("degree query vertex out of range");
  }
  std::vector<std::unique_ptr<SiteProgram>> make_typed(
      const GraphPartitionInstance& inst) const override {
    std::vector<std::unique_ptr<SiteProgram>> sites;
    for (int i = 0; i < inst.k; ++i) {
      std::vector<std::uint32_t> nbrs;
      for (const EdgeRec& e : inst.local_edges[i]) {
        if (e.u == v_) nbrs.push_back(e.v);
        if (e.v == v_) nbrs.push_back(e.u);
      }
      std::sort(nbrs.begin(), nbrs.end());
      sites.push_back(std::make_unique<DegreeDupSite>(inst.k, inst.n, std::move(nbrs)));
    }
    return sites;
  }

 private:
  std::uint32_t v_;
};

// --- cycle-freeness ----------------------------------------------------------

class CycleFreeNodupSite : public SiteProgram {
 public:
  CycleFreeNodupSite(int k, std::uint32_t n, std::vector<EdgeRec> local)
      : k_(k), n_(n), local_(std::move(local)) {}

  void on_round(SiteCtx& ctx) override {
    const int id = ctx.id();
    if (id != 0) {
      if (ctx.round() == 0) {
        // no mutually known bound on a local edge count: declare the value
        // itself as the range (an idealized self-delimiting integer)
        ctx.send(0, Payload::uint_of(local_.size(), local_.size()));
      } else if (ctx.round() == 2 && ctx.inbox().from(0)) {
        ctx.send(0, edge_list_payload(local_, n_, n_ - 1));
      }
      return;
    }
    if (ctx.round() == (k_ == 1 ? 0 : 1)) {
      std::uint64_t m = local_.size();
      for (const Message& msg : ctx.inbox().all()) m += msg.payload.value();
      if (m >= n_) {
        ctx.report(BoolAnswer{false});  // n or more edges force a cycle
        return;
      }
      if (k_ == 1) {
        ctx.report(BoolAnswer{!edges_contain_cycle(local_, n_)});
        return;
      }
      for (int i = 1; i < k_; ++i) ctx.send(i, Payload::uint_of(1, 1));
    } else if (ctx.round() == 3) {
      std::vector<EdgeRec> all(local_);
      for (const Message& msg : ctx.inbox().all()) {
        const auto got = read_edge_list(msg.payload);
        all.insert(all.end(), got.begin(), got.end());
      }
      ctx.report(BoolAnswer{!edges_contain_cycle(all, n_)});
    }
  }

 private:
  int k_;
  std::uint32_t n_;
  std::vector<EdgeRec> local_;
};

class CycleFreeNodupProtocol : public TypedProtocol<GraphPartitionInstance> {
 public:
  std::string name() const override { return "cycle_free_nodup"; }

 protected:
  void check_typed(const GraphPartitionInstance& inst) const override {
    if (inst.allow_duplication) {
      throw UsageError("cycle_free_nodup requires a duplication-free instance");
    }
  }
  std::vector<std::unique_ptr<SiteProgram>> make_typed(
      const GraphPartitionInstance& inst) const override {
    std::vector<std::unique_ptr<SiteProgram>> sites;
    for (int i = 0; i < inst.k; ++i) {
      sites.push_back(
          std::make_unique<CycleFreeNodupSite>(inst.k, inst.n, inst.local_edges[i]));
    }
    return sites;
  }
};

class CycleFreeDupSite : public SiteProgram {
 public:
  CycleFreeDupSite(int k, std::uint32_t n, std::vector<EdgeRec> local)
      : k_(k), n_(n), local_(std::move(local)) {}

  void on_round(SiteCtx& ctx) override {
    const int id = ctx.id();
    const bool local_cycle = edges_contain_cycle(local_, n_);
    if (id != 0) {
      if (ctx.round() == 0) {
        if (local_cycle) ctx.send(0, Payload::uint_of(1, 1));
      } else if (ctx.round() == 2 && ctx.inbox().from(0)) {
        ctx.send(0, edge_list_payload(local_, n_, n_ - 1));  // locally cycle-free: <= n-1 edges
      }
      return;
    }
    if (ctx.round() == (k_ == 1 ? 0 : 1)) {
      const bool any_alarm = !ctx.inbox().all().empty();
      if (local_cycle || any_alarm) {
        ctx.report(BoolAnswer{false});
        return;
      }
      if (k_ == 1) {
        ctx.report(BoolAnswer{true});
        return;
      }
      for (int i = 1; i < k_; ++i) ctx.send(i, Payload::uint_of(1, 1));
    } else if (ctx.round() == 3) {
      std::vector<EdgeRec> all(local_);
      for (const Message& msg : ctx.inbox().all()) {
        const auto got = read_edge_list(msg.payload);
        all.insert(all.end(), got.begin(), got.end());
      }
      ctx.report(BoolAnswer{!edges_contain_cycle(all, n_)});
    }
  }

 private:
  int k_;
  std::uint32_t n_;
  std::vector<EdgeRec> local_;
};

class CycleFreeDupProtocol : public TypedProtocol<GraphPartitionInstance> {
 public:
  std::string name() const override { return "cycle_free_dup"; }

 protected:
  std::vector<std::unique_ptr<SiteProgram>> make_typed(
      const GraphPartitionInstance& inst) const override {
    std::vector<std::unique_ptr<SiteProgram>> sites;
    for (int i = 0; i < inst.k; ++i) {
      sites.push_back(std::make_unique<CycleFreeDupSite>(inst.k, inst.n, inst.local_edges[i]));
    }
    return sites;
  }
};

// --- connectivity and #CC ----------------------------------------------------

class ForestSite : public SiteProgram {
 public:
  ForestSite(int k, std::uint32_t n, std::vector<EdgeRec> local, bool count_components)
      : k_(k), n_(n), local_(std::move(local)), count_components_(count_components) {}

  void on_round(SiteCtx& ctx) override {
    if (ctx.round() == 0 && ctx.id() != 0) {
      ctx.send(0, edge_list_payload(local_spanning_forest(local_, n_), n_, n_ - 1));
      return;
    }
    if (ctx.id() == 0 && ctx.round() == (k_ == 1 ? 0 : 1)) {
      UnionFind uf(n_ + 1);
      for (const EdgeRec& e : local_) uf.unite(e.u, e.v);
      for (const Message& m : ctx.inbox().all()) {
        for (const EdgeRec& e : read_edge_list(m.payload)) uf.unite(e.u, e.v);
      }
      const auto cc = static_cast<std::uint32_t>(uf.components() - 1);  // slot 0 is padding
      if (count_components_) {
        ctx.report(CcCountAnswer{cc});
      } else {
        ctx.report(BoolAnswer{cc == 1});
      }
    }
  }

 private:
  int k_;
  std::uint32_t n_;
  std::vector<EdgeRec> local_;
  bool count_components_;
};

class ConnectivityProtocol : public TypedProtocol<GraphPartitionInstance> {
 public:
  explicit ConnectivityProtocol(bool count_components) : count_components_(count_components) {}
  std::string name() const override { return count_components_ ? "num_cc" : "connectivity"; }

 protected:
  std::vector<std::unique_ptr<SiteProgram>> make_typed(
      const GraphPartitionInstance& inst) const override {
    std::vector<std::unique_ptr<SiteProgram>> sites;
    for (int i = 0; i < inst.k; ++i) {
      sites.push_back(
          std::make_unique<ForestSite>(inst.k, inst.n, inst.local_edges[i], count_components_));
    }
    return sites;
  }

 private:
  bool count_components_;
};

// --- triangle-freeness -------------------------------------------------------

class TriangleSite : public SiteProgram {
 public:
  TriangleSite(int k, std::uint32_t n, std::vector<EdgeRec> local)
      : k_(k), n_(n), local_(std::move(local)) {}

  void on_round(SiteCtx& ctx) override {
    if (ctx.round() == 0 && ctx.id() != 0) {
      const std::uint64_t cap = static_cast<std::uint64_t>(n_) * (n_ - 1) / 2;
      ctx.send(0, edge_list_payload(local_, n_, cap));
      return;
    }
    if (ctx.id() == 0 && ctx.round() == (k_ == 1 ? 0 : 1)) {
      std::vector<EdgeRec> all(local_);
      for (const Message& m : ctx.inbox().all()) {
        const auto got = read_edge_list(m.payload);
        all.insert(all.end(), got.begin(), got.end());
      }
      const auto adj = local_adjacency(all, n_);
      bool triangle = false;
      for (std::uint32_t u = 1; u <= n_ && !triangle; ++u) {
        for (std::uint32_t v : adj[u]) {
          if (v <= u) continue;
          auto it1 = adj[u].begin();
          auto it2 = adj[v].begin();
          while (it1 != adj[u].end() && it2 != adj[v].end()) {
            if (*it1 == *it2) {
              triangle = true;
              break;
            }
            if (*it1 < *it2) {
              ++it1;
            } else {
              ++it2;
            }
          }
          if (triangle) break;
        }
      }
      ctx.report(BoolAnswer{!triangle});
    }
  }

 private:
  int k_;
  std::uint32_t n_;
  std::vector<EdgeRec> local_;
};

class TriangleProtocol : public TypedProtocol<GraphPartitionInstance> {
 public:
  std::string name() const override { return "triangle_free"; }

 protected:
  std::vector<std::unique_ptr<SiteProgram>> make_typed(
      const GraphPartitionInstance& inst) const override {
    std::vector<std::unique_ptr<SiteProgram>> sites;
    for (int i = 0; i < inst.k; ++i) {
      sites.push_back(std::make_unique<TriangleSite>(inst.k, inst.n, inst.local_edges[i]));
    }
    return sites;
  }
};

// --- BFS tree ----------------------------------------------------------------

class BfsRemoteSite : public SiteProgram {
 public:
  BfsRemoteSite(std::uint32_t n, std::vector<EdgeRec> local, bool alarms, bool send_forest)
      : adj_(local_adjacency(local, n)),
        local_(std::move(local)),
        responder_(n, &adj_, alarms),
        n_(n),
        send_forest_(send_forest) {}

  void on_round(SiteCtx& ctx) override {
    if (send_forest_ && ctx.round() == 0) {
      ctx.send(0, edge_list_payload(local_spanning_forest(local_, n_), n_, n_ - 1));
      return;
    }
    for (const Message& m : ctx.inbox().all()) {
      if (m.src != 0 || !is_tagged(m.payload)) continue;
      const auto& parts = m.payload.parts();
      const std::uint64_t tag = parts[0].value();
      if (tag == kTagBfsNew || tag == kTagBfsCont) {
        responder_.handle_frontier(tag, parts[1], ctx);
      }
    }
  }

 private:
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<EdgeRec> local_;
  BfsResponder responder_;
  std::uint32_t n_;
  bool send_forest_;
};

class BfsTreeRootSite : public SiteProgram {
 public:
  BfsTreeRootSite(int k, std::uint32_t n, std::uint32_t root, std::vector<EdgeRec> local)
      : adj_(local_adjacency(local, n)), driver_(n, k, true), n_(n), root_(root) {
    driver_.attach_local(&adj_);
  }

  void on_round(SiteCtx& ctx) override {
    if (ctx.round() == 0) {
      driver_.begin(root_, ctx);
      return;
    }
    if (driver_.is_merge_round(ctx.round())) {
      if (driver_.on_merge(ctx)) {
        BfsAnswer ans;
        ans.root = root_;
        ans.parent.assign(driver_.parent().begin() + 1, driver_.parent().end());
        ans.layer.assign(driver_.layer().begin() + 1, driver_.layer().end());
        ans.odd_cycle_found = driver_.alarm();
        ctx.report(std::move(ans));
      }
    }
  }

 private:
  std::vector<std::vector<std::uint32_t>> adj_;
  BfsDriver driver_;
  std::uint32_t n_;
  std::uint32_t root_;
};

class BfsTreeProtocol : public TypedProtocol<GraphPartitionInstance> {
 public:
  explicit BfsTreeProtocol(std::uint32_t root) : root_(root) {}
  std::string name() const override { return "bfs_tree"; }

 protected:
  void check_typed(const GraphPartitionInstance& inst) const override {
    if (root_ < 1 || root_ > inst.n) throw UsageError("bfs root out of range");
  }
  std::vector<std::unique_ptr<SiteProgram>> make_typed(
      const GraphPartitionInstance& inst) const override {
    std::vector<std::unique_ptr<SiteProgram>> sites;
    sites.push_back(
        std::make_unique<BfsTreeRootSite>(inst.k, inst.n, root_, inst.local_edges[0]));
    for (int i = 1; i < inst.k; ++i) {
      sites.push_back(std::make_unique<BfsRemoteSite>(inst.n, inst.local_edges[i], true, false));
    }
    return sites;
  }

 private:
  std::uint32_t root_;
};

// --- bipartiteness -----------------------------------------------------------

class BipartiteRootSite : public SiteProgram {
 public:
  BipartiteRootSite(int k, std::uint32_t n, std::vector<EdgeRec> local)
      : adj_(local_adjacency(local, n)),
        local_(std::move(local)),
        driver_(n, k, true),
        k_(k),
        n_(n) {
    driver_.attach_local(&adj_);
  }

  void on_round(SiteCtx& ctx) override {
    if (ctx.round() == (k_ == 1 ? 0 : 1) && roots_.empty() && !started_) {
      // components from the collected spanning forests, then one BFS per
      // component rooted at its smallest vertex
      UnionFind uf(n_ + 1);
      for (const EdgeRec& e : local_) uf.unite(e.u, e.v);
      for (const Message& m : ctx.inbox().all()) {
        for (const EdgeRec& e : read_edge_list(m.payload)) uf.unite(e.u, e.v);
      }
      std::vector<std::uint8_t> seen(n_ + 1, 0);
      for (std::uint32_t v = 1; v <= n_; ++v) {
        const auto root = uf.find(v);
        if (!seen[root]) {
          seen[root] = 1;
          roots_.push_back(v);  // v ascending, so this is the component minimum
        }
      }
      started_ = true;
      driver_.begin(roots_[next_root_++], ctx);
      return;
    }
    if (started_ && driver_.is_merge_round(ctx.round())) {
      if (driver_.on_merge(ctx)) {
        odd_ = odd_ || driver_.alarm();
        if (next_root_ < roots_.size()) {
          driver_.begin(roots_[next_root_++], ctx);
        } else {
          ctx.report(BoolAnswer{!odd_});
        }
      }
    }
  }

 private:
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<EdgeRec> local_;
  BfsDriver driver_;
  int k_;
  std::uint32_t n_;
  std::vector<std::uint32_t> roots_;
  std::size_t next_root_ = 0;
  bool started_ = false;
  bool odd_ = false;
};

class BipartitenessProtocol : public TypedProtocol<GraphPartitionInstance> {
 public:
  std::string name() const override { return "bipartiteness"; }

 protected:
  std::vector<std::unique_ptr<SiteProgram>> make_typed(
      const GraphPartitionInstance& inst) const override {
    std::vector<std::unique_ptr<SiteProgram>> sites;
    sites.push_back(std::make_unique<BipartiteRootSite>(inst.k, inst.n, inst.local_edges[0]));
    for (int i = 1; i < inst.k; ++i) {
      sites.push_back(std::make_unique<BfsRemoteSite>(inst.n, inst.local_edges[i], true, true));
    }
    return sites;
  }
  long typed_round_limit(const GraphPartitionInstance& inst) const override {
    // one BFS per component, two rounds per layer
    return 10L * inst.n + 4L * inst.n + 16;
  }
};

// --- reconstruct_y -----------------------------------------------------------

class ReconstructRemoteSite : public SiteProgram {
 public:
  explicit ReconstructRemoteSite(std::vector<std::uint8_t> row) : row_(std::move(row)) {}

  void on_round(SiteCtx& ctx) override {
    if (ctx.round() != 1) return;
    const Payload* queries = ctx.inbox().from(0);
    if (!queries) return;
    std::vector<std::uint8_t> bits;
    bits.reserve(queries->ids().size());
    for (std::uint64_t col : queries->ids()) bits.push_back(row_[col]);
    ctx.send(0, Payload::bit_vector(std::move(bits)));
  }

 private:
  std::vector<std::uint8_t> row_;
};

class ReconstructRootSite : public SiteProgram {
 public:
  ReconstructRootSite(int k, std::uint32_t r, int c_y, std::vector<std::uint8_t> row)
      : k_(k), r_(r), c_y_(c_y), row_(std::move(row)) {}

  void on_round(SiteCtx& ctx) override {
    if (ctx.round() == 0) {
      const std::uint64_t per_column = static_cast<std::uint64_t>(c_y_) * ceil_log2(r_);
      sums_.assign(r_ + 1, 0);
      queries_.assign(k_, {});
      auto& rng = ctx.rng();
      for (std::uint32_t j = 1; j <= r_; ++j) {
        for (std::uint64_t d = 0; d < per_column; ++d) {
          const int site = static_cast<int>(rng.below(k_));
          if (site == 0) {
            sums_[j] += row_[j - 1];  // self-queries are answered locally
          } else {
            queries_[site].push_back(j - 1);
          }
        }
      }
      const std::uint64_t cap = per_column * r_;
      for (int i = 1; i < k_; ++i) {
        if (!queries_[i].empty()) {
          ctx.send(i, Payload::element_list(queries_[i], r_, cap));
        }
      }
      if (k_ == 1) finish(ctx);
      return;
    }
    if (ctx.round() == 2) {
      for (const Message& m : ctx.inbox().all()) {
        const auto& bits = m.payload.bits();
        const auto& q = queries_[m.src];
        if (bits.size() != q.size()) {
          throw ProtocolLogicError("reconstruct_y: bit reply has wrong length");
        }
        for (std::size_t t = 0; t < q.size(); ++t) {
          sums_[static_cast<std::uint32_t>(q[t]) + 1] += bits[t];
        }
      }
      finish(ctx);
    }
  }

 private:
  void finish(SiteCtx& ctx) {
    // below the threshold = too few ones = the column looks special
    const double threshold = static_cast<double>(c_y_) * static_cast<double>(ceil_log2(r_)) / 12.0;
    ElementSetAnswer ans;
    for (std::uint32_t j = 1; j <= r_; ++j) {
      if (static_cast<double>(sums_[j]) < threshold) ans.elements.push_back(j);
    }
    ctx.report(std::move(ans));
  }

  int k_;
  std::uint32_t r_;
  int c_y_;
  std::vector<std::uint8_t> row_;
  std::vector<std::uint64_t> sums_;
  std::vector<std::vector<std::uint64_t>> queries_;
};

class ReconstructYProtocol : public TypedProtocol<ThreshInstance> {
 public:
  explicit ReconstructYProtocol(int c_y) : c_y_(c_y) {}
  std::string name() const override { return "reconstruct_y"; }

 protected:
  void check_typed(const ThreshInstance&) const override {
    if (c_y_ < 1) throw UsageError("reconstruct_y: c_y must be positive");
  }
  std::vector<std::unique_ptr<SiteProgram>> make_typed(const ThreshInstance& inst) const override {
    std::vector<std::unique_ptr<SiteProgram>> sites;
    sites.push_back(std::make_unique<ReconstructRootSite>(inst.k, inst.r, c_y_, inst.rows[0]));
    for (int i = 1; i < inst.k; ++i) {
      sites.push_back(std::make_unique<ReconstructRemoteSite>(inst.rows[i]));
    }
    return sites;
  }

 private:
  int c_y_;
};

// --- additive-2 diameter -----------------------------------------------------

std::uint32_t diameter_sample_count(std::uint32_t n, double c_s) {
  if (n <= 1) return 0;
  const double want = c_s * std::sqrt(static_cast<double>(n)) * std::log2(static_cast<double>(n));
  const auto s = static_cast<std::uint32_t>(std::ceil(want));
  return std::max<std::uint32_t>(1, std::min<std::uint32_t>(n, s));
}

class DiameterRemoteSite : public SiteProgram {
 public:
  DiameterRemoteSite(std::uint32_t n, std::vector<EdgeRec> local)
      : adj_(local_adjacency(local, n)),
        local_(std::move(local)),
        responder_(n, &adj_, false),
        n_(n) {}

  void on_round(SiteCtx& ctx) override {
    if (ctx.round() == 0) {
      ctx.send(0, edge_list_payload(local_spanning_forest(local_, n_), n_, n_ - 1));
      return;
    }
    for (const Message& m : ctx.inbox().all()) {
      if (m.src != 0 || !is_tagged(m.payload)) continue;
      const auto& parts = m.payload.parts();
      switch (parts[0].value()) {
        case kTagBfsNew:
        case kTagBfsCont:
          responder_.handle_frontier(parts[0].value(), parts[1], ctx);
          break;
        case kTagDegCounts: {
          std::vector<std::uint64_t> counts(n_, 0);
          for (std::uint32_t v = 1; v <= n_; ++v) counts[v - 1] = adj_[v].size();
          ctx.send(0, Payload::element_list(std::move(counts), n_, n_));
          break;
        }
        case kTagDegFlags: {
          const std::uint32_t thr = isqrt_u64(4ULL * n_);
          std::vector<std::uint32_t> flagged;
          for (std::uint32_t v = 1; v <= n_; ++v) {
            if (!adj_[v].empty() && adj_[v].size() <= thr) flagged.push_back(v);
          }
          if (!flagged.empty()) ctx.send(0, element_list_1based(flagged, n_, n_));
          break;
        }
        case kTagNbrLists: {
          const auto wanted = read_element_list_1based(parts[1]);
          std::vector<Payload> lists;
          bool any = false;
          lists.reserve(wanted.size());
          for (std::uint32_t v : wanted) {
            any = any || !adj_[v].empty();
            lists.push_back(element_list_1based(adj_[v], n_, n_ - 1));
          }
          if (any) ctx.send(0, Payload::composite(std::move(lists)));
          break;
        }
        case kTagShipIncident: {
          const auto hset = read_element_list_1based(parts[1]);
          std::vector<std::uint8_t> in_h(n_ + 1, 0);
          for (std::uint32_t v : hset) in_h[v] = 1;
          std::vector<EdgeRec> incident;
          for (const EdgeRec& e : local_) {
            if (in_h[e.u] || in_h[e.v]) incident.push_back(e);
          }
          if (!incident.empty()) {
            const std::uint64_t cap = static_cast<std::uint64_t>(n_) * (n_ - 1) / 2;
            ctx.send(0, edge_list_payload(incident, n_, cap));
          }
          break;
        }
        default: break;
      }
    }
  }

 private:
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<EdgeRec> local_;
  BfsResponder responder_;
  std::uint32_t n_;
};

class DiameterRootSite : public SiteProgram {
 public:
  DiameterRootSite(int k, std::uint32_t n, bool dup_mode, double c_s, std::vector<EdgeRec> local)
      : adj_(local_adjacency(local, n)),
        local_(std::move(local)),
        driver_(n, k, false),
        k_(k),
        n_(n),
        dup_mode_(dup_mode),
        c_s_(c_s) {
    driver_.attach_local(&adj_);
  }

  void on_round(SiteCtx& ctx) override {
    switch (phase_) {
      case Phase::Forests:
        if (ctx.round() == (k_ == 1 ? 0 : 1)) on_forests(ctx);
        return;
      case Phase::Bfs:
        if (driver_.is_merge_round(ctx.round())) {
          if (!driver_.on_merge(ctx)) return;
          collect_tree_edges();
          if (next_root_ < roots_.size()) {
            driver_.begin(roots_[next_root_++], ctx);
            return;
          }
          start_degree_phase(ctx);
        }
        return;
      case Phase::DegCounts:
        if (ctx.round() == action_round_) on_count_vectors(ctx);
        return;
      case Phase::DegFlags:
        if (ctx.round() == action_round_) on_flags(ctx);
        return;
      case Phase::NbrLists:
        if (ctx.round() == action_round_) on_neighbor_lists(ctx);
        return;
      case Phase::Spanner:
        if (ctx.round() == action_round_) on_spanner_edges(ctx);
        return;
    }
  }

 private:
  enum class Phase { Forests, Bfs, DegCounts, DegFlags, NbrLists, Spanner };

  void on_forests(SiteCtx& ctx) {
    UnionFind uf(n_ + 1);
    for (const EdgeRec& e : local_) uf.unite(e.u, e.v);
    for (const Message& m : ctx.inbox().all()) {
      for (const EdgeRec& e : read_edge_list(m.payload)) uf.unite(e.u, e.v);
    }
    if (uf.components() - 1 != 1) {
      ctx.report(DiameterAnswer{std::nullopt});
      return;
    }
    if (n_ == 1) {
      ctx.report(DiameterAnswer{0});
      return;
    }
    std::vector<std::uint32_t> ground(n_);
    std::iota(ground.begin(), ground.end(), 1u);
    roots_ = ctx.rng().sample_sorted(std::move(ground), diameter_sample_count(n_, c_s_));
    phase_ = Phase::Bfs;
    driver_.begin(roots_[next_root_++], ctx);
  }

  void collect_tree_edges() {
    const auto& parent = driver_.parent();
    for (std::uint32_t v = 1; v <= n_; ++v) {
      if (parent[v] != 0) spanner_.insert(make_edge(parent[v], v));
    }
  }

  void start_degree_phase(SiteCtx& ctx) {
    if (dup_mode_) {
      phase_ = Phase::DegFlags;
      for (int i = 1; i < k_; ++i) ctx.send(i, tagged(kTagDegFlags));
    } else {
      phase_ = Phase::DegCounts;
      for (int i = 1; i < k_; ++i) ctx.send(i, tagged(kTagDegCounts));
    }
    action_round_ = ctx.round() + 2;
  }

  void on_count_vectors(SiteCtx& ctx) {
    std::vector<std::uint64_t> deg(n_ + 1, 0);
    for (std::uint32_t v = 1; v <= n_; ++v) deg[v] = adj_[v].size();
    for (const Message& m : ctx.inbox().all()) {
      const auto& counts = m.payload.ids();
      for (std::uint32_t v = 1; v <= n_; ++v) deg[v] += counts[v - 1];
    }
    const std::uint32_t thr = isqrt_u64(4ULL * n_);
    h_set_.clear();
    for (std::uint32_t v = 1; v <= n_; ++v) {
      if (deg[v] <= thr) h_set_.push_back(v);
    }
    request_incident(ctx);
  }

  void on_flags(SiteCtx& ctx) {
    const std::uint32_t thr = isqrt_u64(4ULL * n_);
    std::vector<std::uint8_t> flagged(n_ + 1, 0);
    for (std::uint32_t v = 1; v <= n_; ++v) {
      if (!adj_[v].empty() && adj_[v].size() <= thr) flagged[v] = 1;
    }
    for (const Message& m : ctx.inbox().all()) {
      for (std::uint32_t v : read_element_list_1based(m.payload)) flagged[v] = 1;
    }
    candidates_.clear();
    for (std::uint32_t v = 1; v <= n_; ++v) {
      if (flagged[v]) candidates_.push_back(v);
    }
    if (candidates_.empty()) {
      h_set_.clear();
      request_incident(ctx);
      return;
    }
    phase_ = Phase::NbrLists;
    for (int i = 1; i < k_; ++i) {
      ctx.send(i, tagged(kTagNbrLists, element_list_1based(candidates_, n_, n_)));
    }
    action_round_ = ctx.round() + 2;
  }

  void on_neighbor_lists(SiteCtx& ctx) {
    std::vector<std::set<std::uint32_t>> nbrs(candidates_.size());
    for (std::size_t idx = 0; idx < candidates_.size(); ++idx) {
      const auto& own = adj_[candidates_[idx]];
      nbrs[idx].insert(own.begin(), own.end());
    }
    for (const Message& m : ctx.inbox().all()) {
      const auto& lists = m.payload.parts();
      for (std::size_t idx = 0; idx < lists.size(); ++idx) {
        for (std::uint32_t w : read_element_list_1based(lists[idx])) nbrs[idx].insert(w);
      }
    }
    const std::uint32_t thr = isqrt_u64(4ULL * n_);
    h_set_.clear();
    for (std::size_t idx = 0; idx < candidates_.size(); ++idx) {
      if (nbrs[idx].size() <= thr) h_set_.push_back(candidates_[idx]);
    }
    request_incident(ctx);
  }

  void request_incident(SiteCtx& ctx) {
    phase_ = Phase::Spanner;
    for (int i = 1; i < k_; ++i) {
      ctx.send(i, tagged(kTagShipIncident, element_list_1based(h_set_, n_, n_)));
    }
    action_round_ = ctx.round() + 2;
  }

  void on_spanner_edges(SiteCtx& ctx) {
    std::vector<std::uint8_t> in_h(n_ + 1, 0);
    for (std::uint32_t v : h_set_) in_h[v] = 1;
    for (const EdgeRec& e : local_) {
      if (in_h[e.u] || in_h[e.v]) spanner_.insert(e);
    }
    for (const Message& m : ctx.inbox().all()) {
      for (const EdgeRec& e : read_edge_list(m.payload)) spanner_.insert(e);
    }
    // all-pairs BFS over the spanner
    std::vector<std::vector<std::uint32_t>> adj(n_ + 1);
    for (const EdgeRec& e : spanner_) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    std::uint32_t best = 0;
    std::vector<std::int32_t> dist(n_ + 1);
    for (std::uint32_t s = 1; s <= n_; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      dist[s] = 0;
      std::deque<std::uint32_t> queue{s};
      while (!queue.empty()) {
        const std::uint32_t u = queue.front();
        queue.pop_front();
        for (std::uint32_t w : adj[u]) {
          if (dist[w] == -1) {
            dist[w] = dist[u] + 1;
            queue.push_back(w);
          }
        }
      }
      for (std::uint32_t v = 1; v <= n_; ++v) {
        if (dist[v] == -1) throw ProtocolLogicError("diameter: spanner is not spanning");
        best = std::max(best, static_cast<std::uint32_t>(dist[v]));
      }
    }
    DiameterAnswer ans;
    ans.value = best;
    ans.spanner.reserve(spanner_.size());
    for (const EdgeRec& e : spanner_) ans.spanner.emplace_back(e.u, e.v);
    ctx.report(std::move(ans));
  }

  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<EdgeRec> local_;
  BfsDriver driver_;
  int k_;
  std::uint32_t n_;
  bool dup_mode_;
  double c_s_;
  Phase phase_ = Phase::Forests;
  int action_round_ = -1;
  std::vector<std::uint32_t> roots_;
  std::size_t next_root_ = 0;
  std::set<EdgeRec> spanner_;
  std::vector<std::uint32_t> h_set_;
  std::vector<std::uint32_t> candidates_;
};

class DiameterProtocol : public TypedProtocol<GraphPartitionInstance> {
 public:
  explicit DiameterProtocol(double c_s) : c_s_(c_s) {}
  std::string name() const override { return "diameter_additive2"; }

 protected:
  void check_typed(const GraphPartitionInstance&) const override {
    if (c_s_ <= 0) throw UsageError("diameter_additive2: c_s must be positive");
  }
  std::vector<std::unique_ptr<SiteProgram>> make_typed(
      const GraphPartitionInstance& inst) const override {
    std::vector<std::unique_ptr<SiteProgram>> sites;
    sites.push_back(std::make_unique<DiameterRootSite>(inst.k, inst.n, inst.allow_duplication,
                                                       c_s_, inst.local_edges[0]));
    for (int i = 1; i < inst.k; ++i) {
      sites.push_back(std::make_unique<DiameterRemoteSite>(inst.n, inst.local_edges[i]));
    }
    return sites;
  }
  long typed_round_limit(const GraphPartitionInstance& inst) const override {
    const long s = diameter_sample_count(inst.n, c_s_);
    return 10L * inst.n + (s + 2) * (2L * inst.n + 10);
  }

 private:
  double c_s_;
};

}  // namespace

RunResult degree_nodup(const GraphPartitionInstance& inst, std::uint32_t v, std::uint64_t seed,
                       const RunOptions& opts) {
  return run_protocol(DegreeNodupProtocol{v}, Instance(inst), seed, opts);
}

RunResult degree_dup(const GraphPartitionInstance& inst, std::uint32_t v, std::uint64_t seed,
                     const RunOptions& opts) {
  return run_protocol(DegreeDupProtocol{v}, Instance(inst), seed, opts);
}

RunResult cycle_free_nodup(const GraphPartitionInstance& inst, std::uint64_t seed,
                           const RunOptions& opts) {
  return run_protocol(CycleFreeNodupProtocol{}, Instance(inst), seed, opts);
}

RunResult cycle_free_dup(const GraphPartitionInstance& inst, std::uint64_t seed,
                         const RunOptions& opts) {
  return run_protocol(CycleFreeDupProtocol{}, Instance(inst), seed, opts);
}

RunResult connectivity(const GraphPartitionInstance& inst, std::uint64_t seed,
                       const RunOptions& opts) {
  return run_protocol(ConnectivityProtocol{false}, Instance(inst), seed, opts);
}

RunResult num_cc(const GraphPartitionInstance& inst, std::uint64_t seed, const RunOptions& opts) {
  return run_protocol(ConnectivityProtocol{true}, Instance(inst), seed, opts);
}

RunResult bfs_tree(const GraphPartitionInstance& inst, std::uint32_t root, std::uint64_t seed,
                   const RunOptions& opts) {
  return run_protocol(BfsTreeProtocol{root}, Instance(inst), seed, opts);
}

RunResult bipartiteness(const GraphPartitionInstance& inst, std::uint64_t seed,
                        const RunOptions& opts) {
  return run_protocol(BipartitenessProtocol{}, Instance(inst), seed, opts);
}

RunResult triangle_free(const GraphPartitionInstance& inst, std::uint64_t seed,
                        const RunOptions& opts) {
  return run_protocol(TriangleProtocol{}, Instance(inst), seed, opts);
}

RunResult reconstruct_y(const ThreshInstance& inst, int c_y, std::uint64_t seed,
                        const RunOptions& opts) {
  return run_protocol(ReconstructYProtocol{c_y}, Instance(inst), seed, opts);
}

RunResult diameter_additive2(const GraphPartitionInstance& inst, std::uint64_t seed, double c_s,
                             const RunOptions& opts) {
  return run_protocol(DiameterProtocol{c_s}, Instance(inst), seed, opts);
}

}  // namespace msgpass
