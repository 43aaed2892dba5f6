#include "msgpass/oracle.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "msgpass/errors.hpp"
#include "msgpass/union_find.hpp"

namespace msgpass {

GlobalGraph GlobalGraph::from_partition(const GraphPartitionInstance& inst) {
  std::vector<EdgeRec> all;
  for (const auto& site : inst.local_edges) all.insert(all.end(), site.begin(), site.end());
  return from_edges(inst.n, all);
}

GlobalGraph GlobalGraph::from_edges(std::uint32_t n, const std::vector<EdgeRec>& edges) {
  GlobalGraph g;
  g.n = n;
  g.adj.assign(n + 1, {});
  for (const EdgeRec& e : edges) {
    g.adj[e.u].push_back(e.v);
    g.adj[e.v].push_back(e.u);
  }
  for (auto& nbrs : g.adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return g;
}

std::uint64_t GlobalGraph::edge_count() const {
  std::uint64_t twice = 0;
  for (const auto& nbrs : adj) twice += nbrs.size();
  return twice / 2;
}

bool GlobalGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
  const auto& nbrs = adj[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

namespace oracle {

std::uint64_t f0(const SetFamilyInstance& inst) {
  std::set<std::uint32_t> all;
  for (const auto& s : inst.sets) all.insert(s.begin(), s.end());
  return all.size();
}

std::pair<std::uint64_t, std::uint32_t> linfty(const SetFamilyInstance& inst) {
  std::unordered_map<std::uint32_t, std::uint32_t> freq;
  for (const auto& s : inst.sets) {
    for (std::uint32_t e : s) ++freq[e];
  }
  if (freq.empty()) throw EmptyInputError("max-frequency is undefined on an empty union");
  std::uint64_t best_elt = 0;
  std::uint32_t best_freq = 0;
  for (const auto& [elt, f] : freq) {
    if (f > best_freq || (f == best_freq && elt < best_elt)) {
      best_elt = elt;
      best_freq = f;
    }
  }
  return {best_elt, best_freq};
}

std::uint32_t degree(const GlobalGraph& g, std::uint32_t v) {
  return static_cast<std::uint32_t>(g.adj[v].size());
}

bool has_cycle(const GlobalGraph& g) {
  UnionFind uf(g.n + 1);
  for (std::uint32_t u = 1; u <= g.n; ++u) {
    for (std::uint32_t v : g.adj[u]) {
      if (v <= u) continue;
      if (!uf.unite(u, v)) return true;
    }
  }
  return false;
}

std::uint32_t num_cc(const GlobalGraph& g) {
  UnionFind uf(g.n + 1);
  for (std::uint32_t u = 1; u <= g.n; ++u) {
    for (std::uint32_t v : g.adj[u]) {
      if (v > u) uf.unite(u, v);
    }
  }
  return static_cast<std::uint32_t>(uf.components() - 1);  // vertex 0 is padding
}

bool bipartite(const GlobalGraph& g) {
  std::vector<std::int8_t> color(g.n + 1, -1);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t s = 1; s <= g.n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const std::uint32_t u = queue.front();
      queue.pop_front();
      for (std::uint32_t v : g.adj[u]) {
        if (color[v] == -1) {
          color[v] = static_cast<std::int8_t>(1 - color[u]);
          queue.push_back(v);
        } else if (color[v] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool triangle_free(const GlobalGraph& g) {
  for (std::uint32_t u = 1; u <= g.n; ++u) {
    for (std::uint32_t v : g.adj[u]) {
      if (v <= u) continue;
      // intersect the sorted neighbourhoods of u and v
      auto it1 = g.adj[u].begin();
      auto it2 = g.adj[v].begin();
      while (it1 != g.adj[u].end() && it2 != g.adj[v].end()) {
        if (*it1 == *it2) return false;
        if (*it1 < *it2) {
          ++it1;
        } else {
          ++it2;
        }
      }
    }
  }
  return true;
}

std::vector<std::int32_t> bfs_distances(const GlobalGraph& g, std::uint32_t root) {
  std::vector<std::int32_t> dist(g.n + 1, -1);
  dist[root] = 0;
  std::deque<std::uint32_t> queue{root};
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    for (std::uint32_t v : g.adj[u]) {
      if (dist[v] == -1) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::optional<std::uint32_t> diameter(const GlobalGraph& g) {
  if (g.n == 0) return std::nullopt;
  std::uint32_t best = 0;
  for (std::uint32_t s = 1; s <= g.n; ++s) {
    const auto dist = bfs_distances(g, s);
    for (std::uint32_t v = 1; v <= g.n; ++v) {
      if (dist[v] == -1) return std::nullopt;
      best = std::max(best, static_cast<std::uint32_t>(dist[v]));
    }
  }
  return best;
}

std::optional<std::uint32_t> diameter_floyd_warshall(const GlobalGraph& g) {
  if (g.n == 0) return std::nullopt;
  const std::uint32_t inf = UINT32_MAX / 4;
  std::vector<std::vector<std::uint32_t>> d(g.n + 1, std::vector<std::uint32_t>(g.n + 1, inf));
  for (std::uint32_t u = 1; u <= g.n; ++u) {
    d[u][u] = 0;
    for (std::uint32_t v : g.adj[u]) d[u][v] = 1;
  }
  for (std::uint32_t w = 1; w <= g.n; ++w) {
    for (std::uint32_t u = 1; u <= g.n; ++u) {
      for (std::uint32_t v = 1; v <= g.n; ++v) {
        d[u][v] = std::min(d[u][v], d[u][w] + d[w][v]);
      }
    }
  }
  std::uint32_t best = 0;
  for (std::uint32_t u = 1; u <= g.n; ++u) {
    for (std::uint32_t v = 1; v <= g.n; ++v) {
      if (d[u][v] >= inf) return std::nullopt;
      best = std::max(best, d[u][v]);
    }
  }
  return best;
}

int disj(const DisjInstance& inst) {
  std::vector<std::uint32_t> both;
  std::set_intersection(inst.x.begin(), inst.x.end(), inst.y.begin(), inst.y.end(),
                        std::back_inserter(both));
  return both.empty() ? 0 : 1;
}

}  // namespace oracle
}  // namespace msgpass
