#include "msgpass/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "msgpass/errors.hpp"
#include "msgpass/rng.hpp"

namespace msgpass {

namespace {

void require_r_mod4(std::uint32_t r) {
  if (r < 7 || r % 4 != 3) {
    throw UsageError("r must be >= 7 and congruent to 3 mod 4 so that (r+1)/4 is integral");
  }
}

std::vector<std::uint32_t> range_1_to(std::uint32_t r) {
  std::vector<std::uint32_t> v(r);
  std::iota(v.begin(), v.end(), 1u);
  return v;
}

std::vector<std::uint32_t> complement_of(const std::vector<std::uint32_t>& sorted_set,
                                         std::uint32_t r) {
  std::vector<std::uint32_t> out;
  out.reserve(r - sorted_set.size());
  std::size_t idx = 0;
  for (std::uint32_t e = 1; e <= r; ++e) {
    if (idx < sorted_set.size() && sorted_set[idx] == e) {
      ++idx;
    } else {
      out.push_back(e);
    }
  }
  return out;
}

// ell-subset meeting `other` in exactly one element
std::vector<std::uint32_t> subset_with_one_hit(SplitRng& rng, const std::vector<std::uint32_t>& other,
                                               std::uint32_t r, std::uint32_t ell) {
  const std::uint32_t hit = other[rng.below(other.size())];
  auto rest = complement_of(other, r);
  auto picked = rng.sample_sorted(std::move(rest), ell - 1);
  picked.push_back(hit);
  std::sort(picked.begin(), picked.end());
  return picked;
}

const std::vector<std::uint32_t>& require_witness(const ThreshInstance& t, const char* builder) {
  if (!t.witness_Y) {
    throw UsageError(std::string(builder) + ": instance carries no witness set");
  }
  return *t.witness_Y;
}

InstanceMeta reduction_meta(const ThreshInstance& t, const char* dist) {
  InstanceMeta meta;
  meta.source_dist = dist;
  meta.seed = t.meta ? t.meta->seed : 0;
  if (t.witness_Y) {
    meta.witness = t.witness_Y;
    meta.coverage = coverage_holds(t);
  }
  meta.source_value = eval_thresh(t);
  return meta;
}

InstanceMeta reduction_meta(const DisjInstance& d, const char* dist) {
  InstanceMeta meta;
  meta.source_dist = dist;
  meta.seed = d.meta ? d.meta->seed : 0;
  std::vector<std::uint32_t> both;
  std::set_intersection(d.x.begin(), d.x.end(), d.y.begin(), d.y.end(), std::back_inserter(both));
  meta.source_value = both.empty() ? 0 : 1;
  return meta;
}

}  // namespace

DisjInstance sample_disj(std::uint32_t r, double beta, std::uint64_t seed) {
  require_r_mod4(r);
  if (beta <= 0.0 || beta > 0.25) throw UsageError("beta must lie in (0, 1/4]");
  const std::uint32_t ell = (r + 1) / 4;
  SplitRng rng(seed);
  DisjInstance inst;
  inst.r = r;
  inst.ell = ell;
  inst.x = rng.sample_sorted(range_1_to(r), ell);
  if (rng.bernoulli(beta)) {
    inst.y = subset_with_one_hit(rng, inst.x, r, ell);
  } else {
    inst.y = rng.sample_sorted(complement_of(inst.x, r), ell);
  }
  InstanceMeta meta;
  meta.source_dist = "disj";
  meta.seed = seed;
  inst.meta = std::move(meta);
  return inst;
}

OrDisjInstance sample_or_disj(int k, std::uint32_t r, std::uint64_t seed) {
  if (k < 2) throw UsageError("or-disj requires k >= 2");
  require_r_mod4(r);
  const std::uint32_t ell = (r + 1) / 4;
  SplitRng rng(seed);
  OrDisjInstance inst;
  inst.k = k;
  inst.r = r;
  inst.Y = rng.sample_sorted(range_1_to(r), ell);
  const double hit_p = 1.0 / (static_cast<double>(k) * static_cast<double>(k));
  inst.X.reserve(k);
  for (int i = 0; i < k; ++i) {
    if (rng.bernoulli(hit_p)) {
      inst.X.push_back(subset_with_one_hit(rng, inst.Y, r, ell));
    } else {
      inst.X.push_back(rng.sample_sorted(complement_of(inst.Y, r), ell));
    }
  }
  return inst;
}

ThreshInstance sample_zeta(int k, std::uint32_t r, std::uint64_t seed, const ZetaOptions& opts) {
  OrDisjInstance src = sample_or_disj(k, r, seed);
  ThreshInstance t;
  t.k = k;
  t.r = r;
  t.theta = (3 * r - 1) / 4;
  t.rows.assign(k, std::vector<std::uint8_t>(r, 0));
  for (int i = 0; i < k; ++i) {
    for (std::uint32_t e : src.X[i]) t.rows[i][e - 1] = 1;
  }
  t.witness_Y = std::move(src.Y);
  t.below_k_floor = static_cast<double>(k) < opts.c_k * std::log2(static_cast<double>(r));
  InstanceMeta meta;
  meta.source_dist = "zeta";
  meta.seed = seed;
  meta.witness = t.witness_Y;
  meta.coverage = coverage_holds(t);
  meta.source_value = eval_thresh(t);
  t.meta = std::move(meta);
  return t;
}

int eval_thresh(const ThreshInstance& t) {
  std::uint32_t live = 0;
  for (std::uint32_t j = 0; j < t.r; ++j) {
    for (int i = 0; i < t.k; ++i) {
      if (t.rows[i][j]) {
        ++live;
        break;
      }
    }
  }
  return live > t.theta ? 1 : 0;
}

int eval_or_disj(const OrDisjInstance& inst) {
  for (const auto& x : inst.X) {
    std::vector<std::uint32_t> both;
    std::set_intersection(x.begin(), x.end(), inst.Y.begin(), inst.Y.end(),
                          std::back_inserter(both));
    if (!both.empty()) return 1;
  }
  return 0;
}

bool coverage_holds(const ThreshInstance& t) {
  const auto& y = require_witness(t, "coverage_holds");
  std::vector<std::uint8_t> in_y(t.r + 1, 0);
  for (std::uint32_t j : y) in_y[j] = 1;
  for (std::uint32_t j = 1; j <= t.r; ++j) {
    if (in_y[j]) continue;
    bool live = false;
    for (int i = 0; i < t.k && !live; ++i) live = t.rows[i][j - 1] != 0;
    if (!live) return false;
  }
  return true;
}

SetFamilyInstance build_f0_instance(const ThreshInstance& t) {
  SetFamilyInstance inst;
  inst.k = t.k;
  inst.n = t.r;
  inst.sets.reserve(t.k);
  for (int i = 0; i < t.k; ++i) {
    std::vector<std::uint32_t> support;
    for (std::uint32_t j = 0; j < t.r; ++j) {
      if (t.rows[i][j]) support.push_back(j + 1);
    }
    inst.sets.push_back(std::move(support));
  }
  if (t.witness_Y) {
    inst.meta = reduction_meta(t, "sigma_f");
  } else {
    InstanceMeta meta;
    meta.source_dist = "sigma_f";
    meta.source_value = eval_thresh(t);
    inst.meta = std::move(meta);
  }
  return inst;
}

LinftyReduction build_linfty_instance(const ThreshInstance& t, std::uint64_t seed) {
  SplitRng rng(seed);
  LinftyReduction red;
  std::vector<std::uint8_t> flip(t.k, 0);
  for (int i = 0; i < t.k; ++i) {
    if (rng.bernoulli(7.0 / 8.0)) {
      flip[i] = 1;
      red.flipped_sites.push_back(i);
    }
  }
  SetFamilyInstance inst;
  inst.k = t.k;
  inst.n = t.r;
  inst.sets.reserve(t.k);
  for (int i = 0; i < t.k; ++i) {
    std::vector<std::uint32_t> support;
    for (std::uint32_t j = 0; j < t.r; ++j) {
      const bool bit = flip[i] ? !t.rows[i][j] : t.rows[i][j] != 0;
      if (bit) support.push_back(j + 1);
    }
    inst.sets.push_back(std::move(support));
  }
  InstanceMeta meta;
  meta.source_dist = "sigma_l";
  meta.seed = seed;
  if (t.witness_Y) {
    meta.witness = t.witness_Y;
    meta.coverage = coverage_holds(t);
  }
  meta.source_value = eval_thresh(t);
  inst.meta = std::move(meta);
  red.instance = std::move(inst);
  return red;
}

GraphPartitionInstance build_cycle_2party(const DisjInstance& d, std::uint32_t h) {
  if (h < d.r) throw UsageError("build_cycle_2party: need h >= r");
  // vertices: s = 1, t = 2, v_i = 2 + i
  GraphPartitionInstance g;
  g.n = h + 2;
  g.k = 2;
  g.allow_duplication = false;
  g.local_edges.assign(2, {});
  for (std::uint32_t i : d.x) g.local_edges[0].push_back(make_edge(1, 2 + i));
  g.local_edges[0].push_back(make_edge(1, 2));
  for (std::uint32_t i : d.y) g.local_edges[1].push_back(make_edge(2, 2 + i));
  for (auto& site : g.local_edges) std::sort(site.begin(), site.end());
  g.meta = reduction_meta(d, "sigma_c1");
  return g;
}

GraphPartitionInstance build_cycle_k(const ThreshInstance& t) {
  const auto& y = require_witness(t, "build_cycle_k");
  // vertices: v_j = j for j in [r], apex u = r + 1
  const std::uint32_t apex = t.r + 1;
  GraphPartitionInstance g;
  g.n = t.r + 1;
  g.k = t.k;
  g.allow_duplication = true;
  g.local_edges.assign(t.k, {});
  for (int i = 0; i < t.k; ++i) {
    for (std::uint32_t j = 0; j < t.r; ++j) {
      if (t.rows[i][j]) g.local_edges[i].push_back(make_edge(apex, j + 1));
    }
  }
  // match Y with the lexicographically first |Y| columns outside Y
  std::vector<std::uint8_t> in_y(t.r + 1, 0);
  for (std::uint32_t j : y) in_y[j] = 1;
  std::vector<std::uint32_t> ybar;
  for (std::uint32_t j = 1; j <= t.r && ybar.size() < y.size(); ++j) {
    if (!in_y[j]) ybar.push_back(j);
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    g.local_edges[0].push_back(make_edge(y[i], ybar[i]));
  }
  for (auto& site : g.local_edges) std::sort(site.begin(), site.end());
  g.meta = reduction_meta(t, "sigma_c2");
  return g;
}

namespace {

void append_path(std::vector<EdgeRec>& edges, const std::vector<std::uint32_t>& vertices) {
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    edges.push_back(make_edge(vertices[i - 1], vertices[i]));
  }
}

GraphPartitionInstance build_connectivity(const ThreshInstance& t, bool merged_apex) {
  const auto& y = require_witness(t, "build_connectivity");
  GraphPartitionInstance g;
  g.k = t.k;
  g.allow_duplication = merged_apex;
  g.local_edges.assign(t.k, {});

  // vertex layout: v_j first, then the site vertices (or the single apex)
  const auto v_of = [&](std::uint32_t j) { return j; };
  const std::uint32_t base = t.r;
  g.n = merged_apex ? t.r + 1 : t.r + static_cast<std::uint32_t>(t.k);

  for (int i = 0; i < t.k; ++i) {
    const std::uint32_t u_i = merged_apex ? base + 1 : base + 1 + static_cast<std::uint32_t>(i);
    for (std::uint32_t j = 0; j < t.r; ++j) {
      if (t.rows[i][j]) g.local_edges[i].push_back(make_edge(u_i, v_of(j + 1)));
    }
  }

  std::vector<std::uint8_t> in_y(t.r + 1, 0);
  for (std::uint32_t j : y) in_y[j] = 1;
  std::vector<std::uint32_t> path_y, path_rest;
  for (std::uint32_t j = 1; j <= t.r; ++j) {
    (in_y[j] ? path_y : path_rest).push_back(v_of(j));
  }
  append_path(g.local_edges[0], path_y);
  append_path(g.local_edges[0], path_rest);
  for (auto& site : g.local_edges) std::sort(site.begin(), site.end());
  g.meta = reduction_meta(t, merged_apex ? "sigma_n2" : "sigma_n1");
  return g;
}

GraphPartitionInstance build_bipartite(const ThreshInstance& t, bool merged_apex) {
  const auto& y = require_witness(t, "build_bipartite");
  // vertex layout: a_j = j, b_j = r + j, apexes after 2r
  GraphPartitionInstance g;
  g.k = t.k;
  g.allow_duplication = merged_apex;
  g.local_edges.assign(t.k, {});
  g.n = merged_apex ? 2 * t.r + 1 : 2 * t.r + static_cast<std::uint32_t>(t.k);
  const auto a_of = [&](std::uint32_t j) { return j; };
  const auto b_of = [&](std::uint32_t j) { return t.r + j; };
  for (int i = 0; i < t.k; ++i) {
    const std::uint32_t c_i =
        merged_apex ? 2 * t.r + 1 : 2 * t.r + 1 + static_cast<std::uint32_t>(i);
    for (std::uint32_t j = 0; j < t.r; ++j) {
      if (t.rows[i][j]) g.local_edges[i].push_back(make_edge(c_i, b_of(j + 1)));
    }
  }
  for (std::uint32_t j = 1; j <= t.r; ++j) {
    g.local_edges[0].push_back(make_edge(a_of(j), b_of(j)));
  }
  for (int i = 0; i < t.k; ++i) {
    const std::uint32_t c_i =
        merged_apex ? 2 * t.r + 1 : 2 * t.r + 1 + static_cast<std::uint32_t>(i);
    for (std::uint32_t j : y) g.local_edges[0].push_back(make_edge(c_i, a_of(j)));
    if (merged_apex) break;  // single apex: one batch of (c, a_j) edges suffices
  }
  for (auto& site : g.local_edges) {
    std::sort(site.begin(), site.end());
    site.erase(std::unique(site.begin(), site.end()), site.end());
  }
  g.meta = reduction_meta(t, merged_apex ? "sigma_b2" : "sigma_b1");
  return g;
}

// decode a pair index i in [1, n^2] into (p, q) with (p-1)*n + q = i
std::pair<std::uint32_t, std::uint32_t> decode_pair(std::uint64_t i, std::uint32_t n) {
  const std::uint32_t p = static_cast<std::uint32_t>((i - 1) / n + 1);
  const std::uint32_t q = static_cast<std::uint32_t>(i - static_cast<std::uint64_t>(p - 1) * n);
  return {p, q};
}

}  // namespace

GraphPartitionInstance build_connectivity_nodup(const ThreshInstance& t) {
  return build_connectivity(t, false);
}

GraphPartitionInstance build_connectivity_dup(const ThreshInstance& t) {
  return build_connectivity(t, true);
}

GraphPartitionInstance build_bipartite_nodup(const ThreshInstance& t) {
  return build_bipartite(t, false);
}

GraphPartitionInstance build_bipartite_dup(const ThreshInstance& t) {
  return build_bipartite(t, true);
}

GraphPartitionInstance build_triangle_2party(const DisjInstance& d, std::uint32_t n) {
  if (static_cast<std::uint64_t>(d.r) > static_cast<std::uint64_t>(n) * n) {
    throw UsageError("build_triangle_2party: need r <= n^2");
  }
  // vertex layout: a_p = p, b_p = n + p, c_q = 2n + q
  GraphPartitionInstance g;
  g.n = 3 * n;
  g.k = 2;
  g.allow_duplication = false;
  g.local_edges.assign(2, {});
  for (std::uint32_t i : d.x) {
    const auto [p, q] = decode_pair(i, n);
    g.local_edges[0].push_back(make_edge(p, 2 * n + q));
  }
  for (std::uint32_t tt = 1; tt <= n; ++tt) {
    g.local_edges[0].push_back(make_edge(tt, n + tt));
  }
  for (std::uint32_t i : d.y) {
    const auto [p, q] = decode_pair(i, n);
    g.local_edges[1].push_back(make_edge(n + p, 2 * n + q));
  }
  for (auto& site : g.local_edges) std::sort(site.begin(), site.end());
  g.meta = reduction_meta(d, "sigma_t1");
  return g;
}

GraphPartitionInstance build_triangle_k(const ThreshInstance& t, std::uint32_t n) {
  const auto& y = require_witness(t, "build_triangle_k");
  if (static_cast<std::uint64_t>(t.r) > static_cast<std::uint64_t>(n) * n) {
    throw UsageError("build_triangle_k: need r <= n^2");
  }
  GraphPartitionInstance g;
  g.n = 3 * n;
  g.k = t.k;
  g.allow_duplication = true;
  g.local_edges.assign(t.k, {});
  for (int i = 0; i < t.k; ++i) {
    for (std::uint32_t j = 0; j < t.r; ++j) {
      if (t.rows[i][j]) {
        const auto [p, q] = decode_pair(j + 1, n);
        g.local_edges[i].push_back(make_edge(p, 2 * n + q));
      }
    }
  }
  for (std::uint32_t tt = 1; tt <= n; ++tt) {
    g.local_edges[0].push_back(make_edge(tt, n + tt));
  }
  for (std::uint32_t j : y) {
    const auto [p, q] = decode_pair(j, n);
    g.local_edges[0].push_back(make_edge(n + p, 2 * n + q));
  }
  for (auto& site : g.local_edges) {
    std::sort(site.begin(), site.end());
    site.erase(std::unique(site.begin(), site.end()), site.end());
  }
  g.meta = reduction_meta(t, "sigma_t2");
  return g;
}

GraphPartitionInstance sample_gnm(std::uint32_t n, std::uint64_t m, int k, bool duplication,
                                  std::uint64_t seed, double dup_p) {
  if (n < 1 || k < 1) throw UsageError("sample_gnm: need n >= 1 and k >= 1");
  const std::uint64_t max_m = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > max_m) throw UsageError("sample_gnm: m exceeds n*(n-1)/2");
  SplitRng rng(seed);
  // sample m distinct pair indices by partial Fisher-Yates over [0, max_m)
  std::vector<std::uint64_t> idx(max_m);
  std::iota(idx.begin(), idx.end(), std::uint64_t{0});
  auto chosen = rng.sample_sorted(std::move(idx), m);

  GraphPartitionInstance g;
  g.n = n;
  g.k = k;
  g.allow_duplication = duplication;
  g.local_edges.assign(k, {});
  for (std::uint64_t code : chosen) {
    // decode pair index into (u, v), u < v
    std::uint64_t rem = code;
    std::uint32_t u = 1;
    while (rem >= n - u) {
      rem -= n - u;
      ++u;
    }
    const std::uint32_t v = u + 1 + static_cast<std::uint32_t>(rem);
    const int home = static_cast<int>(rng.below(k));
    g.local_edges[home].push_back(EdgeRec{u, v});
    if (duplication && k > 1) {
      for (int i = 0; i < k; ++i) {
        if (i != home && rng.bernoulli(dup_p)) g.local_edges[i].push_back(EdgeRec{u, v});
      }
    }
  }
  for (auto& site : g.local_edges) std::sort(site.begin(), site.end());
  InstanceMeta meta;
  meta.source_dist = "gnm";
  meta.seed = seed;
  g.meta = std::move(meta);
  return g;
}

GraphPartitionInstance sample_gnp(std::uint32_t n, double p, int k, bool duplication,
                                  std::uint64_t seed, double dup_p) {
  if (n < 1 || k < 1) throw UsageError("sample_gnp: need n >= 1 and k >= 1");
  SplitRng rng(seed);
  GraphPartitionInstance g;
  g.n = n;
  g.k = k;
  g.allow_duplication = duplication;
  g.local_edges.assign(k, {});
  for (std::uint32_t u = 1; u <= n; ++u) {
    for (std::uint32_t v = u + 1; v <= n; ++v) {
      if (!rng.bernoulli(p)) continue;
      const int home = static_cast<int>(rng.below(k));
      g.local_edges[home].push_back(EdgeRec{u, v});
      if (duplication && k > 1) {
        for (int i = 0; i < k; ++i) {
          if (i != home && rng.bernoulli(dup_p)) g.local_edges[i].push_back(EdgeRec{u, v});
        }
      }
    }
  }
  for (auto& site : g.local_edges) std::sort(site.begin(), site.end());
  InstanceMeta meta;
  meta.source_dist = "gnp";
  meta.seed = seed;
  g.meta = std::move(meta);
  return g;
}

SetFamilyInstance sample_random_sets(int k, std::uint64_t n, std::uint64_t max_size,
                                     std::uint64_t seed) {
  if (k < 1 || n < 1) throw UsageError("sample_random_sets: need k >= 1 and n >= 1");
  max_size = std::min(max_size, n);
  SplitRng rng(seed);
  SetFamilyInstance inst;
  inst.k = k;
  inst.n = n;
  std::vector<std::uint32_t> ground(n);
  std::iota(ground.begin(), ground.end(), 1u);
  for (int i = 0; i < k; ++i) {
    const std::uint64_t size = rng.below(max_size + 1);
    inst.sets.push_back(rng.sample_sorted(ground, size));
  }
  InstanceMeta meta;
  meta.source_dist = "sets";
  meta.seed = seed;
  inst.meta = std::move(meta);
  return inst;
}

}  // namespace msgpass
