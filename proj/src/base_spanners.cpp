#include "spanner/base_spanners.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

namespace spanner {

namespace {

// Cluster scaffolding: greedily form disjoint radius-1 clusters of at least
// theta unclustered vertices; keep the stars plus every edge that still has
// an unclustered endpoint. Every missing edge then joins two clustered
// vertices.
size_t cluster_scaffold(const Graph& g, int theta, EdgeSet& h) {
  Vertex n = g.vertex_count();
  std::vector<char> clustered(n, 0);
  size_t clusters = 0;
  for (Vertex v = 0; v < n; ++v) {
    int free_nbrs = 0;
    for (Vertex w : g.neighbors(v))
      if (!clustered[w]) ++free_nbrs;
    if (free_nbrs < theta) continue;
    ++clusters;
    clustered[v] = 1;
    for (Vertex w : g.neighbors(v)) {
      if (clustered[w]) continue;
      clustered[w] = 1;
      h.insert(v, w, EdgeRule::kBaseCluster);
    }
  }
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v))
      if (v < w && (!clustered[v] || !clustered[w]))
        h.insert(v, w, EdgeRule::kBaseCluster);
  return clusters;
}

Plus6Result plus6_impl(const Graph& g,
                       const std::vector<std::pair<Vertex, Vertex>>& pairs,
                       int theta) {
  Plus6Result out;
  out.cluster_count = cluster_scaffold(g, theta, out.edges);

  Graph h = out.edges.to_graph(g);
  BfsScratch dg, dh;
  std::vector<Vertex> buf;
  Vertex cur_source = -1;
  bool h_dirty = true;
  for (auto [s, t] : pairs) {
    if (s != cur_source || h_dirty) {
      if (s != cur_source) {
        dg.reset();
        bfs_into(g, s, dg);
        cur_source = s;
      }
      if (h_dirty) {
        h = out.edges.to_graph(g);
        h_dirty = false;
      }
      dh.reset();
      bfs_into(h, s, dh);
    }
    if (dg.dist[t] == kInfDist) {
      out.unreachable.emplace_back(s, t);
      continue;
    }
    if (dh.dist[t] != kInfDist && dh.dist[t] <= dg.dist[t] + 6) continue;
    // Over budget: buy the missing edges of the tie-broken shortest path.
    auto path = unique_shortest_path(g, s, t);
    for (size_t i = 0; i + 1 < path.path.size(); ++i)
      out.edges.insert(path.path[i], path.path[i + 1], EdgeRule::kBaseBuy);
    ++out.bought_paths;
    h_dirty = true;
  }
  return out;
}

}  // namespace

Plus6Result plus6_pairwise_spanner(const Graph& g, const PairSet& P) {
  int theta = std::max(
      1, static_cast<int>(std::ceil(std::pow(
             static_cast<double>(std::max<size_t>(1, P.size())), 0.25))));
  return plus6_impl(g, P.pairs, theta);
}

Plus6Result plus6_allpairs_spanner(const Graph& g) {
  Vertex n = g.vertex_count();
  int theta = std::max(
      1, static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n)))));
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (Vertex s = 0; s < n; ++s)
    for (Vertex t = s + 1; t < n; ++t) pairs.emplace_back(s, t);
  return plus6_impl(g, pairs, theta);
}

EdgeSet multiplicative_spanner(const Graph& g, int k, uint64_t seed) {
  if (k < 1) throw std::invalid_argument("multiplicative_spanner: k < 1");
  Vertex n = g.vertex_count();
  EdgeSet h;
  // cluster[v]: id of v's current cluster (its original center), -1 inactive.
  std::vector<Vertex> cluster(n);
  for (Vertex v = 0; v < n; ++v) cluster[v] = v;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  double p = std::pow(static_cast<double>(std::max<Vertex>(n, 2)), -1.0 / k);

  std::vector<char> sampled(n, 0);
  std::vector<Vertex> next_cluster(n, -1);
  std::unordered_map<Vertex, Vertex> adj_clusters;  // cluster id -> lowest nbr

  for (int round = 1; round < k; ++round) {
    std::fill(sampled.begin(), sampled.end(), 0);
    std::vector<char> present(n, 0);
    for (Vertex v = 0; v < n; ++v)
      if (cluster[v] >= 0) present[cluster[v]] = 1;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (Vertex c = 0; c < n; ++c)
      if (present[c] && coin(rng) < p) sampled[c] = 1;

    std::fill(next_cluster.begin(), next_cluster.end(), -1);
    for (Vertex v = 0; v < n; ++v) {
      if (cluster[v] < 0) continue;
      if (sampled[cluster[v]]) {
        next_cluster[v] = cluster[v];
        continue;
      }
      // Lowest-id neighbor inside a sampled cluster, if any.
      Vertex join = -1;
      for (Vertex w : g.neighbors(v)) {
        if (cluster[w] >= 0 && sampled[cluster[w]]) {
          join = w;
          break;
        }
      }
      if (join >= 0) {
        h.insert(v, join, EdgeRule::kMultiplicative);
        next_cluster[v] = cluster[join];
      } else {
        adj_clusters.clear();
        for (Vertex w : g.neighbors(v)) {
          if (cluster[w] < 0) continue;
          auto [it, fresh] = adj_clusters.try_emplace(cluster[w], w);
          if (!fresh && w < it->second) it->second = w;
        }
        for (const auto& [c, w] : adj_clusters)
          h.insert(v, w, EdgeRule::kMultiplicative);
        next_cluster[v] = -1;
      }
    }
    cluster = next_cluster;
  }

  // Final round: every active vertex connects once to each adjacent cluster.
  for (Vertex v = 0; v < n; ++v) {
    if (cluster[v] < 0) continue;
    adj_clusters.clear();
    for (Vertex w : g.neighbors(v)) {
      if (cluster[w] < 0 || cluster[w] == cluster[v]) continue;
      auto [it, fresh] = adj_clusters.try_emplace(cluster[w], w);
      if (!fresh && w < it->second) it->second = w;
    }
    for (const auto& [c, w] : adj_clusters)
      h.insert(v, w, EdgeRule::kMultiplicative);
  }
  return h;
}

}  // namespace spanner
