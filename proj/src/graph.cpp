#include "spanner/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace spanner {

Graph Graph::from_edges(Vertex n, std::vector<Edge> edges) {
  std::vector<uint64_t> ranks(edges.size());
  // Default ranks keyed by canonical edge index, assigned after sorting.
  Graph g = from_edges_with_ranks(n, std::move(edges), std::move(ranks));
  // 48-bit ranks: rank sums along any path of < 2^16 edges cannot wrap, so
  // minimizing the summed rank stays additive under concatenation.
  for (size_t i = 0; i < g.edges_.size(); ++i)
    g.ranks_[i] = splitmix64(0x5eedULL ^ (i + 1)) >> 16;
  return g;
}

Graph Graph::from_edges_with_ranks(Vertex n, std::vector<Edge> edges,
                                   std::vector<uint64_t> ranks) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  if (ranks.size() != edges.size())
    throw std::invalid_argument("rank/edge count mismatch");
  std::vector<size_t> order(edges.size());
  for (auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return edges[a] < edges[b];
  });

  Graph g;
  g.n_ = n;
  g.edges_.reserve(edges.size());
  g.ranks_.reserve(edges.size());
  for (size_t i = 0; i < order.size(); ++i) {
    const Edge& e = edges[order[i]];
    if (!g.edges_.empty() && g.edges_.back() == e)
      throw std::invalid_argument("parallel edge");
    g.edges_.push_back(e);
    g.ranks_.push_back(ranks[order[i]]);
  }

  g.offsets_.assign(n + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (Vertex v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.adj_.resize(2 * g.edges_.size());
  g.adj_eid_.resize(2 * g.edges_.size());
  std::vector<size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (size_t eid = 0; eid < g.edges_.size(); ++eid) {
    const Edge& e = g.edges_[eid];
    g.adj_[cursor[e.u]] = e.v;
    g.adj_eid_[cursor[e.u]++] = static_cast<int32_t>(eid);
    g.adj_[cursor[e.v]] = e.u;
    g.adj_eid_[cursor[e.v]++] = static_cast<int32_t>(eid);
  }
  // Neighbor slots come out sorted because the canonical edge list is sorted
  // lexicographically only by (u,v); fix up each list.
  for (Vertex v = 0; v < n; ++v) {
    size_t lo = g.offsets_[v], hi = g.offsets_[v + 1];
    std::vector<std::pair<Vertex, int32_t>> tmp;
    tmp.reserve(hi - lo);
    for (size_t i = lo; i < hi; ++i) tmp.emplace_back(g.adj_[i], g.adj_eid_[i]);
    std::sort(tmp.begin(), tmp.end());
    for (size_t i = lo; i < hi; ++i) {
      g.adj_[i] = tmp[i - lo].first;
      g.adj_eid_[i] = tmp[i - lo].second;
    }
  }
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  return edge_id(u, v) >= 0;
}

int32_t Graph::edge_id(Vertex u, Vertex v) const {
  if (u == v) return -1;
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return -1;
  return adj_eid_[offsets_[u] + (it - nb.begin())];
}

uint64_t Graph::rank_of(Vertex u, Vertex v) const {
  int32_t eid = edge_id(u, v);
  if (eid < 0) throw std::invalid_argument("rank_of: no such edge");
  return ranks_[eid];
}

void bfs_into(const Graph& g, Vertex source, BfsScratch& s, int depth_limit) {
  g.check_vertex(source);
  s.ensure(g.vertex_count());
  s.queue.clear();
  s.dist[source] = 0;
  s.touched.push_back(source);
  s.queue.push_back(source);
  size_t head = 0;
  while (head < s.queue.size()) {
    Vertex u = s.queue[head++];
    int32_t du = s.dist[u];
    if (depth_limit >= 0 && du >= depth_limit) continue;
    for (Vertex w : g.neighbors(u)) {
      if (s.dist[w] == kInfDist) {
        s.dist[w] = du + 1;
        s.touched.push_back(w);
        s.queue.push_back(w);
      }
    }
  }
}

std::vector<int32_t> bfs_distances(const Graph& g, Vertex source) {
  g.check_vertex(source);
  BfsScratch s;
  bfs_into(g, source, s);
  std::vector<int32_t> out(g.vertex_count(), kInfDist);
  for (Vertex v : s.touched) out[v] = s.dist[v];
  return out;
}

Ball ball(const Graph& g, Vertex c, int r) {
  g.check_vertex(c);
  if (r < 0) throw std::invalid_argument("ball: negative radius");
  BfsScratch s;
  bfs_into(g, c, s, r);
  Ball b;
  b.center = c;
  b.radius = r;
  b.members.assign(s.touched.begin(), s.touched.end());
  std::sort(b.members.begin(), b.members.end());
  return b;
}

std::vector<Vertex> ball_boundary(const Graph& g, Vertex c, int d) {
  g.check_vertex(c);
  if (d < 0) throw std::invalid_argument("ball_boundary: negative depth");
  BfsScratch s;
  bfs_into(g, c, s, d);
  std::vector<Vertex> out;
  for (Vertex v : s.touched)
    if (s.dist[v] == d) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

TieBreakTree tie_break_bfs(const Graph& g, Vertex source) {
  g.check_vertex(source);
  Vertex n = g.vertex_count();
  TieBreakTree t;
  t.source = source;
  t.dist.assign(n, kInfDist);
  t.parent.assign(n, -1);
  t.rank_sum.assign(n, 0);

  std::vector<Vertex> queue;
  queue.reserve(n);
  t.dist[source] = 0;
  queue.push_back(source);
  size_t head = 0;
  while (head < queue.size()) {
    Vertex v = queue[head++];
    if (v != source) {
      // All depth d-1 vertices are finalized before any depth-d vertex pops,
      // so the parent choice below sees final rank sums.
      uint64_t best_sum = 0;
      Vertex best_parent = -1;
      auto nb = g.neighbors(v);
      for (size_t i = 0; i < nb.size(); ++i) {
        Vertex u = nb[i];
        if (t.dist[u] != t.dist[v] - 1) continue;
        uint64_t sum = t.rank_sum[u] + g.rank_of_edge(g.slot_edge_id(v, i));
        if (best_parent < 0 || sum < best_sum ||
            (sum == best_sum && u < best_parent)) {
          best_sum = sum;
          best_parent = u;
        }
      }
      t.parent[v] = best_parent;
      t.rank_sum[v] = best_sum;
    }
    for (Vertex w : g.neighbors(v)) {
      if (t.dist[w] == kInfDist) {
        t.dist[w] = t.dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return t;
}

bool TieBreakTree::extract_path_into(Vertex t, std::vector<Vertex>& out) const {
  out.clear();
  if (dist[t] == kInfDist) return false;
  for (Vertex v = t; v != -1; v = parent[v]) out.push_back(v);
  std::reverse(out.begin(), out.end());
  return true;
}

std::vector<Vertex> TieBreakTree::extract_path(Vertex t) const {
  std::vector<Vertex> out;
  extract_path_into(t, out);
  return out;
}

UniquePathResult unique_shortest_path(const Graph& g, Vertex s, Vertex t) {
  g.check_vertex(s);
  g.check_vertex(t);
  TieBreakTree tree = tie_break_bfs(g, s);
  UniquePathResult r;
  r.reachable = tree.extract_path_into(t, r.path);
  return r;
}

Graph gen_path(Vertex n) {
  if (n < 1) throw std::invalid_argument("gen_path: n < 1");
  std::vector<Edge> es;
  for (Vertex i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return Graph::from_edges(n, std::move(es));
}

Graph gen_cycle(Vertex n) {
  if (n < 3) throw std::invalid_argument("gen_cycle: n < 3");
  std::vector<Edge> es;
  for (Vertex i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  es.push_back({0, n - 1});
  return Graph::from_edges(n, std::move(es));
}

Graph gen_grid(Vertex rows, Vertex cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("gen_grid: empty");
  auto id = [cols](Vertex r, Vertex c) { return r * cols + c; };
  std::vector<Edge> es;
  for (Vertex r = 0; r < rows; ++r)
    for (Vertex c = 0; c < cols; ++c) {
      if (c + 1 < cols) es.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) es.push_back({id(r, c), id(r + 1, c)});
    }
  return Graph::from_edges(rows * cols, std::move(es));
}

Graph gen_gnm(Vertex n, size_t m, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_gnm: n < 1");
  size_t max_m = static_cast<size_t>(n) * (n - 1) / 2;
  if (m > max_m) throw std::invalid_argument("gen_gnm: m exceeds n(n-1)/2");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  std::unordered_set<uint64_t> seen;
  std::vector<Edge> es;
  es.reserve(m);
  while (es.size() < m) {
    Vertex u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    uint64_t key = (static_cast<uint64_t>(u) << 32) | static_cast<uint32_t>(v);
    if (seen.insert(key).second) es.push_back({u, v});
  }
  return Graph::from_edges(n, std::move(es));
}

InducedSubgraph induced_subgraph(const Graph& g,
                                 std::span<const Vertex> verts) {
  InducedSubgraph out;
  out.to_parent.assign(verts.begin(), verts.end());
  std::unordered_map<Vertex, Vertex> to_local;
  to_local.reserve(verts.size() * 2);
  for (size_t i = 0; i < verts.size(); ++i) {
    if (i > 0 && verts[i] <= verts[i - 1])
      throw std::invalid_argument("induced_subgraph: verts not sorted unique");
    to_local[verts[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> es;
  std::vector<uint64_t> ranks;
  for (Vertex u : verts) {
    Vertex lu = to_local[u];
    auto nb = g.neighbors(u);
    for (size_t i = 0; i < nb.size(); ++i) {
      Vertex w = nb[i];
      if (w <= u) continue;
      auto it = to_local.find(w);
      if (it == to_local.end()) continue;
      es.push_back({lu, it->second});
      ranks.push_back(g.rank_of_edge(g.slot_edge_id(u, i)));
    }
  }
  out.graph = Graph::from_edges_with_ranks(
      static_cast<Vertex>(verts.size()), std::move(es), std::move(ranks));
  return out;
}

Graph subgraph_from_edges(const Graph& g, const std::vector<Edge>& edges) {
  std::vector<Edge> es;
  std::vector<uint64_t> ranks;
  es.reserve(edges.size());
  ranks.reserve(edges.size());
  for (Edge e : edges) {
    int32_t eid = g.edge_id(e.u, e.v);
    if (eid < 0)
      throw std::invalid_argument("subgraph_from_edges: edge not in host graph");
    es.push_back(e);
    ranks.push_back(g.rank_of_edge(eid));
  }
  return Graph::from_edges_with_ranks(g.vertex_count(), std::move(es),
                                      std::move(ranks));
}

Graph load_edge_list(const std::string& path, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::pair<int64_t, int64_t>> raw;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    int64_t a, b;
    if (ls >> a >> b) raw.emplace_back(a, b);
  }
  LoadReport rep;
  std::vector<int64_t> labels;
  labels.reserve(raw.size() * 2);
  for (auto& [a, b] : raw) {
    labels.push_back(a);
    labels.push_back(b);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  bool dense = true;
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != static_cast<int64_t>(i)) { dense = false; break; }
  std::unordered_map<int64_t, Vertex> to_id;
  if (!dense) {
    rep.relabeled = true;
    to_id.reserve(labels.size() * 2);
    for (size_t i = 0; i < labels.size(); ++i)
      to_id[labels[i]] = static_cast<Vertex>(i);
  }
  Vertex n = static_cast<Vertex>(labels.size());
  std::unordered_set<uint64_t> seen;
  std::vector<Edge> es;
  for (auto& [a, b] : raw) {
    Vertex u = dense ? static_cast<Vertex>(a) : to_id[a];
    Vertex v = dense ? static_cast<Vertex>(b) : to_id[b];
    if (u == v) {
      ++rep.self_loops_rejected;
      continue;
    }
    if (u > v) std::swap(u, v);
    uint64_t key = (static_cast<uint64_t>(u) << 32) | static_cast<uint32_t>(v);
    if (!seen.insert(key).second) {
      ++rep.duplicates_rejected;
      continue;
    }
    es.push_back({u, v});
  }
  Graph g = Graph::from_edges(n, std::move(es));
  if (!dense) g.set_labels(std::move(labels));
  if (report) *report = rep;
  return g;
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  const auto& labels = g.labels();
  for (const Edge& e : g.edges()) {
    if (labels.empty())
      out << e.u << ' ' << e.v << '\n';
    else
      out << labels[e.u] << ' ' << labels[e.v] << '\n';
  }
}

}  // namespace spanner
