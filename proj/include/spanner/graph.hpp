#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spanner {

using Vertex = int32_t;

// Sentinel for "unreachable"; safe to compare with `<=` against any real hop count.
inline constexpr int32_t kInfDist = std::numeric_limits<int32_t>::max();

struct Edge {
  Vertex u = 0, v = 0;  // canonical: u < v
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Immutable undirected unweighted graph in CSR form. Vertex ids are dense
// 0..n-1, neighbor lists sorted ascending, no self-loops or parallel edges.
// Each canonical edge carries a 64-bit rank used for shortest-path
// tie-breaking; subgraphs inherit the ranks of their parent so tie-broken
// paths agree across graph and subgraph.
class Graph {
 public:
  Graph() = default;

  // Throws std::invalid_argument on self-loops, duplicates or out-of-range ids.
  static Graph from_edges(Vertex n, std::vector<Edge> edges);
  static Graph from_edges_with_ranks(Vertex n, std::vector<Edge> edges,
                                     std::vector<uint64_t> ranks);

  Vertex vertex_count() const { return n_; }
  size_t edge_count() const { return edges_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  int degree(Vertex v) const {
    return static_cast<int>(offsets_[v + 1] - offsets_[v]);
  }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(Vertex u, Vertex v) const;
  // Canonical edge index of (u,v), or -1.
  int32_t edge_id(Vertex u, Vertex v) const;
  uint64_t rank_of_edge(int32_t eid) const { return ranks_[eid]; }
  uint64_t rank_of(Vertex u, Vertex v) const;
  // Edge id of the i-th neighbor slot of v (aligned with neighbors(v)).
  int32_t slot_edge_id(Vertex v, size_t i) const {
    return adj_eid_[offsets_[v] + i];
  }

  // Original vertex labels when the graph was loaded from a file with sparse
  // ids; empty means identity labels.
  const std::vector<int64_t>& labels() const { return labels_; }
  void set_labels(std::vector<int64_t> labels) { labels_ = std::move(labels); }

  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex id out of range");
  }

 private:
  Vertex n_ = 0;
  std::vector<size_t> offsets_;
  std::vector<Vertex> adj_;
  std::vector<int32_t> adj_eid_;
  std::vector<Edge> edges_;
  std::vector<uint64_t> ranks_;
  std::vector<int64_t> labels_;
};

// ---- BFS primitives ------------------------------------------------------

// Reusable BFS workspace; dist entries are only valid for vertices listed in
// `touched` after a run, and must be reset before the next run.
struct BfsScratch {
  std::vector<int32_t> dist;
  std::vector<Vertex> queue;
  std::vector<Vertex> touched;

  void ensure(Vertex n) {
    if (dist.size() < static_cast<size_t>(n)) dist.resize(n, kInfDist);
  }
  void reset() {
    for (Vertex v : touched) dist[v] = kInfDist;
    touched.clear();
    queue.clear();
  }
};

// Truncated BFS from src (depth_limit < 0 means unbounded). Touched vertices
// are appended in BFS order; scratch must be clean on entry.
void bfs_into(const Graph& g, Vertex source, BfsScratch& scratch,
              int depth_limit = -1);

// Full distance vector (kInfDist for unreachable).
std::vector<int32_t> bfs_distances(const Graph& g, Vertex source);

// ---- Balls ----------------------------------------------------------------

struct Ball {
  Vertex center = 0;
  int radius = 0;
  std::vector<Vertex> members;  // sorted ascending
};

Ball ball(const Graph& g, Vertex c, int r);
std::vector<Vertex> ball_boundary(const Graph& g, Vertex c, int d);

// ---- Tie-broken unique shortest paths --------------------------------------

// Shortest-path tree under the deterministic tie-break: among equal hop
// counts, minimize the summed edge rank, then the parent id.
struct TieBreakTree {
  Vertex source = 0;
  std::vector<int32_t> dist;
  std::vector<Vertex> parent;     // -1 for source / unreachable
  std::vector<uint64_t> rank_sum;

  // Path source -> t, empty if unreachable.
  std::vector<Vertex> extract_path(Vertex t) const;
  // Appends the path into out (cleared first); returns false if unreachable.
  bool extract_path_into(Vertex t, std::vector<Vertex>& out) const;
};

TieBreakTree tie_break_bfs(const Graph& g, Vertex source);

struct UniquePathResult {
  bool reachable = false;
  std::vector<Vertex> path;  // s..t when reachable
};

UniquePathResult unique_shortest_path(const Graph& g, Vertex s, Vertex t);

// ---- Generators -------------------------------------------------------------

Graph gen_path(Vertex n);
Graph gen_cycle(Vertex n);
Graph gen_grid(Vertex rows, Vertex cols);
// m distinct non-loop edges drawn uniformly; deterministic under seed.
Graph gen_gnm(Vertex n, size_t m, uint64_t seed);

// ---- Subgraphs ---------------------------------------------------------------

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;  // local id -> parent id
};

// verts must be sorted ascending and duplicate-free.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> verts);

// Same vertex set, edge subset; ranks inherited (edges must exist in g).
Graph subgraph_from_edges(const Graph& g, const std::vector<Edge>& edges);

// ---- Edge-list I/O -----------------------------------------------------------

struct LoadReport {
  size_t self_loops_rejected = 0;
  size_t duplicates_rejected = 0;
  bool relabeled = false;
};

Graph load_edge_list(const std::string& path, LoadReport* report = nullptr);
void save_edge_list(const Graph& g, const std::string& path);

}  // namespace spanner
