#pragma once

#include <utility>
#include <vector>

#include "spanner/edge_set.hpp"
#include "spanner/graph.hpp"

namespace spanner {

// Unordered demand pairs, deduplicated, endpoints distinct.
struct PairSet {
  std::vector<std::pair<Vertex, Vertex>> pairs;  // normalized u < v, sorted

  static PairSet from(std::vector<std::pair<Vertex, Vertex>> raw);
  size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
};

// Smallest d in (r1, r2] minimizing |B=(c,d)| + |B=(c,d+1)|; the minimum is
// guaranteed to be at most 2|B(c,r)|/(r2-r1). One truncated BFS to depth r.
int bottleneck_radius(const Graph& g, Vertex c, int r1, int r2, int r);

// Smallest d in [lo, hi] minimizing |B=(c,d)| + |B=(c,d+1)| (the primitive
// behind bottleneck_radius, with an inclusive lower end).
int min_adjacent_layers(const Graph& g, Vertex c, int lo, int hi);

// Consistent family of tie-broken shortest paths for all pairs over S.
struct ConsistentPathFamily {
  std::vector<Vertex> sources;          // sorted S
  std::vector<TieBreakTree> trees;      // one per source, same order
  EdgeSet union_edges;                  // union over all pairwise paths
  size_t reachable_pairs = 0;

  // Path between two members of S (s -> t), empty when unreachable.
  std::vector<Vertex> path(Vertex s, Vertex t) const;
};

ConsistentPathFamily consistent_paths(const Graph& g,
                                      std::span<const Vertex> S,
                                      int threads = 1);

struct PreserverResult {
  EdgeSet edges;
  std::vector<std::pair<Vertex, Vertex>> unreachable;
};

// Union of tie-broken shortest paths for every pair; distances over the
// result equal graph distances exactly for each reachable pair.
PreserverResult distance_preserver(const Graph& g, const PairSet& P);

}  // namespace spanner
