#pragma once

#include <functional>
#include <span>
#include <vector>

#include "spanner/clustering.hpp"
#include "spanner/graph.hpp"

namespace spanner {

// One hosted segment of a shortest path: the subpath pi[first..last]
// (inclusive positions into pi) with endpoints (s_i, t_i), hosted by ball
// `ball` of the clustering. The host contains s_i at radius r and t_i at 2r.
struct PathSegment {
  size_t first = 0;
  size_t last = 0;
  Vertex s = 0;
  Vertex t = 0;
  int ball = -1;
};

struct PathPartition {
  std::vector<PathSegment> segments;
  size_t length() const { return segments.size(); }
};

// Directed left-to-right scan: host of the current start vertex is its lowest
// covering ball; each segment ends at the last path vertex within twice the
// host radius. Throws std::invalid_argument if pi is not a path of g and
// StateError (std::runtime_error) if the clustering misses a path vertex.
// Preconditions beyond that (pi being a shortest path) are the caller's.
PathPartition path_partition(const Graph& g, std::span<const Vertex> pi,
                             const BallClustering& cl, const BallScaffold& sc);

// Streaming form used by the builders: visit(seg) returning false aborts the
// scan early (the partition prefix is unchanged by the abort). No validation.
void visit_partition(std::span<const Vertex> pi, const BallClustering& cl,
                     const BallScaffold& sc,
                     const std::function<bool(const PathSegment&)>& visit);

// Exact verifier for the partition guarantees: chained endpoints, distinct
// hosts, start/end containment at radius r / 2r, every segment vertex within
// 4r of its host center, segment count <= |pi|/R + 1, and interior segments
// of length >= r_i. Distances are recomputed with fresh BFS runs.
struct PartitionCheck {
  bool ok = false;
  std::string failure;
};
PartitionCheck check_partition(const Graph& g, std::span<const Vertex> pi,
                               const BallClustering& cl,
                               const PathPartition& pp);

}  // namespace spanner
