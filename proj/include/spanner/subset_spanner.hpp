#pragma once

#include <optional>
#include <vector>

#include "spanner/clustering.hpp"
#include "spanner/edge_set.hpp"
#include "spanner/graph.hpp"

namespace spanner {

// Audit-facing view of a subset-spanner build.
struct SubsetSpannerState {
  std::vector<Vertex> terminals;       // sorted U
  double eps = 0;
  int base_radius = 1;                 // R = ceil(|U|^{3/2})
  BallClustering clustering;
  std::vector<char> small;             // per ball: |B(c,r)| <= |U|^2
  std::vector<int> bottleneck_d;       // per small ball, -1 otherwise
  std::vector<size_t> boundary_size;   // |B=(c,d) u B=(c,d+1)| per small ball
  // Per vertex: (small-ball index, dist from its center) for the trimmed
  // balls B(c,d) containing it.
  std::vector<std::vector<std::pair<int, int>>> b1_cover;
  std::vector<size_t> bought_paths;    // per ball (large balls only)
};

enum class BoundaryStatus { kUncovered, kCovered, kCoveredAtBoundary };

// Status of v against the trimmed small-ball family: covered-at-boundary
// means v lies on the boundary layer of every trimmed ball containing it.
BoundaryStatus boundary_coverage_status(const SubsetSpannerState& st, Vertex v);

// Subset spanner on terminal set U: for every pair u,u' of U the spanner
// distance exceeds the graph distance by at most 24 * ceil(|U|^{3/2}) * n^eps.
// The state_out view (optional) exposes the clustering, trimmed balls and
// purchase counters for the auditors.
SpannerResult build_subset_spanner(const Graph& g, std::vector<Vertex> U,
                                   double eps,
                                   SubsetSpannerState* state_out = nullptr,
                                   int threads = 1);

// Certificate walk for a fully covered pair: the alternating vertex
// sequences hopping between trimmed-ball boundary layers along the unique
// shortest path. Verifier-side diagnostic.
struct BoundaryWalk {
  bool valid = false;
  std::string failure;
  std::vector<int> balls;       // small-ball index per hop
  std::vector<Vertex> u_seq;    // u_0 = s, ..., u_l = t
  std::vector<Vertex> v_seq;    // v_0 = s, v_1, ..., v_{l-1}
};

BoundaryWalk boundary_walk_certificate(const Graph& g,
                                       const SubsetSpannerState& st, Vertex s,
                                       Vertex t);

}  // namespace spanner
