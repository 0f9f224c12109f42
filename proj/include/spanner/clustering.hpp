#pragma once

#include <cstdint>
#include <vector>

#include "spanner/edge_set.hpp"
#include "spanner/graph.hpp"

namespace spanner {

// One ball of a clustering, with the audit statistics captured while the
// growth loop ran. Members hold B(c,r) sorted.
struct ClusterBall {
  Vertex center = 0;
  int radius = 0;
  std::vector<Vertex> members;
  size_t half_size = 0;   // |B(c, floor(r/2))|
  size_t quad_size = 0;   // |B(c, 4r)|
  uint64_t quad_vol = 0;  // vol(B(c, 4r))
};

// Covering family of balls produced by the iterative grow-until-stable
// procedure. Balls appear in construction order.
struct BallClustering {
  int base_radius = 1;   // R
  double growth_eps = 0; // eps
  std::vector<ClusterBall> balls;

  // Lowest index of a ball whose members contain v (the balls cover V).
  std::vector<int> covering_ball;
};

// Grow-until-stable clustering: repeatedly takes the lowest-id uncovered
// vertex c, grows r from R by factors of 4 until both |B(c,4r)| and
// vol(B(c,4r)) are within a factor ceil(n^eps * .) of the half-radius ball,
// then commits B(c,r). R >= 1 required.
BallClustering build_clustering(const Graph& g, int R, double eps);

struct ClusteringAudit {
  bool pass = false;
  bool coverage_ok = false;
  bool radius_window_ok = false;
  bool growth_ok = false;
  bool capture_ok = false;
  bool separation_ok = false;
  size_t ball_count = 0;
  int max_capture = 0;          // max over v of #balls with dist(c,v) <= r/2
  double capture_limit = 0;     // 5/eps
  uint64_t sum_half = 0;        // sum |B(c, r/2)|
  uint64_t sum_quad = 0;        // sum |B(c, 4r)|
  uint64_t sum_quad_vol = 0;    // sum vol(B(c, 4r))
  double half_constant = 0;     // sum_half / (n/eps)
  double quad_constant = 0;     // sum_quad / (n^{1+eps}/eps)
  double vol_constant = 0;      // sum_quad_vol / (m n^eps / eps)

  json to_json() const;
};

// Re-derives every guarantee of the clustering from scratch: coverage,
// radius window [R, 2^{10/eps} R], the two growth conditions, the capture
// bound (<= 5/eps balls capture any vertex at half radius), and the replayed
// separation property (earlier overlapping-at-half-radius balls have radius
// <= r/4). Throws std::invalid_argument if cl does not fit g.
ClusteringAudit audit_clustering(const Graph& g, const BallClustering& cl);

// Integer threshold ceil(n^eps * x), saturating.
uint64_t growth_threshold(Vertex n, double eps, uint64_t x);

// Materialized 4r-neighborhood of one ball: every vertex of B(c,4r) with its
// distance from the center, plus a BFS tree rooted at c spanning them.
struct BallNeighborhood {
  std::vector<std::pair<Vertex, int32_t>> dists;  // sorted by vertex
  std::vector<Edge> tree_edges;

  int32_t dist_to(Vertex v) const;  // kInfDist when outside B(c,4r)
  bool within(Vertex v, int32_t d) const { return dist_to(v) <= d; }
  std::vector<Vertex> vertices() const;
};

// One neighborhood per ball of the clustering, in ball order.
struct BallScaffold {
  std::vector<BallNeighborhood> balls;
};

BallScaffold build_scaffold(const Graph& g, const BallClustering& cl);

}  // namespace spanner
