#include "spanner/clustering.hpp"

#include <algorithm>
#include <cmath>

namespace spanner {

uint64_t growth_threshold(Vertex n, double eps, uint64_t x) {
  if (x == 0) return 0;
  long double v = powl(static_cast<long double>(n), static_cast<long double>(eps)) *
                  static_cast<long double>(x);
  long double cap = 4e18L;
  if (v >= cap) return UINT64_MAX;
  return static_cast<uint64_t>(ceill(v));
}

namespace {

// Truncated BFS that also reports the half-radius prefix statistics and the
// volume of the visited set.
struct GrowthProbe {
  size_t half_size = 0;
  size_t quad_size = 0;
  uint64_t quad_vol = 0;
  uint64_t half_vol = 0;
};

GrowthProbe probe(const Graph& g, Vertex c, int r, BfsScratch& s) {
  GrowthProbe p;
  int half = r / 2;
  bfs_into(g, c, s, 4 * r);
  for (Vertex v : s.touched) {
    p.quad_vol += g.degree(v);
    if (s.dist[v] <= half) {
      ++p.half_size;
      p.half_vol += g.degree(v);
    }
  }
  p.quad_size = s.touched.size();
  return p;
}

}  // namespace

BallClustering build_clustering(const Graph& g, int R, double eps) {
  if (R < 1) throw std::invalid_argument("build_clustering: R < 1");
  if (!(eps > 0)) throw std::invalid_argument("build_clustering: eps <= 0");
  Vertex n = g.vertex_count();
  BallClustering cl;
  cl.base_radius = R;
  cl.growth_eps = eps;
  cl.covering_ball.assign(n, -1);

  std::vector<char> covered(n, 0);
  BfsScratch s;
  Vertex scan = 0;
  while (true) {
    while (scan < n && covered[scan]) ++scan;
    if (scan >= n) break;
    Vertex c = scan;
    int r = R;
    GrowthProbe p;
    while (true) {
      s.reset();
      p = probe(g, c, r, s);
      bool size_ok = p.quad_size <= growth_threshold(n, eps, p.half_size);
      bool vol_ok = p.quad_vol <= growth_threshold(n, eps, p.half_vol);
      if (size_ok && vol_ok) break;
      r *= 4;
    }
    ClusterBall b;
    b.center = c;
    b.radius = r;
    b.half_size = p.half_size;
    b.quad_size = p.quad_size;
    b.quad_vol = p.quad_vol;
    int idx = static_cast<int>(cl.balls.size());
    for (Vertex v : s.touched) {
      if (s.dist[v] <= r) {
        b.members.push_back(v);
        if (!covered[v]) {
          covered[v] = 1;
          cl.covering_ball[v] = idx;
        }
      }
    }
    s.reset();
    std::sort(b.members.begin(), b.members.end());
    cl.balls.push_back(std::move(b));
  }
  // covering_ball currently records the first ball that *newly* covered each
  // vertex; rewrite it as the lowest ball index containing the vertex.
  std::vector<int> lowest(n, -1);
  for (int i = static_cast<int>(cl.balls.size()) - 1; i >= 0; --i)
    for (Vertex v : cl.balls[i].members) lowest[v] = i;
  cl.covering_ball = std::move(lowest);
  return cl;
}

int32_t BallNeighborhood::dist_to(Vertex v) const {
  auto it = std::lower_bound(
      dists.begin(), dists.end(), v,
      [](const std::pair<Vertex, int32_t>& p, Vertex x) { return p.first < x; });
  if (it == dists.end() || it->first != v) return kInfDist;
  return it->second;
}

std::vector<Vertex> BallNeighborhood::vertices() const {
  std::vector<Vertex> out;
  out.reserve(dists.size());
  for (const auto& [v, d] : dists) out.push_back(v);
  return out;
}

BallScaffold build_scaffold(const Graph& g, const BallClustering& cl) {
  BallScaffold sc;
  sc.balls.resize(cl.balls.size());
  BfsScratch s;
  std::vector<Vertex> parent(g.vertex_count(), -1);
  for (size_t i = 0; i < cl.balls.size(); ++i) {
    const ClusterBall& b = cl.balls[i];
    BallNeighborhood& nb = sc.balls[i];
    s.reset();
    // Truncated BFS with parent tracking; neighbor lists are sorted, so the
    // parent choice (first discoverer) is deterministic.
    s.ensure(g.vertex_count());
    s.dist[b.center] = 0;
    s.touched.push_back(b.center);
    s.queue.push_back(b.center);
    size_t head = 0;
    int limit = 4 * b.radius;
    while (head < s.queue.size()) {
      Vertex u = s.queue[head++];
      if (s.dist[u] >= limit) continue;
      for (Vertex w : g.neighbors(u)) {
        if (s.dist[w] == kInfDist) {
          s.dist[w] = s.dist[u] + 1;
          parent[w] = u;
          s.touched.push_back(w);
          s.queue.push_back(w);
        }
      }
    }
    nb.dists.reserve(s.touched.size());
    nb.tree_edges.reserve(s.touched.size() - 1);
    for (Vertex v : s.touched) {
      nb.dists.push_back({v, s.dist[v]});
      if (v != b.center) {
        Vertex p = parent[v];
        nb.tree_edges.push_back({std::min(p, v), std::max(p, v)});
      }
      parent[v] = -1;
    }
    std::sort(nb.dists.begin(), nb.dists.end());
  }
  s.reset();
  return sc;
}

json ClusteringAudit::to_json() const {
  json j;
  j["schema"] = 1;
  j["pass"] = pass;
  j["coverage_ok"] = coverage_ok;
  j["radius_window_ok"] = radius_window_ok;
  j["growth_ok"] = growth_ok;
  j["capture_ok"] = capture_ok;
  j["separation_ok"] = separation_ok;
  j["ball_count"] = ball_count;
  j["max_capture"] = max_capture;
  j["capture_limit"] = capture_limit;
  j["sum_half"] = sum_half;
  j["sum_quad"] = sum_quad;
  j["sum_quad_vol"] = sum_quad_vol;
  j["half_constant"] = half_constant;
  j["quad_constant"] = quad_constant;
  j["vol_constant"] = vol_constant;
  return j;
}

ClusteringAudit audit_clustering(const Graph& g, const BallClustering& cl) {
  Vertex n = g.vertex_count();
  for (const ClusterBall& b : cl.balls) {
    if (b.center < 0 || b.center >= n)
      throw std::invalid_argument("audit_clustering: clustering/graph mismatch");
    for (Vertex v : b.members)
      if (v < 0 || v >= n)
        throw std::invalid_argument("audit_clustering: clustering/graph mismatch");
  }
  ClusteringAudit a;
  a.ball_count = cl.balls.size();
  a.capture_limit = 5.0 / cl.growth_eps;

  // Coverage.
  std::vector<char> covered(n, 0);
  for (const ClusterBall& b : cl.balls)
    for (Vertex v : b.members) covered[v] = 1;
  a.coverage_ok = std::all_of(covered.begin(), covered.end(),
                              [](char c) { return c != 0; });

  // Radius window r in [R, 2^{10/eps} R], saturating on the upper end.
  long double window = powl(2.0L, 10.0L / cl.growth_eps) *
                       static_cast<long double>(cl.base_radius);
  a.radius_window_ok = true;
  for (const ClusterBall& b : cl.balls) {
    if (b.radius < cl.base_radius) a.radius_window_ok = false;
    if (window < 4e18L && static_cast<long double>(b.radius) > window)
      a.radius_window_ok = false;
  }

  // Growth conditions and vertex-capture bound, recomputed from the graph.
  a.growth_ok = true;
  std::vector<int> capture(n, 0);
  BfsScratch s;
  for (const ClusterBall& b : cl.balls) {
    s.reset();
    bfs_into(g, b.center, s, 4 * b.radius);
    size_t half_size = 0, quad_size = s.touched.size(), ball_size = 0;
    uint64_t half_vol = 0, quad_vol = 0;
    int half = b.radius / 2;
    for (Vertex v : s.touched) {
      quad_vol += g.degree(v);
      if (s.dist[v] <= half) {
        ++half_size;
        half_vol += g.degree(v);
        ++capture[v];
      }
      if (s.dist[v] <= b.radius) ++ball_size;
    }
    if (ball_size != b.members.size()) a.growth_ok = false;
    if (quad_size > growth_threshold(n, cl.growth_eps, half_size))
      a.growth_ok = false;
    if (quad_vol > growth_threshold(n, cl.growth_eps, half_vol))
      a.growth_ok = false;
    if (half_size != b.half_size || quad_size != b.quad_size ||
        quad_vol != b.quad_vol)
      a.growth_ok = false;
    a.sum_half += half_size;
    a.sum_quad += quad_size;
    a.sum_quad_vol += quad_vol;
  }
  a.max_capture = capture.empty()
                      ? 0
                      : *std::max_element(capture.begin(), capture.end());
  a.capture_ok = a.max_capture <= a.capture_limit;

  // Separation, replayed in construction order: when ball j was added, any
  // earlier ball i whose half-radius ball intersects j's must satisfy
  // r_i <= r_j / 4. Half-radius membership is resolved via per-vertex lists.
  std::vector<std::vector<int>> capturers(n);
  {
    for (size_t i = 0; i < cl.balls.size(); ++i) {
      const ClusterBall& b = cl.balls[i];
      s.reset();
      bfs_into(g, b.center, s, b.radius / 2);
      for (Vertex v : s.touched) capturers[v].push_back(static_cast<int>(i));
    }
    s.reset();
  }
  a.separation_ok = true;
  for (Vertex v = 0; v < n && a.separation_ok; ++v) {
    const auto& list = capturers[v];
    for (size_t x = 0; x < list.size() && a.separation_ok; ++x)
      for (size_t y = x + 1; y < list.size(); ++y) {
        int early = list[x], late = list[y];  // construction order = index order
        if (cl.balls[early].radius > cl.balls[late].radius / 4) {
          a.separation_ok = false;
          break;
        }
      }
  }

  double neps = std::pow(static_cast<double>(n), cl.growth_eps);
  a.half_constant = a.sum_half / (n / cl.growth_eps);
  a.quad_constant = a.sum_quad / (n * neps / cl.growth_eps);
  a.vol_constant =
      g.edge_count() == 0
          ? 0
          : a.sum_quad_vol / (g.edge_count() * neps / cl.growth_eps);

  a.pass = a.coverage_ok && a.radius_window_ok && a.growth_ok && a.capture_ok &&
           a.separation_ok;
  return a;
}

}  // namespace spanner
