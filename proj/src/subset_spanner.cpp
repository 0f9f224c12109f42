#include "spanner/subset_spanner.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "spanner/pairwise_sublinear.hpp"
#include "spanner/parallel.hpp"
#include "spanner/preservers.hpp"

namespace spanner {

BoundaryStatus boundary_coverage_status(const SubsetSpannerState& st,
                                        Vertex v) {
  const auto& cover = st.b1_cover[v];
  if (cover.empty()) return BoundaryStatus::kUncovered;
  for (auto [ball, dist] : cover)
    if (dist != st.bottleneck_d[ball]) return BoundaryStatus::kCovered;
  return BoundaryStatus::kCoveredAtBoundary;
}

SpannerResult build_subset_spanner(const Graph& g, std::vector<Vertex> U,
                                   double eps, SubsetSpannerState* state_out,
                                   int threads) {
  if (!(eps > 0)) throw std::invalid_argument("build_subset_spanner: eps <= 0");
  for (Vertex u : U) g.check_vertex(u);
  std::sort(U.begin(), U.end());
  U.erase(std::unique(U.begin(), U.end()), U.end());

  SpannerResult out;
  out.log["terminals"] = U.size();
  out.log["eps"] = eps;

  Vertex n = g.vertex_count();
  SubsetSpannerState st;
  st.terminals = U;
  st.eps = eps;
  if (n <= 1) {
    out.finish_log("subset");
    if (state_out) *state_out = std::move(st);
    return out;
  }

  int R = std::max<int>(
      1, static_cast<int>(ceill(
             powl(static_cast<long double>(U.size()), 1.5L))));
  double eps_prime = 10.0 / (eps * std::log2(static_cast<double>(n)));
  st.base_radius = R;
  st.clustering = build_clustering(g, R, eps_prime);
  const BallClustering& cl = st.clustering;
  BallScaffold sc = build_scaffold(g, cl);
  out.log["R"] = R;
  out.log["clustering_eps"] = eps_prime;
  out.log["ball_count"] = cl.balls.size();

  for (size_t i = 0; i < sc.balls.size(); ++i)
    for (const Edge& e : sc.balls[i].tree_edges)
      out.edges.insert(e.u, e.v, EdgeRule::kBallTree);

  // Small/large split and trimmed balls for the small ones.
  size_t usq = U.size() * U.size();
  st.small.resize(cl.balls.size());
  st.bottleneck_d.assign(cl.balls.size(), -1);
  st.boundary_size.assign(cl.balls.size(), 0);
  st.b1_cover.assign(n, {});
  st.bought_paths.assign(cl.balls.size(), 0);
  size_t small_count = 0;
  std::vector<std::vector<Vertex>> boundaries(cl.balls.size());
  for (size_t i = 0; i < cl.balls.size(); ++i) {
    st.small[i] = cl.balls[i].members.size() <= usq;
    if (!st.small[i]) continue;
    ++small_count;
    const ClusterBall& b = cl.balls[i];
    int d = min_adjacent_layers(g, b.center, b.radius, 2 * b.radius);
    st.bottleneck_d[i] = d;
    const BallNeighborhood& nb = sc.balls[i];
    for (const auto& [v, dist] : nb.dists) {
      if (dist <= d) st.b1_cover[v].push_back({static_cast<int>(i), dist});
      if (dist == d || dist == d + 1) boundaries[i].push_back(v);
    }
    st.boundary_size[i] = boundaries[i].size();
    if (boundaries[i].size() > 2 * nb.dists.size() / std::max(b.radius, 1))
      throw InvariantViolation("boundary layer pair exceeds 2|B(c,4r)|/r");
  }

  // Boundary-pair preservers, one per trimmed ball, built in parallel.
  std::vector<EdgeSet> local_edges(cl.balls.size());
  parallel_for(0, cl.balls.size(), threads, [&](size_t i) {
    if (!st.small[i] || boundaries[i].size() < 2) return;
    const BallNeighborhood& nb = sc.balls[i];
    auto verts = nb.vertices();
    std::sort(verts.begin(), verts.end());
    InducedSubgraph sub = induced_subgraph(g, verts);
    std::vector<Vertex> local_terms;
    local_terms.reserve(boundaries[i].size());
    for (Vertex v : boundaries[i]) {
      auto it = std::lower_bound(verts.begin(), verts.end(), v);
      local_terms.push_back(static_cast<Vertex>(it - verts.begin()));
    }
    ConsistentPathFamily fam = consistent_paths(sub.graph, local_terms);
    for (const Edge& e : fam.union_edges.sorted_edges())
      local_edges[i].insert(sub.to_parent[e.u], sub.to_parent[e.v],
                            EdgeRule::kBoundaryPreserver);
  });
  {
    json bsizes = json::array();
    for (size_t i = 0; i < cl.balls.size(); ++i) {
      out.edges.merge(local_edges[i]);
      if (st.small[i] && bsizes.size() < 2048)
        bsizes.push_back(st.boundary_size[i]);
    }
    out.log["boundary_sizes"] = std::move(bsizes);
  }
  out.log["small_balls"] = small_count;

  // Terminal paths over the large balls.
  ConsistentPathFamily fam = consistent_paths(g, U, threads);
  std::unordered_map<int, std::unordered_set<Vertex>> settled;  // large only
  size_t bought = 0, skipped = 0, fully_covered = 0;
  json unreachable = json::array();
  std::vector<Vertex> path;
  for (size_t a = 0; a < fam.sources.size(); ++a) {
    for (size_t b = a + 1; b < fam.sources.size(); ++b) {
      Vertex s = fam.sources[a], t = fam.sources[b];
      if (!fam.trees[a].extract_path_into(t, path)) {
        unreachable.push_back({s, t});
        continue;
      }
      // Skip rule: some on-path vertex whose chosen ball is large and has
      // both endpoints settled.
      bool skip = false;
      for (Vertex x : path) {
        int c = cl.covering_ball[x];
        if (st.small[c]) continue;
        auto it = settled.find(c);
        if (it != settled.end() && it->second.count(s) && it->second.count(t)) {
          skip = true;
          break;
        }
      }
      if (skip) {
        ++skipped;
        continue;
      }
      // Maximal covered stretches: check their endpoints sit on boundary
      // layers, then buy every edge outside them.
      bool all_covered = true;
      for (size_t i = 0; i < path.size(); ++i) {
        bool covered = !st.b1_cover[path[i]].empty();
        if (!covered) all_covered = false;
        bool prev_covered = i > 0 && !st.b1_cover[path[i - 1]].empty();
        if (covered && i > 0 && !prev_covered && path[i] != t) {
          // Start of a maximal covered run that is not s.
          if (boundary_coverage_status(st, path[i]) !=
              BoundaryStatus::kCoveredAtBoundary)
            throw InvariantViolation("covered-run start not at boundary");
        }
        if (!covered && i > 0 && prev_covered && path[i - 1] != s) {
          // path[i-1] ended a maximal covered run.
          if (boundary_coverage_status(st, path[i - 1]) !=
              BoundaryStatus::kCoveredAtBoundary)
            throw InvariantViolation("covered-run end not at boundary");
        }
      }
      if (all_covered) {
        ++fully_covered;
        continue;  // nothing to buy, no settling needed
      }
      ++bought;
      for (size_t i = 0; i + 1 < path.size(); ++i)
        if (st.b1_cover[path[i]].empty() || st.b1_cover[path[i + 1]].empty())
          out.edges.insert(path[i], path[i + 1], EdgeRule::kBoughtPath);
      std::unordered_set<int> touched;
      for (Vertex x : path) {
        int c = cl.covering_ball[x];
        if (st.small[c]) continue;
        settled[c].insert(s);
        settled[c].insert(t);
        if (touched.insert(c).second) ++st.bought_paths[c];
      }
    }
  }
  out.log["terminal_paths_bought"] = bought;
  out.log["terminal_paths_skipped"] = skipped;
  out.log["terminal_paths_fully_covered"] = fully_covered;
  out.log["unreachable_terminal_pairs"] = unreachable;
  {
    bool ok = true;
    json counts = json::array();
    for (size_t i = 0; i < st.bought_paths.size(); ++i) {
      if (st.bought_paths[i] == 0) continue;
      if (st.bought_paths[i] > U.size()) ok = false;
      counts.push_back({static_cast<int>(i), st.bought_paths[i]});
    }
    out.log["bought_paths_per_large_ball"] = counts;
    if (!ok)
      throw InvariantViolation("large ball bought more paths than |U|");
  }

  // Self-check: measured stretch over the terminal pairs.
  if (U.size() >= 2) {
    Graph h = out.edges.to_graph(g);
    int64_t max_err = 0;
    bool disconnected = false;
    for (size_t a = 0; a < fam.sources.size(); ++a) {
      auto dh = bfs_distances(h, fam.sources[a]);
      for (size_t b = a + 1; b < fam.sources.size(); ++b) {
        int32_t dg = fam.trees[a].dist[fam.sources[b]];
        if (dg == kInfDist) continue;
        if (dh[fam.sources[b]] == kInfDist) {
          disconnected = true;
          continue;
        }
        max_err = std::max<int64_t>(max_err, dh[fam.sources[b]] - dg);
      }
    }
    long double bound = 24.0L * R *
                        powl(static_cast<long double>(n),
                             static_cast<long double>(eps));
    out.log["measured_max_error"] = max_err;
    out.log["error_bound"] = static_cast<double>(bound);
    out.log["terminal_pair_disconnected"] = disconnected;
    if (!disconnected && static_cast<long double>(max_err) > bound)
      throw InvariantViolation("subset stretch exceeded 24 R n^eps");
  }

  out.finish_log("subset");
  if (state_out) *state_out = std::move(st);
  return out;
}

BoundaryWalk boundary_walk_certificate(const Graph& g,
                                       const SubsetSpannerState& st, Vertex s,
                                       Vertex t) {
  BoundaryWalk walk;
  auto fail = [&](std::string why) {
    walk.valid = false;
    walk.failure = std::move(why);
    return walk;
  };
  auto res = unique_shortest_path(g, s, t);
  if (!res.reachable) return fail("pair unreachable");
  const auto& path = res.path;
  for (Vertex v : path)
    if (st.b1_cover[v].empty()) return fail("path not fully covered");

  std::unordered_map<int, std::vector<int32_t>> center_dist;
  auto dist_from = [&](int ball) -> const std::vector<int32_t>& {
    auto it = center_dist.find(ball);
    if (it == center_dist.end())
      it = center_dist
               .emplace(ball,
                        bfs_distances(g, st.clustering.balls[ball].center))
               .first;
    return it->second;
  };
  // Among trimmed balls touching the prefix path[0..up_to], the one whose
  // trimmed radius reaches the farthest along the path.
  auto pick_ball = [&](size_t up_to) -> int {
    int best_ball = -1;
    size_t best_reach = 0;
    std::unordered_set<int> seen;
    for (size_t i = 0; i <= up_to; ++i)
      for (auto [ball, d] : st.b1_cover[path[i]]) {
        (void)d;
        if (!seen.insert(ball).second) continue;
        const auto& dc = dist_from(ball);
        size_t reach = 0;
        for (size_t j = 0; j < path.size(); ++j)
          if (dc[path[j]] <= st.bottleneck_d[ball]) reach = j;
        if (best_ball < 0 || reach > best_reach ||
            (reach == best_reach && ball < best_ball)) {
          best_ball = ball;
          best_reach = reach;
        }
      }
    return best_ball;
  };

  walk.u_seq.push_back(s);
  walk.v_seq.push_back(s);
  std::vector<size_t> u_positions{0};
  while (path[u_positions.back()] != t) {
    int ball = pick_ball(u_positions.back());
    if (ball < 0) return fail("no trimmed ball intersects the prefix");
    const auto& dc = dist_from(ball);
    size_t reach = 0;  // last path vertex within the extended radius d+1
    for (size_t j = 0; j < path.size(); ++j)
      if (dc[path[j]] <= st.bottleneck_d[ball] + 1) reach = j;
    if (reach <= u_positions.back()) return fail("walk cannot advance");
    walk.balls.push_back(ball);
    u_positions.push_back(reach);
    walk.u_seq.push_back(path[reach]);
    if (walk.balls.size() >= 2) {
      // v_i sits on the previous hop and on the new ball's boundary layer.
      size_t lo = u_positions[u_positions.size() - 3];
      size_t hi = u_positions[u_positions.size() - 2];
      Vertex found = -1;
      for (size_t j = lo; j <= hi && found < 0; ++j)
        if (dc[path[j]] == st.bottleneck_d[ball]) found = path[j];
      if (found < 0) return fail("no boundary vertex on the previous hop");
      walk.v_seq.push_back(found);
    }
    if (walk.balls.size() > path.size() + 1) return fail("walk did not halt");
  }
  // u_i for interior hops must sit exactly one step beyond the trimmed ball.
  for (size_t i = 1; i + 1 < walk.u_seq.size(); ++i) {
    int ball = walk.balls[i - 1];
    if (dist_from(ball)[walk.u_seq[i]] != st.bottleneck_d[ball] + 1)
      return fail("u_i not on the d+1 layer of its ball");
  }
  walk.valid = true;
  return walk;
}

}  // namespace spanner
