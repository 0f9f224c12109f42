#include "spanner/additive_spanner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>

#include "spanner/base_spanners.hpp"
#include "spanner/clustering.hpp"
#include "spanner/parallel.hpp"
#include "spanner/pairwise_sublinear.hpp"
#include "spanner/preservers.hpp"
#include "spanner/subset_spanner.hpp"
#include "spanner/verify.hpp"

namespace spanner {

double reduction_f(double rho) {
  return (1.5 - rho) / (4.0 - (19.0 / 6.0) * rho);
}

double reduction_g(double rho) {
  return 1.5 * reduction_f(rho) / (1.5 - rho);
}

double reduction_fixed_point() { return (15.0 - std::sqrt(54.0)) / 19.0; }

ReductionSchedule reduction_schedule(double eps, double target) {
  if (!(eps > 0)) throw std::invalid_argument("reduction_schedule: eps <= 0");
  double fixed = reduction_fixed_point();
  if (!(target > fixed))
    throw std::invalid_argument(
        "reduction_schedule: target at or below the fixed point");
  ReductionSchedule sched;
  sched.eps = eps;
  sched.side_condition_ok = true;
  double rho = 3.0 / 7.0 + 0.1;
  sched.rho.push_back(rho);
  auto side_ok = [&](double r) {
    return sched.gamma >= 1.0 + 1.5 * reduction_f(r) * (1.0 - r) / (1.5 - r);
  };
  if (!side_ok(rho)) sched.side_condition_ok = false;
  int guard = 0;
  while (sched.rho.back() > target) {
    double next = reduction_f(sched.rho.back()) + eps;
    if (next >= sched.rho.back() || ++guard > 10000)
      throw std::invalid_argument(
          "reduction_schedule: target unreachable with this eps");
    if (!side_ok(next)) sched.side_condition_ok = false;
    sched.rho.push_back(next);
  }
  sched.K = static_cast<int>(sched.rho.size()) - 1;
  return sched;
}

Graph sparsify(const Graph& g, int d, uint64_t seed, json* log_out) {
  Vertex n = g.vertex_count();
  if (!(1 < d && d < n)) throw std::invalid_argument("sparsify: need 1 < d < n");
  EdgeSet keep;
  for (const Edge& e : g.edges())
    if (g.degree(e.u) <= d || g.degree(e.v) <= d)
      keep.insert(e.u, e.v, EdgeRule::kLowDegree);
  size_t low_degree_edges = keep.size();
  int k = std::max(1, static_cast<int>(
                          std::ceil(std::log2(std::max<double>(n, 2.0)))));
  EdgeSet mult = multiplicative_spanner(g, k, seed);
  keep.merge(mult);
  if (log_out) {
    (*log_out)["sparsify_d"] = d;
    (*log_out)["low_degree_edges"] = low_degree_edges;
    (*log_out)["multiplicative_edges"] = mult.size();
    (*log_out)["sparsified_edges"] = keep.size();
  }
  return keep.to_graph(g);
}

namespace {

struct LevelParams {
  double r_exponent;      // R = ceil(n^r_exponent)
  double size_exponent;   // small iff |B(c,r)| <= ceil(n^size_exponent) + 1
  double rho = 0;         // error exponent handed to the next level (log only)
};

// One pipeline pass shared by the base level and the iterated levels: the
// recurse callback handles large balls (empty at the base level, where they
// are covered by the global subset spanner alone).
SpannerResult pipeline_pass(
    const Graph& g, double eps, uint64_t seed, int threads,
    const LevelParams& lp,
    const std::function<SpannerResult(const Graph&, uint64_t)>& recurse_large,
    const char* algorithm) {
  SpannerResult out;
  Vertex n = g.vertex_count();
  out.log["n"] = n;
  out.log["m"] = g.edge_count();
  out.log["eps"] = eps;
  out.log["r_exponent"] = lp.r_exponent;
  out.log["size_exponent"] = lp.size_exponent;
  if (n <= 2) {
    for (const Edge& e : g.edges()) out.edges.insert(e.u, e.v);
    out.finish_log(algorithm);
    return out;
  }

  long double nf = static_cast<long double>(n);
  // Sparsify when the graph is dense enough for the low-degree split to help.
  std::optional<Graph> sparse;
  long double m_threshold = 10.0L * powl(nf, 2.0L - lp.r_exponent);
  if (static_cast<long double>(g.edge_count()) >= m_threshold) {
    int d = std::max(
        2, static_cast<int>(ceill(powl(nf, 1.0L - lp.r_exponent))));
    if (d < n) {
      json sp_log;
      sparse = sparsify(g, d, splitmix64(seed ^ 0x5aa11ULL), &sp_log);
      out.log["sparsify"] = sp_log;
    }
  }
  const Graph& gp = sparse ? *sparse : g;
  out.log["working_edges"] = gp.edge_count();

  int R = std::max(1, static_cast<int>(ceill(powl(nf, lp.r_exponent))));
  double eps_prime = 10.0 / (eps * std::log2(static_cast<double>(n)));
  BallClustering cl = build_clustering(gp, R, eps_prime);
  BallScaffold sc = build_scaffold(gp, cl);
  out.log["R"] = R;
  out.log["clustering_eps"] = eps_prime;
  out.log["ball_count"] = cl.balls.size();

  for (size_t i = 0; i < sc.balls.size(); ++i)
    for (const Edge& e : sc.balls[i].tree_edges)
      out.edges.insert(e.u, e.v, EdgeRule::kBallTree);

  int64_t small_threshold =
      static_cast<int64_t>(ceill(powl(nf, lp.size_exponent))) + 1;
  out.log["small_threshold"] = small_threshold;

  size_t small_count = 0, large_count = 0;
  std::vector<EdgeSet> per_ball(cl.balls.size());
  std::vector<json> per_ball_log(cl.balls.size());
  parallel_for(0, cl.balls.size(), threads, [&](size_t i) {
    const ClusterBall& b = cl.balls[i];
    const BallNeighborhood& nb = sc.balls[i];
    bool small = static_cast<int64_t>(b.members.size()) <= small_threshold;
    auto verts = nb.vertices();
    std::sort(verts.begin(), verts.end());
    if (small) {
      int d = min_adjacent_layers(gp, b.center, b.radius, 2 * b.radius);
      std::vector<Vertex> boundary;
      for (const auto& [v, dist] : nb.dists)
        if (dist == d || dist == d + 1) boundary.push_back(v);
      per_ball_log[i] = {{"ball", i},
                         {"small", true},
                         {"bottleneck_d", d},
                         {"boundary", boundary.size()}};
      if (boundary.size() < 2) return;
      InducedSubgraph sub = induced_subgraph(gp, verts);
      std::vector<Vertex> local;
      local.reserve(boundary.size());
      for (Vertex v : boundary) {
        auto it = std::lower_bound(verts.begin(), verts.end(), v);
        local.push_back(static_cast<Vertex>(it - verts.begin()));
      }
      SpannerResult r = build_subset_spanner(sub.graph, local, eps);
      for (const Edge& e : r.edges.sorted_edges())
        per_ball[i].insert(sub.to_parent[e.u], sub.to_parent[e.v],
                           EdgeRule::kSubsetLocal);
      per_ball_log[i]["edges"] = per_ball[i].size();
    } else if (recurse_large) {
      InducedSubgraph sub = induced_subgraph(gp, verts);
      SpannerResult r =
          recurse_large(sub.graph, splitmix64(seed ^ (0xba11ULL + i)));
      for (const Edge& e : r.edges.sorted_edges())
        per_ball[i].insert(sub.to_parent[e.u], sub.to_parent[e.v],
                           EdgeRule::kRecursive);
      per_ball_log[i] = {{"ball", i},
                         {"small", false},
                         {"sub_vertices", verts.size()},
                         {"edges", per_ball[i].size()}};
    } else {
      per_ball_log[i] = {{"ball", i}, {"small", false}};
    }
  });
  json balls_log = json::array();
  for (size_t i = 0; i < cl.balls.size(); ++i) {
    bool small = static_cast<int64_t>(cl.balls[i].members.size()) <=
                 small_threshold;
    (small ? small_count : large_count) += 1;
    out.edges.merge(per_ball[i]);
    if (balls_log.size() < 2048) balls_log.push_back(std::move(per_ball_log[i]));
  }
  out.log["small_balls"] = small_count;
  out.log["large_balls"] = large_count;
  out.log["balls"] = std::move(balls_log);

  // Global subset spanner on a sampled vertex set.
  size_t s_size = static_cast<size_t>(
      std::ceil(10.0 * std::pow(static_cast<double>(R), 2.0 / 3.0) *
                std::log2(static_cast<double>(n))));
  s_size = std::min<size_t>(s_size, static_cast<size_t>(n));
  std::vector<Vertex> S(n);
  for (Vertex v = 0; v < n; ++v) S[v] = v;
  if (s_size < static_cast<size_t>(n)) {
    std::mt19937_64 rng(splitmix64(seed ^ 0x5e7ULL));
    for (size_t i = 0; i < s_size; ++i) {
      std::uniform_int_distribution<size_t> pick(i, S.size() - 1);
      std::swap(S[i], S[pick(rng)]);
    }
    S.resize(s_size);
    std::sort(S.begin(), S.end());
  }
  out.log["global_sample"] = S.size();
  SpannerResult hat = build_subset_spanner(gp, S, eps, nullptr, threads);
  for (const Edge& e : hat.edges.sorted_edges())
    out.edges.insert(e.u, e.v, EdgeRule::kSubsetGlobal);
  out.log["global_subset_edges"] = hat.edges.size();

  // Sampled self-check, reported not asserted (the analytic bound is loose).
  {
    StretchOptions so = StretchOptions::sample(64, splitmix64(seed ^ 0xc8ec2ULL));
    StretchReport rep = stretch_report(g, out.edges, so);
    out.log["sampled_max_error"] = rep.max_error;
    out.log["sampled_disconnected"] = rep.disconnected_pairs;
  }

  out.finish_log(algorithm);
  return out;
}

}  // namespace

SpannerResult build_additive_37(const Graph& g, double eps, uint64_t seed,
                                int threads) {
  if (!(eps > 0)) throw std::invalid_argument("build_additive_37: eps <= 0");
  LevelParams lp;
  lp.r_exponent = 3.0 / 7.0;
  lp.size_exponent = 5.0 / 3.0 * 3.0 / 7.0;  // R^{5/3} = n^{5/7}
  return pipeline_pass(g, eps, seed, threads, lp, nullptr, "additive_37");
}

SpannerResult build_additive_0403(const Graph& g, double eps, int K,
                                  double schedule_eps, uint64_t seed,
                                  int threads) {
  if (!(eps > 0)) throw std::invalid_argument("build_additive_0403: eps <= 0");
  if (K < 0) throw std::invalid_argument("build_additive_0403: K < 0");
  if (!(schedule_eps > 0))
    throw std::invalid_argument("build_additive_0403: schedule_eps <= 0");

  // rho_0 = 3/7 + 0.1; rho_{j+1} = f(rho_j) + schedule_eps, clamped once the
  // sequence stops decreasing (further levels cannot reduce the exponent).
  std::vector<double> rho{3.0 / 7.0 + 0.1};
  bool clamped = false;
  for (int j = 0; j < K; ++j) {
    double next = reduction_f(rho.back()) + schedule_eps;
    if (next >= rho.back()) {
      clamped = true;
      break;
    }
    rho.push_back(next);
  }
  int effective_k = static_cast<int>(rho.size()) - 1;

  // level j spanner: level 0 is the base pipeline; level j >= 1 re-runs the
  // pipeline with exponents f(rho_{j-1}), g(rho_{j-1}) and hands large balls
  // to level j-1.
  std::function<SpannerResult(int, const Graph&, uint64_t, int)> level =
      [&](int j, const Graph& graph, uint64_t sd,
          int thr) -> SpannerResult {
    if (j == 0) return build_additive_37(graph, eps, sd, thr);
    double inner_rho = rho[j - 1];
    LevelParams lp;
    lp.r_exponent = reduction_f(inner_rho);
    lp.size_exponent = reduction_g(inner_rho);
    lp.rho = inner_rho;
    SpannerResult r = pipeline_pass(
        graph, eps, sd, thr, lp,
        [&](const Graph& sub, uint64_t sub_seed) {
          return level(j - 1, sub, sub_seed, 1);
        },
        "additive_0403_level");
    r.log["level"] = j;
    r.log["inner_rho"] = inner_rho;
    r.log["rho_after"] = reduction_f(inner_rho) + schedule_eps;
    return r;
  };

  SpannerResult out = level(effective_k, g, seed, threads);
  out.log["schedule_rho"] = rho;
  out.log["schedule_eps"] = schedule_eps;
  out.log["requested_K"] = K;
  out.log["effective_K"] = effective_k;
  out.log["schedule_clamped"] = clamped;
  out.finish_log("additive_0403");
  return out;
}

}  // namespace spanner
