#include "spanner/sublinear_spanner.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_set>

#include "spanner/base_spanners.hpp"
#include "spanner/parallel.hpp"
#include "spanner/path_partition.hpp"

namespace spanner {

int64_t small_ball_threshold(Vertex n, int k) {
  long double expo = (powl(2.0L, k) - 1) / (powl(2.0L, k + 1) - 1);
  return static_cast<int64_t>(
      ceill(powl(static_cast<long double>(std::max<Vertex>(n, 1)), expo)));
}

namespace {

class AllPairsClassBuilder {
 public:
  AllPairsClassBuilder(const Graph& g, const SublinearParams& params,
                       int64_t D)
      : g_(g), p_(params), D_(D) {}

  EdgeSet run(json* log_out) {
    n_ = g_.vertex_count();
    R_ = std::max(
        1, static_cast<int>(
               ceill(powl(static_cast<long double>(D_), 1.0L - 1.0L / p_.k))));
    cl_ = build_clustering(g_, R_, p_.eps);
    sc_ = build_scaffold(g_, cl_);
    threshold_ = small_ball_threshold(n_, p_.k);
    small_.resize(cl_.balls.size());
    size_t large_count = 0;
    for (size_t i = 0; i < cl_.balls.size(); ++i) {
      small_[i] =
          static_cast<int64_t>(cl_.balls[i].members.size()) <= threshold_;
      if (!small_[i]) ++large_count;
    }
    demands_.assign(cl_.balls.size(), {});
    settled_.assign(cl_.balls.size(), {});

    for (size_t i = 0; i < sc_.balls.size(); ++i)
      for (const Edge& e : sc_.balls[i].tree_edges)
        edges_.insert(e.u, e.v, EdgeRule::kBallTree);

    log_["D"] = D_;
    log_["R"] = R_;
    log_["ball_count"] = cl_.balls.size();
    log_["large_balls"] = large_count;
    log_["small_threshold"] = threshold_;

    if (large_count > 0) hitting_pass();
    recurse();

    log_["edge_count"] = edges_.size();
    if (log_out) *log_out = std::move(log_);
    return std::move(edges_);
  }

 private:
  void hitting_pass() {
    size_t want = static_cast<size_t>(
        std::ceil(10.0 * static_cast<double>(n_) / threshold_ *
                  std::log2(std::max<double>(n_, 2.0))));
    want = std::min<size_t>(want, static_cast<size_t>(n_));
    std::vector<Vertex> S;
    int attempts = 0;
    for (; attempts < 3; ++attempts) {
      S = sample(want, splitmix64(p_.seed ^ (static_cast<uint64_t>(D_) << 24) ^
                                  static_cast<uint64_t>(attempts)));
      if (hits_all_large(S)) break;
    }
    if (attempts == 3)
      throw HittingSetError("hitting set missed a large ball after 3 draws");
    log_["hitting_attempts"] = attempts + 1;
    log_["S_size"] = S.size();

    // Scaffold component ids: each settle event must connect the settled
    // vertex to the host center in the current partial spanner.
    std::vector<int> comp(n_, -1);
    {
      Graph h = edges_.to_graph(g_);
      BfsScratch s;
      int c = 0;
      for (Vertex v = 0; v < n_; ++v) {
        if (comp[v] >= 0) continue;
        bfs_into(h, v, s);
        for (Vertex u : s.touched) comp[u] = c;
        s.reset();
        ++c;
      }
    }
    bool settle_connectivity_ok = true;

    int64_t cutoff = hitting_path_cutoff(p_.k, p_.eps, D_);
    size_t paths = 0, skipped_small = 0, skipped_settled = 0, settled_paths = 0;
    std::vector<Vertex> path;
    std::vector<PathSegment> segs;
    for (size_t a = 0; a < S.size(); ++a) {
      Vertex s = S[a];
      TieBreakTree tree = tie_break_bfs(g_, s);
      for (size_t b = a + 1; b < S.size(); ++b) {
        Vertex t = S[b];
        if (tree.dist[t] == kInfDist || tree.dist[t] == 0 ||
            tree.dist[t] >= cutoff)
          continue;
        tree.extract_path_into(t, path);
        ++paths;
        segs.clear();
        bool skip = false, any_large = false;
        visit_partition(path, cl_, sc_, [&](const PathSegment& seg) {
          if (!small_[seg.ball]) {
            any_large = true;
            if (settled_[seg.ball].count(s) && settled_[seg.ball].count(t)) {
              skip = true;
              return false;
            }
          }
          segs.push_back(seg);
          return true;
        });
        if (skip) {
          ++skipped_settled;
          continue;
        }
        if (!any_large) {
          ++skipped_small;
          continue;
        }
        ++settled_paths;
        for (const PathSegment& seg : segs) {
          if (small_[seg.ball]) continue;
          Vertex center = cl_.balls[seg.ball].center;
          if (comp[s] != comp[center] || comp[t] != comp[center])
            settle_connectivity_ok = false;
          settled_[seg.ball].insert(s);
          settled_[seg.ball].insert(t);
          add_demand(seg, path);
        }
      }
    }
    log_["paths"] = paths;
    log_["skipped_all_small"] = skipped_small;
    log_["skipped_settled"] = skipped_settled;
    log_["settled_paths"] = settled_paths;
    bool bound_ok = true;
    for (const auto& d : demands_)
      if (d.size() > S.size()) bound_ok = false;
    log_["demand_bound_ok"] = bound_ok;
    log_["settle_connectivity_ok"] = settle_connectivity_ok;
  }

  std::vector<Vertex> sample(size_t size, uint64_t seed) {
    std::vector<Vertex> all(n_);
    for (Vertex v = 0; v < n_; ++v) all[v] = v;
    if (size >= static_cast<size_t>(n_)) return all;
    std::mt19937_64 rng(seed);
    for (size_t i = 0; i < size; ++i) {
      std::uniform_int_distribution<size_t> pick(i, all.size() - 1);
      std::swap(all[i], all[pick(rng)]);
    }
    all.resize(size);
    std::sort(all.begin(), all.end());
    return all;
  }

  bool hits_all_large(const std::vector<Vertex>& S) {
    std::vector<char> in_s(n_, 0);
    for (Vertex v : S) in_s[v] = 1;
    for (size_t i = 0; i < cl_.balls.size(); ++i) {
      if (small_[i]) continue;
      bool hit = false;
      for (Vertex v : cl_.balls[i].members)
        if (in_s[v]) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
    return true;
  }

  void add_demand(const PathSegment& seg, const std::vector<Vertex>& path) {
    const ClusterBall& b = cl_.balls[seg.ball];
    const BallNeighborhood& nb = sc_.balls[seg.ball];
    if (nb.dist_to(seg.s) > b.radius)
      throw InvariantViolation("demand start outside B(c,r)");
    if (nb.dist_to(seg.t) > 2 * b.radius)
      throw InvariantViolation("demand end outside B(c,2r)");
    for (size_t j = seg.first; j <= seg.last; ++j)
      if (nb.dist_to(path[j]) > 4 * b.radius)
        throw InvariantViolation("demand segment leaves B(c,4r)");
    demands_[seg.ball].insert(
        {std::min(seg.s, seg.t), std::max(seg.s, seg.t)});
  }

  void recurse() {
    json recs = json::array();
    for (size_t i = 0; i < cl_.balls.size(); ++i) {
      if (small_[i] || !demands_[i].empty()) {
        auto verts = sc_.balls[i].vertices();
        std::sort(verts.begin(), verts.end());
        InducedSubgraph sub = induced_subgraph(g_, verts);
        SublinearParams sp = p_;
        sp.k = p_.k - 1;
        sp.threads = 1;
        sp.exact_audit = false;
        sp.seed = splitmix64(p_.seed ^ (static_cast<uint64_t>(D_) << 40) ^
                             (i + 1));
        SpannerResult r;
        if (small_[i]) {
          r = build_sublinear_spanner(sub.graph, sp);
        } else {
          std::vector<std::pair<Vertex, Vertex>> local;
          local.reserve(demands_[i].size());
          for (auto [u, v] : demands_[i])
            local.emplace_back(local_id(verts, u), local_id(verts, v));
          r = build_sublinear_pairwise_spanner(
              sub.graph, PairSet::from(std::move(local)), sp);
        }
        for (const Edge& e : r.edges.sorted_edges())
          edges_.insert(sub.to_parent[e.u], sub.to_parent[e.v],
                        EdgeRule::kRecursive);
        json row;
        row["ball"] = i;
        row["small"] = static_cast<bool>(small_[i]);
        row["pairs"] = demands_[i].size();
        row["sub_vertices"] = verts.size();
        row["sub_edges"] = r.edges.size();
        if (recs.size() < 2048) recs.push_back(std::move(row));
      }
    }
    log_["recursion"] = std::move(recs);
  }

  static Vertex local_id(const std::vector<Vertex>& verts, Vertex v) {
    auto it = std::lower_bound(verts.begin(), verts.end(), v);
    if (it == verts.end() || *it != v)
      throw InvariantViolation("demand endpoint outside its host ball");
    return static_cast<Vertex>(it - verts.begin());
  }

  const Graph& g_;
  SublinearParams p_;
  int64_t D_;
  Vertex n_ = 0;
  int R_ = 1;
  int64_t threshold_ = 0;
  BallClustering cl_;
  BallScaffold sc_;
  std::vector<char> small_;
  std::vector<std::set<std::pair<Vertex, Vertex>>> demands_;
  std::vector<std::unordered_set<Vertex>> settled_;
  EdgeSet edges_;
  json log_;
};

// Largest finite pairwise distance (0 on edgeless graphs).
int64_t graph_diameter(const Graph& g) {
  int64_t diam = 0;
  BfsScratch s;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    bfs_into(g, v, s);
    for (Vertex u : s.touched) diam = std::max<int64_t>(diam, s.dist[u]);
    s.reset();
  }
  return diam;
}

}  // namespace

SpannerResult build_sublinear_spanner(const Graph& g,
                                      const SublinearParams& params) {
  if (params.k < 1)
    throw std::invalid_argument("build_sublinear_spanner: k < 1");
  if (!(params.eps > 0 && params.eps < 1))
    throw std::invalid_argument("build_sublinear_spanner: eps outside (0,1)");

  SpannerResult out;
  out.log["k"] = params.k;
  out.log["eps"] = params.eps;

  if (params.k == 1) {
    Plus6Result base = plus6_allpairs_spanner(g);
    out.edges = std::move(base.edges);
    out.log["base_case"] = "plus6_allpairs";
    out.log["bought_paths"] = base.bought_paths;
    out.finish_log("sublinear_allpairs");
    return out;
  }

  Vertex n = g.vertex_count();
  int64_t diam = graph_diameter(g);
  out.log["diameter"] = diam;

  std::vector<int64_t> all_ds;
  {
    int64_t dmax = 1;
    while (2 * dmax <= std::max<Vertex>(n - 1, 1)) dmax *= 2;
    for (int64_t d = 1; d <= dmax; d *= 2) all_ds.push_back(d);
  }

  std::vector<EdgeSet> class_edges(all_ds.size());
  std::vector<json> class_logs(all_ds.size());
  parallel_for(0, all_ds.size(), params.threads, [&](size_t i) {
    int64_t D = all_ds[i];
    if (D > diam) {
      class_logs[i] = {{"D", D}, {"skipped", "beyond graph diameter"}};
      return;
    }
    AllPairsClassBuilder builder(g, params, D);
    class_edges[i] = builder.run(&class_logs[i]);
  });

  json cls_log = json::array();
  for (size_t i = 0; i < all_ds.size(); ++i) {
    out.edges.merge(class_edges[i]);
    cls_log.push_back(std::move(class_logs[i]));
  }
  out.log["distance_classes"] = std::move(cls_log);
  out.finish_log("sublinear_allpairs");
  return out;
}

}  // namespace spanner
