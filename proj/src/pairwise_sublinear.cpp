#include "spanner/pairwise_sublinear.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "spanner/base_spanners.hpp"
#include "spanner/parallel.hpp"
#include "spanner/interval_activation.hpp"
#include "spanner/path_partition.hpp"

namespace spanner {

int64_t saturating_scale(double log2_coeff, double base, double expo) {
  double log2_val = log2_coeff + expo * std::log2(std::max(base, 1.0));
  if (log2_val >= 52.0) return kBudgetCap;
  double v = std::exp2(log2_val);
  return static_cast<int64_t>(std::ceil(v));
}

int64_t stretch_allowance(int k, double eps, int64_t d) {
  if (d <= 0) return 0;
  return saturating_scale(30.0 * k / eps, static_cast<double>(d),
                          1.0 - 1.0 / k);
}

int64_t hitting_path_cutoff(int k, double eps, int64_t D) {
  int64_t tail = saturating_scale(10.0 / eps + 2.0, static_cast<double>(D),
                                  1.0 - 1.0 / k);
  if (tail >= kBudgetCap - 2 * D) return kBudgetCap;
  return 2 * D + tail;
}

int64_t tightness_budget(int k, double eps, int64_t D) {
  int64_t a = saturating_scale((30.0 * k - 20.0) / eps + 2.0,
                               static_cast<double>(D), 1.0 - 1.0 / k);
  int64_t b = saturating_scale(10.0 / eps + 4.0, static_cast<double>(D),
                               1.0 - 1.0 / k);
  int64_t sum = a + b;
  return sum >= kBudgetCap ? kBudgetCap : sum;
}

int64_t level_beta(Vertex n, double eps, int L) {
  return saturating_scale(0.0, static_cast<double>(n), (L + 1) * eps);
}

int ball_level(Vertex n, double eps, size_t pair_count, size_t ball_size) {
  int lmax = static_cast<int>(std::ceil(1.0 / eps));
  long double sqrt_p = sqrtl(static_cast<long double>(pair_count));
  for (int i = 0; i <= lmax; ++i) {
    long double thr =
        powl(static_cast<long double>(n),
             1.0L - i * static_cast<long double>(eps)) /
        sqrt_p;
    if (static_cast<long double>(ball_size) > thr) return i;
  }
  return lmax;
}

namespace {

// Closeness verdicts between ball centers over the (static) partial spanner.
// When the budget saturates, closeness degenerates to connectivity in the
// spanner, which component ids answer exactly.
class TightnessOracle {
 public:
  TightnessOracle(const Graph& g, const Graph& h, int64_t budget)
      : g_(g), h_(h), budget_(budget), saturated_(budget >= kBudgetCap) {
    if (saturated_) {
      comp_.assign(h_.vertex_count(), -1);
      int c = 0;
      BfsScratch s;
      for (Vertex v = 0; v < h_.vertex_count(); ++v) {
        if (comp_[v] >= 0) continue;
        bfs_into(h_, v, s);
        for (Vertex u : s.touched) comp_[u] = c;
        s.reset();
        ++c;
      }
    }
  }

  bool tight(Vertex a, Vertex b) {
    if (a == b) return true;
    uint64_t key = (static_cast<uint64_t>(std::min(a, b)) << 32) |
                   static_cast<uint32_t>(std::max(a, b));
    auto it = verdicts_.find(key);
    if (it != verdicts_.end()) return it->second != 0;
    bool v;
    if (saturated_) {
      v = comp_[a] == comp_[b];
    } else {
      const auto& dg = dists(g_, a, dg_);
      const auto& dh = dists(h_, a, dh_);
      v = dg[b] != kInfDist && dh[b] != kInfDist &&
          static_cast<int64_t>(dh[b]) <= static_cast<int64_t>(dg[b]) + budget_;
    }
    verdicts_.emplace(key, v ? 1 : 0);
    return v;
  }

  size_t count_non_tight(const std::vector<Vertex>& centers) {
    size_t q = 0;
    for (size_t i = 0; i < centers.size(); ++i)
      for (size_t j = i + 1; j < centers.size(); ++j)
        if (!tight(centers[i], centers[j])) ++q;
    return q;
  }

  // Pairs recorded tight so far, for the post-finalization monotonicity check.
  std::vector<std::pair<Vertex, Vertex>> tight_pairs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (const auto& [key, v] : verdicts_)
      if (v)
        out.emplace_back(static_cast<Vertex>(key >> 32),
                         static_cast<Vertex>(key & 0xffffffffULL));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static const std::vector<int32_t>& dists(
      const Graph& graph, Vertex src,
      std::unordered_map<Vertex, std::vector<int32_t>>& memo) {
    auto it = memo.find(src);
    if (it == memo.end())
      it = memo.emplace(src, bfs_distances(graph, src)).first;
    return it->second;
  }

  const Graph& g_;
  const Graph& h_;
  int64_t budget_;
  bool saturated_;
  std::vector<int> comp_;
  std::unordered_map<Vertex, std::vector<int32_t>> dg_, dh_;
  std::unordered_map<uint64_t, char> verdicts_;
};

// One distance class of the construction.
class ClassBuilder {
 public:
  ClassBuilder(const Graph& g, const SublinearParams& params, int64_t D,
               size_t global_pair_count)
      : g_(g), p_(params), D_(D), global_pairs_(global_pair_count) {}

  EdgeSet run(const std::vector<std::pair<Vertex, Vertex>>& class_pairs,
              json* log_out) {
    n_ = g_.vertex_count();
    R_ = static_cast<int>(
        ceill(powl(static_cast<long double>(D_), 1.0L - 1.0L / p_.k)));
    R_ = std::max(R_, 1);
    cl_ = build_clustering(g_, R_, p_.eps);
    sc_ = build_scaffold(g_, cl_);
    level_.resize(cl_.balls.size());
    for (size_t i = 0; i < cl_.balls.size(); ++i)
      level_[i] =
          ball_level(n_, p_.eps, global_pairs_, cl_.balls[i].members.size());
    demands_.assign(cl_.balls.size(), {});
    settled_.assign(cl_.balls.size(), {});

    for (size_t i = 0; i < sc_.balls.size(); ++i)
      for (const Edge& e : sc_.balls[i].tree_edges)
        edges_.insert(e.u, e.v, EdgeRule::kBallTree);
    scaffold_graph_ = edges_.to_graph(g_);
    budget_ = tightness_budget(p_.k, p_.eps, D_);
    oracle_ = std::make_unique<TightnessOracle>(g_, scaffold_graph_, budget_);
    // Recursive sub-spanners are finalized after both passes, so closeness
    // checks during the passes run against the scaffolding alone.
    log_["tightness_basis"] = "ball trees (sub-spanners finalized lazily)";
    log_["tightness_budget"] = budget_;

    log_["D"] = D_;
    log_["R"] = R_;
    log_["ball_count"] = cl_.balls.size();
    {
      int lmax = static_cast<int>(std::ceil(1.0 / p_.eps));
      std::vector<size_t> census(lmax + 1, 0);
      for (int l : level_) ++census[l];
      log_["balls_per_level"] = census;
      if (p_.exact_audit) {
        centers_by_level_.assign(lmax + 1, {});
        for (size_t i = 0; i < cl_.balls.size(); ++i)
          centers_by_level_[level_[i]].push_back(cl_.balls[i].center);
      }
    }

    step1();
    step2(class_pairs);
    finalize_recursion();

    log_["edge_count"] = edges_.size();
    if (log_out) *log_out = std::move(log_);
    return std::move(edges_);
  }

 private:
  // ---- Step 1: hitting-set paths -------------------------------------------

  std::vector<Vertex> sample_hitting_set(uint64_t seed, size_t size) {
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

  bool hits_all_large_balls(const std::vector<Vertex>& S) {
    std::vector<char> in_s(n_, 0);
    for (Vertex v : S) in_s[v] = 1;
    for (size_t i = 0; i < cl_.balls.size(); ++i) {
      if (level_[i] != 0) continue;
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

  void step1() {
    size_t want = static_cast<size_t>(
        std::ceil(10.0 * std::sqrt(static_cast<double>(global_pairs_)) *
                  std::log2(std::max<double>(n_, 2.0))));
    want = std::min<size_t>(want, static_cast<size_t>(n_));
    std::vector<Vertex> S;
    int attempts = 0;
    for (; attempts < 3; ++attempts) {
      S = sample_hitting_set(
          splitmix64(p_.seed ^ (static_cast<uint64_t>(D_) << 20) ^
                     static_cast<uint64_t>(attempts)),
          want);
      if (hits_all_large_balls(S)) break;
    }
    if (attempts == 3)
      throw HittingSetError("hitting set missed a large ball after 3 draws");
    log_["hitting_attempts"] = attempts + 1;
    log_["S_size"] = S.size();

    int64_t cutoff = hitting_path_cutoff(p_.k, p_.eps, D_);
    size_t paths = 0, skipped = 0, settled_paths = 0;
    std::vector<Vertex> path;
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
        if (process_settling_path(s, t, path))
          ++settled_paths;
        else
          ++skipped;
      }
    }
    log_["step1_paths"] = paths;
    log_["step1_skipped"] = skipped;
    log_["step1_settled"] = settled_paths;
    log_["step1_demand_bound_ok"] = demand_bound_ok(S.size());
  }

  bool demand_bound_ok(size_t s_size) const {
    for (const auto& d : demands_)
      if (d.size() > s_size) return false;
    return true;
  }

  // Partition the path; skip it if some host ball has both endpoints settled,
  // otherwise settle both endpoints on every host and record each segment as
  // a demand pair of its host.
  bool process_settling_path(Vertex s, Vertex t,
                             const std::vector<Vertex>& path) {
    segbuf_.clear();
    bool skip = false;
    visit_partition(path, cl_, sc_, [&](const PathSegment& seg) {
      if (settled_[seg.ball].count(s) && settled_[seg.ball].count(t)) {
        skip = true;
        return false;
      }
      segbuf_.push_back(seg);
      return true;
    });
    if (skip) return false;
    for (const PathSegment& seg : segbuf_) {
      settled_[seg.ball].insert(s);
      settled_[seg.ball].insert(t);
      add_demand(seg, path);
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
    Vertex u = std::min(seg.s, seg.t), v = std::max(seg.s, seg.t);
    demands_[seg.ball].insert({u, v});
  }

  // ---- Step 2: interval-tree activation ------------------------------------

  void step2(const std::vector<std::pair<Vertex, Vertex>>& class_pairs) {
    size_t case1 = 0, case2 = 0;
    int max_depth = 0;
    json events = json::array();
    if (p_.exact_audit) phi_census(events, "start");

    std::vector<Vertex> path;
    for (auto [s, t] : class_pairs) {
      TieBreakTree tree = tie_break_bfs(g_, s);
      if (tree.dist[t] == kInfDist) continue;
      tree.extract_path_into(t, path);
      process_demand_pair(path, case1, case2, max_depth, events);
    }
    log_["step2_case1_events"] = case1;
    log_["step2_case2_events"] = case2;
    log_["step2_max_tree_depth"] = max_depth;
    int lmax = static_cast<int>(std::ceil(1.0 / p_.eps));
    if (max_depth > lmax + 1)
      throw InvariantViolation("interval tree exceeded depth ceil(1/eps)+1");
    if (p_.exact_audit) phi_census(events, "end");
    log_["step2_events"] = std::move(events);
  }

  void process_demand_pair(const std::vector<Vertex>& path, size_t& case1,
                           size_t& case2, int& max_depth, json& events) {
    segbuf_.clear();
    visit_partition(path, cl_, sc_, [&](const PathSegment& seg) {
      segbuf_.push_back(seg);
      return true;
    });
    const int l = static_cast<int>(segbuf_.size());
    if (l == 0) return;
    int lmax = static_cast<int>(std::ceil(1.0 / p_.eps));
    std::vector<int> seg_levels(l + 1, 0);
    for (int i = 1; i <= l; ++i) seg_levels[i] = level_[segbuf_[i - 1].ball];

    ActivationOutcome res = run_interval_activation(
        seg_levels, lmax,
        [&](int L) { return level_beta(n_, p_.eps, L); },
        [&](int i, int j) {
          return oracle_->tight(cl_.balls[segbuf_[i - 1].ball].center,
                                cl_.balls[segbuf_[j - 1].ball].center);
        },
        [&](int i) { add_demand(segbuf_[i - 1], path); });

    case1 += res.case1_events;
    case2 += res.case2_events;
    max_depth = std::max(max_depth, res.max_depth);
    for (const ActivationEvent& e : res.events) {
      if (events.size() >= 4096) break;
      json ev;
      ev["interval"] = {e.lo, e.hi};
      ev["depth"] = e.depth;
      ev["case"] = e.case_id;
      ev["activated"] = e.activated;
      if (e.case_id == 2) {
        ev["level"] = e.level;
        ev["p"] = e.p;
        ev["q"] = e.q;
        ev["beta"] = e.beta;
        ev["bridge"] = {e.bridge_x, e.bridge_y, e.bridge_z};
      }
      events.push_back(std::move(ev));
    }
    if (p_.exact_audit) phi_census(events, "event");
  }

  void phi_census(json& events, const char* tag) {
    json row;
    row["census"] = tag;
    json phis = json::array();
    for (size_t L = 0; L < centers_by_level_.size(); ++L)
      phis.push_back(oracle_->count_non_tight(centers_by_level_[L]));
    row["phi"] = std::move(phis);
    events.push_back(std::move(row));
  }

  // ---- Finalization: recursive sub-spanners --------------------------------

  void finalize_recursion() {
    json recs = json::array();
    size_t pair_total = 0;
    for (size_t i = 0; i < cl_.balls.size(); ++i) {
      if (demands_[i].empty()) continue;
      pair_total += demands_[i].size();
      auto verts = sc_.balls[i].vertices();
      std::sort(verts.begin(), verts.end());
      InducedSubgraph sub = induced_subgraph(g_, verts);
      std::vector<std::pair<Vertex, Vertex>> local;
      local.reserve(demands_[i].size());
      for (auto [u, v] : demands_[i])
        local.emplace_back(local_id(verts, u), local_id(verts, v));
      SublinearParams sub_params = p_;
      sub_params.k = p_.k - 1;
      sub_params.threads = 1;
      sub_params.exact_audit = false;
      sub_params.seed = splitmix64(p_.seed ^ (static_cast<uint64_t>(D_) << 32) ^
                                   (i + 1));
      SpannerResult r = build_sublinear_pairwise_spanner(
          sub.graph, PairSet::from(std::move(local)), sub_params);
      for (const Edge& e : r.edges.sorted_edges())
        edges_.insert(sub.to_parent[e.u], sub.to_parent[e.v],
                      EdgeRule::kRecursive);
      json row;
      row["ball"] = i;
      row["pairs"] = demands_[i].size();
      row["sub_vertices"] = verts.size();
      row["sub_edges"] = r.edges.size();
      if (recs.size() < 2048) recs.push_back(std::move(row));
    }
    log_["demand_pairs_total"] = pair_total;
    {
      json hist = json::object();
      std::map<size_t, size_t> h;
      for (const auto& d : demands_)
        if (!d.empty()) ++h[d.size()];
      for (auto [sz, cnt] : h) hist[std::to_string(sz)] = cnt;
      log_["demand_histogram"] = hist;
    }
    {
      int lmax = static_cast<int>(std::ceil(1.0 / p_.eps));
      std::vector<size_t> per_level(lmax + 1, 0);
      for (size_t i = 0; i < cl_.balls.size(); ++i)
        per_level[level_[i]] += demands_[i].size();
      log_["demand_pairs_per_level"] = per_level;
    }
    log_["recursion"] = std::move(recs);

    // Monotonicity: every center pair judged close against the scaffold must
    // stay close against the finished class spanner.
    Graph final_h = edges_.to_graph(g_);
    TightnessOracle final_oracle(g_, final_h, budget_);
    for (auto [a, b] : oracle_->tight_pairs())
      if (!final_oracle.tight(a, b))
        throw InvariantViolation("tight pair lost closeness after finalization");
    log_["tightness_monotone_ok"] = true;
    if (p_.exact_audit) {
      json phis = json::array();
      for (size_t L = 0; L < centers_by_level_.size(); ++L)
        phis.push_back(final_oracle.count_non_tight(centers_by_level_[L]));
      log_["phi_final"] = std::move(phis);
    }
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
  size_t global_pairs_;
  Vertex n_ = 0;
  int R_ = 1;
  BallClustering cl_;
  BallScaffold sc_;
  Graph scaffold_graph_;
  std::unique_ptr<TightnessOracle> oracle_;
  int64_t budget_ = 0;
  std::vector<int> level_;
  std::vector<std::set<std::pair<Vertex, Vertex>>> demands_;
  std::vector<std::unordered_set<Vertex>> settled_;
  std::vector<std::vector<Vertex>> centers_by_level_;
  std::vector<PathSegment> segbuf_;
  EdgeSet edges_;
  json log_;
};

}  // namespace

SpannerResult build_sublinear_pairwise_spanner(const Graph& g, const PairSet& P,
                                               const SublinearParams& params) {
  if (params.k < 1)
    throw std::invalid_argument("build_sublinear_pairwise_spanner: k < 1");
  if (!(params.eps > 0 && params.eps < 1))
    throw std::invalid_argument(
        "build_sublinear_pairwise_spanner: eps outside (0,1)");

  SpannerResult out;
  out.log["k"] = params.k;
  out.log["eps"] = params.eps;
  out.log["pair_count"] = P.size();

  if (params.k == 1) {
    Plus6Result base = plus6_pairwise_spanner(g, P);
    out.edges = std::move(base.edges);
    out.log["base_case"] = "plus6_pairwise";
    out.log["bought_paths"] = base.bought_paths;
    json unreach = json::array();
    for (auto [s, t] : base.unreachable) unreach.push_back({s, t});
    out.log["unreachable_pairs"] = unreach;
    out.finish_log("sublinear_pairwise");
    return out;
  }

  Vertex n = g.vertex_count();
  std::map<Vertex, std::vector<Vertex>> by_source;
  for (auto [u, v] : P.pairs) by_source[u].push_back(v);
  std::map<int64_t, std::vector<std::pair<Vertex, Vertex>>> classes;
  json unreachable = json::array();
  for (auto& [s, targets] : by_source) {
    auto d = bfs_distances(g, s);
    for (Vertex t : targets) {
      if (d[t] == kInfDist) {
        unreachable.push_back({s, t});
        continue;
      }
      int64_t cls = 1;
      while (2 * cls <= d[t]) cls *= 2;
      classes[cls].emplace_back(s, t);
    }
  }
  out.log["unreachable_pairs"] = unreachable;

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
    auto it = classes.find(D);
    if (it == classes.end() || it->second.empty()) {
      class_logs[i] = {{"D", D}, {"skipped", "no demand pairs in range"}};
      return;
    }
    ClassBuilder builder(g, params, D, P.size());
    class_edges[i] = builder.run(it->second, &class_logs[i]);
  });

  json cls_log = json::array();
  for (size_t i = 0; i < all_ds.size(); ++i) {
    out.edges.merge(class_edges[i]);
    cls_log.push_back(std::move(class_logs[i]));
  }
  out.log["distance_classes"] = std::move(cls_log);
  out.finish_log("sublinear_pairwise");
  return out;
}

}  // namespace spanner
