#include "spanner/edge_set.hpp"

#include <algorithm>

namespace spanner {

const char* edge_rule_name(EdgeRule r) {
  switch (r) {
    case EdgeRule::kBallTree: return "ball_tree";
    case EdgeRule::kRecursive: return "recursive";
    case EdgeRule::kBaseCluster: return "base_cluster";
    case EdgeRule::kBaseBuy: return "base_buy";
    case EdgeRule::kPreserver: return "preserver";
    case EdgeRule::kBoundaryPreserver: return "boundary_preserver";
    case EdgeRule::kBoughtPath: return "bought_path";
    case EdgeRule::kLowDegree: return "low_degree";
    case EdgeRule::kMultiplicative: return "multiplicative";
    case EdgeRule::kSubsetLocal: return "subset_local";
    case EdgeRule::kSubsetGlobal: return "subset_global";
    case EdgeRule::kOther: return "other";
  }
  return "other";
}

std::vector<Edge> EdgeSet::sorted_edges() const {
  std::vector<Edge> out;
  out.reserve(tags_.size());
  for (const auto& [k, r] : tags_) {
    (void)r;
    out.push_back({static_cast<Vertex>(k >> 32),
                   static_cast<Vertex>(k & 0xffffffffULL)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::map<std::string, size_t> EdgeSet::rule_counts() const {
  std::map<std::string, size_t> out;
  for (const auto& [k, r] : tags_) {
    (void)k;
    ++out[edge_rule_name(r)];
  }
  return out;
}

void EdgeSet::check_subgraph_of(const Graph& g) const {
  for (const auto& [k, r] : tags_) {
    (void)r;
    Vertex u = static_cast<Vertex>(k >> 32);
    Vertex v = static_cast<Vertex>(k & 0xffffffffULL);
    if (!g.has_edge(u, v))
      throw std::invalid_argument("edge set is not a subgraph of the host");
  }
}

void SpannerResult::finish_log(const std::string& algorithm) {
  log["schema"] = 1;
  log["algorithm"] = algorithm;
  log["edge_count"] = edges.size();
  json rules = json::object();
  for (const auto& [name, cnt] : edges.rule_counts()) rules[name] = cnt;
  log["edges_by_rule"] = rules;
}

}  // namespace spanner
