#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "spanner/graph.hpp"

#include <json.hpp>

namespace spanner {

using json = nlohmann::json;

// Which construction rule first added an edge to a spanner.
enum class EdgeRule : uint8_t {
  kBallTree,            // BFS tree spanning a ball
  kRecursive,           // recursive sub-spanner inside a ball
  kBaseCluster,         // base-spanner cluster scaffolding
  kBaseBuy,             // base-spanner path purchase
  kPreserver,           // exact distance preserver path
  kBoundaryPreserver,   // consistent paths over a ball boundary
  kBoughtPath,          // terminal-path purchase (subset spanner)
  kLowDegree,           // sparsification: edges at low-degree vertices
  kMultiplicative,      // multiplicative spanner edges
  kSubsetLocal,         // per-ball subset spanner
  kSubsetGlobal,        // global subset spanner on the sampled set
  kOther,
};

const char* edge_rule_name(EdgeRule r);

// Edge subset of a host graph with provenance tags and O(1) membership.
class EdgeSet {
 public:
  EdgeSet() = default;

  // Returns true if newly inserted; the tag of the first insertion sticks.
  bool insert(Vertex u, Vertex v, EdgeRule rule = EdgeRule::kOther) {
    if (u > v) std::swap(u, v);
    auto [it, fresh] = tags_.try_emplace(key(u, v), rule);
    (void)it;
    return fresh;
  }
  bool contains(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    return tags_.count(key(u, v)) != 0;
  }
  size_t size() const { return tags_.size(); }
  bool empty() const { return tags_.empty(); }

  void merge(const EdgeSet& other) {
    for (const auto& [k, r] : other.tags_) tags_.try_emplace(k, r);
  }

  std::vector<Edge> sorted_edges() const;
  std::map<std::string, size_t> rule_counts() const;

  // Throws std::invalid_argument if some edge is absent from g.
  void check_subgraph_of(const Graph& g) const;

  // Materialize as a Graph on g's vertex set (ranks inherited from g).
  Graph to_graph(const Graph& g) const {
    return subgraph_from_edges(g, sorted_edges());
  }

 private:
  static uint64_t key(Vertex u, Vertex v) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) |
           static_cast<uint32_t>(v);
  }
  std::unordered_map<uint64_t, EdgeRule> tags_;
};

// A built spanner: the edge subset plus a JSON build log (schema: 1).
struct SpannerResult {
  EdgeSet edges;
  json log = json::object();

  void finish_log(const std::string& algorithm);
};

}  // namespace spanner
