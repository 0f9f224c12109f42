#include "spanner/preservers.hpp"

#include <algorithm>
#include <map>

#include "spanner/parallel.hpp"

namespace spanner {

PairSet PairSet::from(std::vector<std::pair<Vertex, Vertex>> raw) {
  PairSet p;
  for (auto& [u, v] : raw) {
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    p.pairs.emplace_back(u, v);
  }
  std::sort(p.pairs.begin(), p.pairs.end());
  p.pairs.erase(std::unique(p.pairs.begin(), p.pairs.end()), p.pairs.end());
  return p;
}

int min_adjacent_layers(const Graph& g, Vertex c, int lo, int hi) {
  g.check_vertex(c);
  if (lo < 0 || hi < lo)
    throw std::invalid_argument("min_adjacent_layers: bad range");
  BfsScratch s;
  bfs_into(g, c, s, hi + 1);
  std::vector<size_t> layer(static_cast<size_t>(hi) + 2, 0);
  for (Vertex v : s.touched) ++layer[s.dist[v]];
  int best_d = lo;
  size_t best = layer[lo] + layer[lo + 1];
  for (int d = lo + 1; d <= hi; ++d) {
    size_t sum = layer[d] + layer[d + 1];
    if (sum < best) {
      best = sum;
      best_d = d;
    }
  }
  return best_d;
}

int bottleneck_radius(const Graph& g, Vertex c, int r1, int r2, int r) {
  if (!(0 < r1 && r1 < r2 && r2 < r))
    throw std::invalid_argument("bottleneck_radius: need 0 < r1 < r2 < r");
  // Pigeonhole over the r2-r1 candidate layer pairs in (r1, r2]: each layer
  // is counted at most twice, so the minimum is <= 2|B(c,r)|/(r2-r1).
  return min_adjacent_layers(g, c, r1 + 1, r2);
}

ConsistentPathFamily consistent_paths(const Graph& g,
                                      std::span<const Vertex> S,
                                      int threads) {
  ConsistentPathFamily fam;
  fam.sources.assign(S.begin(), S.end());
  std::sort(fam.sources.begin(), fam.sources.end());
  fam.sources.erase(std::unique(fam.sources.begin(), fam.sources.end()),
                    fam.sources.end());
  for (Vertex v : fam.sources) g.check_vertex(v);
  fam.trees.resize(fam.sources.size());
  parallel_for(0, fam.sources.size(), threads, [&](size_t i) {
    fam.trees[i] = tie_break_bfs(g, fam.sources[i]);
  });

  std::vector<Vertex> buf;
  for (size_t i = 0; i < fam.sources.size(); ++i) {
    const TieBreakTree& tree = fam.trees[i];
    for (size_t j = i + 1; j < fam.sources.size(); ++j) {
      if (!tree.extract_path_into(fam.sources[j], buf)) continue;
      ++fam.reachable_pairs;
      for (size_t k = 0; k + 1 < buf.size(); ++k)
        fam.union_edges.insert(buf[k], buf[k + 1], EdgeRule::kPreserver);
    }
  }
  return fam;
}

std::vector<Vertex> ConsistentPathFamily::path(Vertex s, Vertex t) const {
  auto it = std::lower_bound(sources.begin(), sources.end(), s);
  if (it == sources.end() || *it != s)
    throw std::invalid_argument("path: s not a family source");
  return trees[it - sources.begin()].extract_path(t);
}

PreserverResult distance_preserver(const Graph& g, const PairSet& P) {
  PreserverResult out;
  // Group pairs by source to share one tie-break tree per distinct endpoint.
  std::map<Vertex, std::vector<Vertex>> by_source;
  for (auto [u, v] : P.pairs) by_source[u].push_back(v);
  std::vector<Vertex> buf;
  for (auto& [s, targets] : by_source) {
    g.check_vertex(s);
    TieBreakTree tree = tie_break_bfs(g, s);
    for (Vertex t : targets) {
      g.check_vertex(t);
      if (!tree.extract_path_into(t, buf)) {
        out.unreachable.emplace_back(s, t);
        continue;
      }
      for (size_t k = 0; k + 1 < buf.size(); ++k)
        out.edges.insert(buf[k], buf[k + 1], EdgeRule::kPreserver);
    }
  }
  return out;
}

}  // namespace spanner
