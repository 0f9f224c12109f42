#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "spanner/edge_set.hpp"
#include "spanner/graph.hpp"
#include "spanner/preservers.hpp"

namespace spanner {

struct PairStretch {
  Vertex s = 0, t = 0;
  int32_t dist_g = 0;
  int32_t dist_h = 0;  // kInfDist when disconnected in H
  int64_t error() const {
    return dist_h == kInfDist ? -1 : static_cast<int64_t>(dist_h) - dist_g;
  }
};

struct StretchReport {
  std::vector<PairStretch> pairs;
  int64_t max_error = 0;           // over pairs connected in H
  double mean_error = 0;
  size_t disconnected_pairs = 0;   // reachable in G, unreachable in H
  std::map<int64_t, int64_t> per_class_max;  // distance class D -> max error

  bool exact_ok() const { return disconnected_pairs == 0; }
  json to_json() const;
  void to_csv(std::ostream& out) const;
};

struct StretchOptions {
  enum class Mode { kAll, kSample, kExplicit };
  Mode mode = Mode::kSample;
  size_t sample_count = 256;
  uint64_t seed = 1;
  PairSet pairs;  // for kExplicit
  int threads = 1;

  static StretchOptions all() { return {Mode::kAll, 0, 0, {}, 1}; }
  static StretchOptions sample(size_t k, uint64_t seed) {
    return {Mode::kSample, k, seed, {}, 1};
  }
  static StretchOptions explicit_pairs(PairSet p) {
    return {Mode::kExplicit, 0, 0, std::move(p), 1};
  }
};

// Exact BFS-based stretch measurement of spanner h against host g. Mode kAll
// is limited to n <= 2048 (full APSP budget); sampling is deterministic under
// the seed. Throws std::invalid_argument if h is not a subgraph of g.
StretchReport stretch_report(const Graph& g, const EdgeSet& h,
                             const StretchOptions& opt);

// Independent second distance implementation used to cross-check BFS.
int32_t bidir_bfs_distance(const Graph& g, Vertex s, Vertex t);

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // RMS in log space
};

// Ordinary least squares on (log n, log value); needs >= 4 observations with
// strictly increasing positive n and positive values.
SlopeFit slope_fit(const std::vector<std::pair<double, double>>& observations);

}  // namespace spanner
