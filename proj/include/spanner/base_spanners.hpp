#pragma once

#include "spanner/edge_set.hpp"
#include "spanner/graph.hpp"
#include "spanner/preservers.hpp"

namespace spanner {

// +6 pairwise spanner: for every demand pair the spanner distance exceeds the
// graph distance by at most 6. Cluster scaffolding with degree threshold
// max(1,|P|)^{1/4} plus path buying for pairs still out of budget.
// Unreachable pairs are reported, not errors.
struct Plus6Result {
  EdgeSet edges;
  std::vector<std::pair<Vertex, Vertex>> unreachable;
  size_t bought_paths = 0;
  size_t cluster_count = 0;
};

Plus6Result plus6_pairwise_spanner(const Graph& g, const PairSet& P);

// +6 all-pairs spanner; degree threshold n^{1/3}.
Plus6Result plus6_allpairs_spanner(const Graph& g);

// (2k-1)-multiplicative spanner via k rounds of randomized cluster growth;
// the stretch bound holds deterministically, the seed only affects size.
EdgeSet multiplicative_spanner(const Graph& g, int k, uint64_t seed = 0);

}  // namespace spanner
