#pragma once

#include "spanner/edge_set.hpp"
#include "spanner/graph.hpp"
#include "spanner/pairwise_sublinear.hpp"

namespace spanner {

// All-pairs spanner with stretch d + 2^{30k/eps} d^{1-1/k}. Per distance
// class: ball clustering at R = ceil(D^{1-1/k}), BFS trees on the 4r
// neighborhoods, a full recursive build inside every small ball, and a
// pairwise recursive build on the demand pairs that the hitting-set pass
// assigns to large balls. k = 1 delegates to the +6 all-pairs base spanner.
SpannerResult build_sublinear_spanner(const Graph& g,
                                      const SublinearParams& params);

// Size threshold separating small from large balls: ceil(n^{(2^k-1)/(2^{k+1}-1)}).
int64_t small_ball_threshold(Vertex n, int k);

}  // namespace spanner
