#pragma once

#include <vector>

#include "spanner/edge_set.hpp"
#include "spanner/graph.hpp"

namespace spanner {

// The error-exponent map driving the iterated construction, its companion
// ball-size exponent, and its fixed point (15 - sqrt(54))/19.
double reduction_f(double rho);
double reduction_g(double rho);
double reduction_fixed_point();

struct ReductionSchedule {
  double eps = 0;
  double gamma = 13.0 / 7.0;
  std::vector<double> rho;  // rho_0 .. rho_K
  int K = 0;
  bool side_condition_ok = false;  // gamma >= 1 + (3/2) f(r)(1-r)/(3/2-r)
};

// Smallest K with rho_K <= target under rho_{j+1} = f(rho_j) + eps starting
// from rho_0 = 3/7 + 0.1. Throws std::invalid_argument when target <= rho*
// or unreachable with this eps.
ReductionSchedule reduction_schedule(double eps, double target);

// Degree-based sparsification: all edges at vertices of degree <= ceil(d)
// plus a ceil(log2 n)-round multiplicative spanner. |E(G')| = O(nd) with
// additive error O~(n/d).
Graph sparsify(const Graph& g, int d, uint64_t seed = 0,
               json* log_out = nullptr);

// Linear-size additive spanner: sparsification, ball clustering at
// R = ceil(n^{3/7}), per-small-ball boundary subset spanners, and a global
// subset spanner on a sampled vertex set.
SpannerResult build_additive_37(const Graph& g, double eps, uint64_t seed = 1,
                                int threads = 1);

// K-level iterated variant: each level re-runs the pipeline with exponents
// f(rho), g(rho) and hands large balls to the previous level. K = 0 is
// exactly build_additive_37. schedule_eps is the per-level slack added to
// the error exponent.
SpannerResult build_additive_0403(const Graph& g, double eps, int K,
                                  double schedule_eps = 1e-4,
                                  uint64_t seed = 1, int threads = 1);

}  // namespace spanner
