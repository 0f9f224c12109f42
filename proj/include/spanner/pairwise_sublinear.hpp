#pragma once

#include <cstdint>

#include "spanner/clustering.hpp"
#include "spanner/edge_set.hpp"
#include "spanner/graph.hpp"
#include "spanner/preservers.hpp"

namespace spanner {

// Raised when the random hitting set misses a large ball after the retry
// budget; callers map it to a distinct exit code.
struct HittingSetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an internal construction invariant fails (should be
// unreachable; indicates a bug, not bad input).
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct SublinearParams {
  int k = 2;
  double eps = 0.25;
  uint64_t seed = 1;
  int threads = 1;        // parallelism across distance classes (top level)
  bool exact_audit = false;  // per-event tight-pair census in the build log
};

// Budget arithmetic is saturating: any value at or above this cap acts as
// "unbounded" relative to hop distances (which fit in 31 bits).
inline constexpr int64_t kBudgetCap = 1LL << 52;

// 2^{log2_coeff} * base^{expo}, capped at kBudgetCap.
int64_t saturating_scale(double log2_coeff, double base, double expo);
// Additive stretch allowance: 2^{30k/eps} * d^{1-1/k}.
int64_t stretch_allowance(int k, double eps, int64_t d);
// Distance cutoff for hitting-set paths: 2D + 4 * 2^{10/eps} * D^{1-1/k}.
int64_t hitting_path_cutoff(int k, double eps, int64_t D);
// Center-pair closeness budget: (3*2^{(30k-20)/eps} + 10*2^{10/eps}) D^{1-1/k}.
int64_t tightness_budget(int k, double eps, int64_t D);
// ceil(n^{(L+1) eps}), capped.
int64_t level_beta(Vertex n, double eps, int L);

// Ball size level against the demand count: level 0 holds balls larger than
// n/sqrt(|P|); level i in [1, ceil(1/eps)] holds sizes in
// (n^{1-i eps}/sqrt|P|, n^{1-(i-1) eps}/sqrt|P|].
int ball_level(Vertex n, double eps, size_t pair_count, size_t ball_size);

// Pairwise spanner with stretch d + 2^{30k/eps} d^{1-1/k} for every demand
// pair. k = 1 delegates to the +6 pairwise base spanner. The build log
// (schema 1) records the per-distance-class construction trace.
SpannerResult build_sublinear_pairwise_spanner(const Graph& g, const PairSet& P,
                                               const SublinearParams& params);

}  // namespace spanner
