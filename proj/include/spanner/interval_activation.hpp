#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spanner/edge_set.hpp"

namespace spanner {

// The index-activation engine behind Step-2 demand selection: given the
// hosted segments of one partitioned path (their size levels and a closeness
// predicate on host pairs), it grows a binary interval tree, activating whole
// intervals when every level is either sparse or mostly non-tight (case 1),
// and otherwise activating a prefix and suffix of the densest level and
// recursing between two bridged indices (case 2).
struct ActivationEvent {
  int lo = 0, hi = 0;
  int depth = 0;
  int case_id = 1;       // 1 or 2
  int level = -1;        // case-2 level
  int64_t p = 0, q = 0, beta = 0;
  int bridge_x = -1, bridge_y = -1, bridge_z = -1;  // segment indices (1-based)
  int activated = 0;
};

struct ActivationOutcome {
  std::vector<char> active;  // 1-based; [0] unused
  std::vector<ActivationEvent> events;
  size_t case1_events = 0;
  size_t case2_events = 0;
  int max_depth = 0;
};

// levels[i] (1-based) is the size level of segment i's host ball; level 0
// marks oversized hosts whose span [first level-0 .. last level-0] is split
// off up front and stays permanently inactive. beta(L) gives the activation
// width per level; tight(i, j) answers closeness between the host balls of
// segments i and j. on_activate fires once per newly activated index.
// max_level bounds the tree depth at max_level + 1; exceeding it (or a
// missing case-2 bridge) raises InvariantViolation.
ActivationOutcome run_interval_activation(
    const std::vector<int>& levels, int max_level,
    const std::function<int64_t(int)>& beta,
    const std::function<bool(int, int)>& tight,
    const std::function<void(int)>& on_activate);

}  // namespace spanner
