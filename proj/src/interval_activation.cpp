#include "spanner/interval_activation.hpp"

#include <algorithm>

#include "spanner/pairwise_sublinear.hpp"

namespace spanner {

namespace {

struct Node {
  int lo, hi;
  int kid[2];
  int depth;
};

}  // namespace

ActivationOutcome run_interval_activation(
    const std::vector<int>& levels, int max_level,
    const std::function<int64_t(int)>& beta,
    const std::function<bool(int, int)>& tight,
    const std::function<void(int)>& on_activate) {
  const int l = static_cast<int>(levels.size()) - 1;  // levels is 1-based
  ActivationOutcome out;
  out.active.assign(l + 1, 0);
  if (l <= 0) return out;

  std::vector<Node> nodes;
  nodes.push_back({1, l, {-1, -1}, 0});

  // Split off the outermost level-0 stretch; indices strictly between the
  // first and last level-0 index stay permanently inactive.
  int i1 = 0, i2 = 0;
  for (int i = 1; i <= l; ++i)
    if (levels[i] == 0) {
      if (i1 == 0) i1 = i;
      i2 = i;
    }
  if (i1 != 0) {
    nodes[0].kid[0] = 1;
    nodes[0].kid[1] = 2;
    nodes.push_back({1, i1 - 1, {-1, -1}, 1});
    nodes.push_back({i2 + 1, l, {-1, -1}, 1});
  }

  auto activate = [&](int i) {
    if (out.active[i]) return 0;
    out.active[i] = 1;
    on_activate(i);
    return 1;
  };
  auto leftmost_open_leaf = [&]() {
    int found = -1;
    for (int id = 0; id < static_cast<int>(nodes.size()); ++id) {
      const Node& nd = nodes[id];
      if (nd.kid[0] >= 0 || nd.kid[1] >= 0) continue;
      if (nd.lo > nd.hi) continue;
      bool open = false;
      for (int i = nd.lo; i <= nd.hi; ++i)
        if (!out.active[i]) {
          open = true;
          break;
        }
      if (!open) continue;
      if (found < 0 || nd.lo < nodes[found].lo) found = id;
    }
    return found;
  };

  while (true) {
    int leaf_id = leftmost_open_leaf();
    if (leaf_id < 0) break;
    const int lo = nodes[leaf_id].lo, hi = nodes[leaf_id].hi;
    const int depth = nodes[leaf_id].depth;
    out.max_depth = std::max(out.max_depth, depth);
    if (depth > max_level + 1)
      throw InvariantViolation("interval tree exceeded depth max_level + 1");

    std::vector<std::vector<int>> by_level(max_level + 1);
    for (int i = lo; i <= hi; ++i) {
      if (levels[i] == 0)
        throw InvariantViolation("level-0 index inside a leaf interval");
      if (levels[i] > max_level)
        throw InvariantViolation("segment level beyond max_level");
      by_level[levels[i]].push_back(i);
    }

    int pick_level = -1;
    int64_t pick_q = 0, pick_beta = 0;
    for (int L = 1; L <= max_level && pick_level < 0; ++L) {
      int64_t p = static_cast<int64_t>(by_level[L].size());
      if (p == 0 || p <= 4 * beta(L)) continue;
      int64_t q = 0;
      for (size_t a = 0; a < by_level[L].size(); ++a)
        for (size_t b = a + 1; b < by_level[L].size(); ++b)
          if (!tight(by_level[L][a], by_level[L][b])) ++q;
      if (p * beta(L) > 8 * q) {
        pick_level = L;
        pick_q = q;
        pick_beta = beta(L);
      }
    }

    ActivationEvent ev;
    ev.lo = lo;
    ev.hi = hi;
    ev.depth = depth;
    if (pick_level < 0) {
      for (int i = lo; i <= hi; ++i) ev.activated += activate(i);
      ev.case_id = 1;
      ++out.case1_events;
    } else {
      const auto& idxs = by_level[pick_level];
      const int p = static_cast<int>(idxs.size());
      const int b = static_cast<int>(pick_beta);
      for (int x = 0; x < b; ++x) ev.activated += activate(idxs[x]);
      for (int x = p - b; x < p; ++x) ev.activated += activate(idxs[x]);
      // Bridge triple: a prefix and a suffix index both tight with a common
      // middle index; the case-2 counting guarantees one exists.
      int ix = -1, iy = -1, iz = -1;
      for (int x = 0; x < b && ix < 0; ++x)
        for (int y = p - b; y < p && ix < 0; ++y)
          for (int z = b; z < p - b; ++z)
            if (tight(idxs[x], idxs[z]) && tight(idxs[y], idxs[z])) {
              ix = idxs[x];
              iy = idxs[y];
              iz = idxs[z];
              break;
            }
      if (ix < 0)
        throw InvariantViolation(
            "no bridge triple despite case-2 firing (p=" + std::to_string(p) +
            ", q=" + std::to_string(pick_q) +
            ", beta=" + std::to_string(b) + ")");
      int id0 = static_cast<int>(nodes.size());
      nodes[leaf_id].kid[0] = id0;
      nodes[leaf_id].kid[1] = id0 + 1;
      nodes.push_back({lo, ix, {-1, -1}, depth + 1});
      nodes.push_back({iy, hi, {-1, -1}, depth + 1});
      ev.case_id = 2;
      ev.level = pick_level;
      ev.p = p;
      ev.q = pick_q;
      ev.beta = pick_beta;
      ev.bridge_x = ix;
      ev.bridge_y = iy;
      ev.bridge_z = iz;
      ++out.case2_events;
    }
    out.events.push_back(ev);
  }
  return out;
}

}  // namespace spanner
