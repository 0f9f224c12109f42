#include "spanner/path_partition.hpp"

#include <set>
#include <string>

namespace spanner {

void visit_partition(std::span<const Vertex> pi, const BallClustering& cl,
                     const BallScaffold& sc,
                     const std::function<bool(const PathSegment&)>& visit) {
  if (pi.size() < 2) return;
  size_t pos = 0;
  const size_t end = pi.size() - 1;
  while (pos < end) {
    PathSegment seg;
    seg.first = pos;
    seg.s = pi[pos];
    seg.ball = cl.covering_ball[seg.s];
    const BallNeighborhood& nb = sc.balls[seg.ball];
    int two_r = 2 * cl.balls[seg.ball].radius;
    // Last path vertex within 2r of the host center. On a shortest path all
    // such vertices sit within 4r hops of pos, so the scan window is bounded.
    size_t limit = std::min(end, pos + static_cast<size_t>(4 * cl.balls[seg.ball].radius) + 1);
    size_t last = pos;
    for (size_t j = pos + 1; j <= limit; ++j)
      if (nb.within(pi[j], two_r)) last = j;
    seg.last = last;
    seg.t = pi[last];
    if (!visit(seg)) return;
    pos = last;
  }
}

PathPartition path_partition(const Graph& g, std::span<const Vertex> pi,
                             const BallClustering& cl,
                             const BallScaffold& sc) {
  if (pi.empty()) throw std::invalid_argument("path_partition: empty path");
  for (Vertex v : pi) g.check_vertex(v);
  for (size_t i = 0; i + 1 < pi.size(); ++i)
    if (!g.has_edge(pi[i], pi[i + 1]))
      throw std::invalid_argument("path_partition: pi is not a path in g");
  for (Vertex v : pi)
    if (cl.covering_ball[v] < 0)
      throw std::runtime_error("path_partition: clustering does not cover pi");

  PathPartition pp;
  visit_partition(pi, cl, sc, [&](const PathSegment& seg) {
    pp.segments.push_back(seg);
    return true;
  });
  return pp;
}

PartitionCheck check_partition(const Graph& g, std::span<const Vertex> pi,
                               const BallClustering& cl,
                               const PathPartition& pp) {
  PartitionCheck out;
  auto fail = [&](std::string why) {
    out.ok = false;
    out.failure = std::move(why);
    return out;
  };
  if (pi.size() < 2) {
    out.ok = pp.segments.empty();
    if (!out.ok) out.failure = "segments on a trivial path";
    return out;
  }
  const auto& segs = pp.segments;
  if (segs.empty()) return fail("no segments");
  if (segs.front().first != 0 || segs.front().s != pi.front())
    return fail("first segment does not start at s");
  if (segs.back().last != pi.size() - 1 || segs.back().t != pi.back())
    return fail("last segment does not end at t");
  for (size_t i = 0; i + 1 < segs.size(); ++i)
    if (segs[i].last != segs[i + 1].first || segs[i].t != segs[i + 1].s)
      return fail("segment endpoints not chained");

  std::set<int> hosts;
  for (const auto& seg : segs)
    if (!hosts.insert(seg.ball).second) return fail("host balls not distinct");

  int min_radius = cl.balls.front().radius;
  for (const ClusterBall& b : cl.balls)
    min_radius = std::min(min_radius, b.radius);
  for (size_t i = 0; i < segs.size(); ++i) {
    const auto& seg = segs[i];
    const ClusterBall& b = cl.balls[seg.ball];
    auto d = bfs_distances(g, b.center);
    if (d[seg.s] > b.radius) return fail("segment start outside B(c,r)");
    if (d[seg.t] > 2 * b.radius) return fail("segment end outside B(c,2r)");
    for (size_t j = seg.first; j <= seg.last; ++j)
      if (d[pi[j]] > 4 * b.radius) return fail("segment leaves B(c,4r)");
    if (i + 1 < segs.size()) {
      size_t len = seg.last - seg.first;
      if (len < static_cast<size_t>(b.radius))
        return fail("interior segment shorter than its host radius");
    }
  }
  size_t bound = (pi.size() - 1) / static_cast<size_t>(min_radius) + 1;
  if (segs.size() > bound) return fail("segment count exceeds |pi|/R + 1");
  out.ok = true;
  return out;
}

}  // namespace spanner
