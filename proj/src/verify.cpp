#include "spanner/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <set>

#include "spanner/parallel.hpp"

namespace spanner {

namespace {

int64_t distance_class(int64_t d) {
  int64_t c = 1;
  while (2 * c <= d) c *= 2;
  return c;
}

}  // namespace

json StretchReport::to_json() const {
  json j;
  j["schema"] = 1;
  j["pair_count"] = pairs.size();
  j["max_error"] = max_error;
  j["mean_error"] = mean_error;
  j["disconnected_pairs"] = disconnected_pairs;
  json cls = json::object();
  for (const auto& [d, e] : per_class_max) cls[std::to_string(d)] = e;
  j["per_class_max_error"] = cls;
  return j;
}

void StretchReport::to_csv(std::ostream& out) const {
  out << "s,t,dist_g,dist_h,error\n";
  for (const auto& p : pairs) {
    out << p.s << ',' << p.t << ',' << p.dist_g << ',';
    if (p.dist_h == kInfDist)
      out << "inf,inf\n";
    else
      out << p.dist_h << ',' << p.error() << '\n';
  }
}

StretchReport stretch_report(const Graph& g, const EdgeSet& h,
                             const StretchOptions& opt) {
  h.check_subgraph_of(g);
  Vertex n = g.vertex_count();
  if (opt.mode == StretchOptions::Mode::kAll && n > 2048)
    throw std::invalid_argument("stretch_report: all-pairs limited to n <= 2048");

  Graph hg = h.to_graph(g);

  // Collect the pair list grouped by source.
  std::vector<std::pair<Vertex, Vertex>> want;
  switch (opt.mode) {
    case StretchOptions::Mode::kAll:
      for (Vertex s = 0; s < n; ++s)
        for (Vertex t = s + 1; t < n; ++t) want.emplace_back(s, t);
      break;
    case StretchOptions::Mode::kSample: {
      if (n >= 2) {
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<Vertex> pick(0, n - 1);
        std::set<std::pair<Vertex, Vertex>> seen;
        size_t limit = std::min<size_t>(
            opt.sample_count, static_cast<size_t>(n) * (n - 1) / 2);
        size_t guard = 0;
        while (seen.size() < limit && guard < 64 * limit + 1024) {
          ++guard;
          Vertex s = pick(rng), t = pick(rng);
          if (s == t) continue;
          if (s > t) std::swap(s, t);
          seen.insert({s, t});
        }
        want.assign(seen.begin(), seen.end());
      }
      break;
    }
    case StretchOptions::Mode::kExplicit:
      want = opt.pairs.pairs;
      for (auto [s, t] : want) {
        g.check_vertex(s);
        g.check_vertex(t);
      }
      break;
  }

  // Group by source; one BFS pair (G and H) per distinct source.
  std::sort(want.begin(), want.end());
  std::vector<Vertex> sources;
  for (auto& [s, t] : want)
    if (sources.empty() || sources.back() != s) sources.push_back(s);

  std::vector<std::vector<PairStretch>> per_source(sources.size());
  parallel_for(0, sources.size(), opt.threads, [&](size_t i) {
    Vertex s = sources[i];
    auto dg = bfs_distances(g, s);
    auto dh = bfs_distances(hg, s);
    auto lo = std::lower_bound(want.begin(), want.end(),
                               std::make_pair(s, Vertex(-1)));
    for (auto it = lo; it != want.end() && it->first == s; ++it) {
      PairStretch ps;
      ps.s = s;
      ps.t = it->second;
      ps.dist_g = dg[it->second];
      ps.dist_h = dh[it->second];
      if (ps.dist_g == kInfDist) continue;  // not a demand: disconnected in G
      per_source[i].push_back(ps);
    }
  });

  StretchReport rep;
  for (auto& chunk : per_source)
    rep.pairs.insert(rep.pairs.end(), chunk.begin(), chunk.end());

  double sum = 0;
  size_t counted = 0;
  for (const auto& p : rep.pairs) {
    if (p.dist_h == kInfDist) {
      ++rep.disconnected_pairs;
      continue;
    }
    int64_t e = p.error();
    if (e < 0) throw std::logic_error("stretch_report: dist_h < dist_g");
    rep.max_error = std::max(rep.max_error, e);
    sum += static_cast<double>(e);
    ++counted;
    if (p.dist_g > 0) {
      int64_t cls = distance_class(p.dist_g);
      auto [it, fresh] = rep.per_class_max.try_emplace(cls, e);
      if (!fresh) it->second = std::max(it->second, e);
    }
  }
  rep.mean_error = counted ? sum / counted : 0.0;
  return rep;
}

int32_t bidir_bfs_distance(const Graph& g, Vertex s, Vertex t) {
  g.check_vertex(s);
  g.check_vertex(t);
  if (s == t) return 0;
  Vertex n = g.vertex_count();
  std::vector<int32_t> ds(n, kInfDist), dt(n, kInfDist);
  std::vector<Vertex> fs{s}, ft{t};
  ds[s] = 0;
  dt[t] = 0;
  int32_t level_s = 0, level_t = 0;
  int64_t best = kInfDist;
  while (!fs.empty() && !ft.empty() &&
         static_cast<int64_t>(level_s) + level_t + 1 < best) {
    bool expand_s = fs.size() <= ft.size();
    auto& frontier = expand_s ? fs : ft;
    auto& mine = expand_s ? ds : dt;
    auto& other = expand_s ? dt : ds;
    std::vector<Vertex> next;
    for (Vertex u : frontier) {
      for (Vertex w : g.neighbors(u)) {
        if (other[w] != kInfDist)
          best = std::min<int64_t>(best, static_cast<int64_t>(mine[u]) + 1 + other[w]);
        if (mine[w] == kInfDist) {
          mine[w] = mine[u] + 1;
          next.push_back(w);
        }
      }
    }
    frontier = std::move(next);
    (expand_s ? level_s : level_t) += 1;
  }
  return best >= kInfDist ? kInfDist : static_cast<int32_t>(best);
}

SlopeFit slope_fit(const std::vector<std::pair<double, double>>& obs) {
  if (obs.size() < 4)
    throw std::invalid_argument("slope_fit: need at least 4 observations");
  for (size_t i = 0; i < obs.size(); ++i) {
    if (obs[i].first <= 0 || obs[i].second <= 0)
      throw std::invalid_argument("slope_fit: observations must be positive");
    if (i > 0 && obs[i].first <= obs[i - 1].first)
      throw std::invalid_argument("slope_fit: n must be strictly increasing");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t k = obs.size();
  std::vector<std::pair<double, double>> logs;
  logs.reserve(k);
  for (auto [x, y] : obs) logs.emplace_back(std::log(x), std::log(y));
  for (auto [x, y] : logs) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  SlopeFit fit;
  double denom = k * sxx - sx * sx;
  fit.slope = (k * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / k;
  double rss = 0;
  for (auto [x, y] : logs) {
    double r = y - (fit.slope * x + fit.intercept);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / k);
  return fit;
}

}  // namespace spanner
