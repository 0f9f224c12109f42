#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spanner/preservers.hpp"
#include "spanner/verify.hpp"
#include "test_util.hpp"

using namespace spanner;

TEST_CASE("bottleneck radius satisfies the boundary bound") {
  Graph p100 = gen_path(100);
  // Every d in (5,20] works here: each adjacent-layer pair has size <= 4.
  int d = bottleneck_radius(p100, 50, 5, 20, 40);
  CHECK(d > 5);
  CHECK(d <= 20);
  auto bd = ball_boundary(p100, 50, d);
  auto bd1 = ball_boundary(p100, 50, d + 1);
  size_t ball_size = ball(p100, 50, 40).members.size();
  CHECK(bd.size() + bd1.size() <= 2 * ball_size / (20 - 5));
}

TEST_CASE("bottleneck radius with empty layers beyond eccentricity") {
  // Star: all layers beyond 1 are empty, any d in (1,2] is fine.
  std::vector<Edge> es;
  for (Vertex i = 1; i <= 8; ++i) es.push_back({0, i});
  Graph star = Graph::from_edges(9, es);
  int d = bottleneck_radius(star, 0, 1, 2, 3);
  CHECK(d == 2);
  CHECK(ball_boundary(star, 0, d).empty());
}

TEST_CASE("bottleneck radius matches brute-force minimum bound") {
  Graph g = gen_gnm(256, 1024, 3);
  for (Vertex c : {0, 100, 255}) {
    int r1 = 1, r2 = 4, r = 6;
    int d = bottleneck_radius(g, c, r1, r2, r);
    CHECK(d > r1);
    CHECK(d <= r2);
    auto dist = bfs_distances(g, c);
    auto layer_size = [&](int x) {
      size_t cnt = 0;
      for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (dist[v] == x) ++cnt;
      return cnt;
    };
    size_t ball_r = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (dist[v] <= r) ++ball_r;
    size_t best = SIZE_MAX;
    for (int x = r1 + 1; x <= r2; ++x)
      best = std::min(best, layer_size(x) + layer_size(x + 1));
    CHECK(layer_size(d) + layer_size(d + 1) == best);
    CHECK(best <= 2 * ball_r / (r2 - r1));
  }
  CHECK_THROWS_AS(bottleneck_radius(g, 0, 3, 3, 6), std::invalid_argument);
  CHECK_THROWS_AS(bottleneck_radius(g, 0, 0, 3, 6), std::invalid_argument);
}

TEST_CASE("consistent paths on trees give the Steiner edges") {
  Graph t = Graph::from_edges(
      8, {{0, 1}, {1, 2}, {2, 3}, {1, 4}, {4, 5}, {2, 6}, {6, 7}});
  std::vector<Vertex> S{3, 5, 7};
  auto fam = consistent_paths(t, S);
  // The union must be exactly the tree edges on the 3-5, 3-7, 5-7 paths.
  EdgeSet expect;
  for (auto [a, b] : std::vector<std::pair<Vertex, Vertex>>{{3, 5}, {3, 7}, {5, 7}}) {
    auto p = unique_shortest_path(t, a, b);
    for (size_t i = 0; i + 1 < p.path.size(); ++i)
      expect.insert(p.path[i], p.path[i + 1]);
  }
  CHECK(fam.union_edges.size() == expect.size());
}

TEST_CASE("consistent paths: singleton set gives empty family") {
  Graph g = gen_gnm(32, 64, 1);
  auto fam = consistent_paths(g, std::vector<Vertex>{5});
  CHECK(fam.union_edges.size() == 0);
  CHECK(fam.reachable_pairs == 0);
}

TEST_CASE("consistent paths: pairwise intersections contiguous") {
  Graph g = gen_gnm(256, 1024, 11);
  std::vector<Vertex> S;
  for (Vertex v = 0; v < 16; ++v) S.push_back(v * 15);
  auto fam = consistent_paths(g, S);
  std::vector<std::vector<Vertex>> paths;
  for (size_t i = 0; i < S.size(); ++i)
    for (size_t j = i + 1; j < S.size(); ++j) {
      auto p = fam.path(fam.sources[i], fam.sources[j]);
      if (!p.empty()) paths.push_back(std::move(p));
    }
  for (size_t i = 0; i < paths.size(); ++i)
    for (size_t j = i + 1; j < paths.size(); ++j)
      CHECK(testutil::intersection_contiguous(paths[i], paths[j]));
  // Union edge count: reported against the n + sqrt(n)|S|^2 form.
  double form = 256 + std::sqrt(256.0) * S.size() * S.size();
  CHECK(static_cast<double>(fam.union_edges.size()) <= form);
}

TEST_CASE("distance preserver: exact distances on demand pairs") {
  SUBCASE("empty pair set") {
    Graph g = gen_gnm(64, 128, 1);
    auto r = distance_preserver(g, PairSet{});
    CHECK(r.edges.size() == 0);
  }
  SUBCASE("tree input uses tree edges") {
    Graph t = gen_path(20);
    PairSet p = PairSet::from({{0, 19}, {3, 7}});
    auto r = distance_preserver(t, p);
    auto report =
        stretch_report(t, r.edges, StretchOptions::explicit_pairs(p));
    CHECK(report.max_error == 0);
    CHECK(report.disconnected_pairs == 0);
  }
  SUBCASE("random instance vs oracle") {
    Graph g = gen_gnm(256, 1024, 5);
    auto raw = testutil::random_pairs(256, 32, 77);
    PairSet p = PairSet::from(raw);
    auto r = distance_preserver(g, p);
    CHECK(r.unreachable.empty());
    auto report =
        stretch_report(g, r.edges, StretchOptions::explicit_pairs(p));
    CHECK(report.max_error == 0);
    CHECK(report.disconnected_pairs == 0);
  }
  SUBCASE("unreachable pairs reported and excluded") {
    Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
    PairSet p = PairSet::from({{0, 2}, {0, 1}});
    auto r = distance_preserver(g, p);
    REQUIRE(r.unreachable.size() == 1);
    CHECK(r.unreachable[0] == std::pair<Vertex, Vertex>{0, 2});
    CHECK(r.edges.size() == 1);
  }
}

TEST_CASE("preserver size scaling over a gnm grid") {
  // Fitted-constant check of the n + sqrt(n)|P| form.
  double max_c = 0;
  for (Vertex n : {256, 512, 1024, 2048, 4096}) {
    Graph g = gen_gnm(n, 4 * n, 9);
    PairSet p = PairSet::from(testutil::random_pairs(n, 64, 123));
    auto r = distance_preserver(g, p);
    double form = n + std::sqrt(static_cast<double>(n)) * p.size();
    max_c = std::max(max_c, r.edges.size() / form);
  }
  CHECK(max_c <= 1.0);  // frozen from a calibration run
}
