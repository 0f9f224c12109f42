#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "spanner/verify.hpp"
#include "test_util.hpp"

using namespace spanner;

namespace {

EdgeSet full_edge_set(const Graph& g) {
  EdgeSet h;
  for (const Edge& e : g.edges()) h.insert(e.u, e.v);
  return h;
}

}  // namespace

TEST_CASE("h = g gives zero errors") {
  Graph g = gen_gnm(128, 512, 2);
  auto rep = stretch_report(g, full_edge_set(g), StretchOptions::all());
  CHECK(rep.max_error == 0);
  CHECK(rep.disconnected_pairs == 0);
  CHECK(rep.mean_error == 0.0);
}

TEST_CASE("path spanner of the path is exact") {
  Graph g = gen_path(64);
  auto rep = stretch_report(g, full_edge_set(g), StretchOptions::all());
  CHECK(rep.max_error == 0);
}

TEST_CASE("missing bridge reported as disconnection") {
  Graph g = gen_path(10);
  EdgeSet h;
  for (const Edge& e : g.edges())
    if (!(e.u == 4 && e.v == 5)) h.insert(e.u, e.v);
  auto rep = stretch_report(g, h, StretchOptions::all());
  CHECK(rep.disconnected_pairs > 0);
  CHECK_FALSE(rep.exact_ok());
}

TEST_CASE("non-subgraph rejected") {
  Graph g = gen_path(5);
  EdgeSet h;
  h.insert(0, 4);
  CHECK_THROWS_AS(stretch_report(g, h, StretchOptions::all()),
                  std::invalid_argument);
}

TEST_CASE("all-pairs cap at n = 2048") {
  Graph g = gen_gnm(2049, 4000, 1);
  CHECK_THROWS_AS(stretch_report(g, full_edge_set(g), StretchOptions::all()),
                  std::invalid_argument);
}

TEST_CASE("sampling is deterministic under seed") {
  Graph g = gen_gnm(256, 768, 3);
  auto a = stretch_report(g, full_edge_set(g), StretchOptions::sample(64, 9));
  auto b = stretch_report(g, full_edge_set(g), StretchOptions::sample(64, 9));
  REQUIRE(a.pairs.size() == b.pairs.size());
  for (size_t i = 0; i < a.pairs.size(); ++i) {
    CHECK(a.pairs[i].s == b.pairs[i].s);
    CHECK(a.pairs[i].t == b.pairs[i].t);
  }
}

TEST_CASE("bidirectional BFS agrees with plain BFS") {
  for (uint64_t seed : {1, 2, 3, 4}) {
    Graph g = gen_gnm(200, 420, seed);  // sparse enough to disconnect
    for (Vertex s : {0, 17, 63}) {
      auto d = bfs_distances(g, s);
      for (Vertex t = 0; t < g.vertex_count(); t += 7)
        CHECK(bidir_bfs_distance(g, s, t) == d[t]);
    }
  }
  Graph cy = gen_cycle(101);
  auto d0 = bfs_distances(cy, 0);
  for (Vertex t = 0; t < 101; ++t) CHECK(bidir_bfs_distance(cy, 0, t) == d0[t]);
}

TEST_CASE("slope fit recovers exact power laws") {
  std::vector<std::pair<double, double>> lin, p15;
  for (double n : {512.0, 1024.0, 2048.0, 4096.0, 8192.0}) {
    lin.emplace_back(n, 3 * n);
    p15.emplace_back(n, std::pow(n, 1.5));
  }
  auto f1 = slope_fit(lin);
  CHECK(std::abs(f1.slope - 1.0) < 1e-9);
  auto f2 = slope_fit(p15);
  CHECK(std::abs(f2.slope - 1.5) < 1e-9);

  std::vector<std::pair<double, double>> few{{1, 1}, {2, 2}, {3, 3}};
  CHECK_THROWS_AS(slope_fit(few), std::invalid_argument);
}

TEST_CASE("csv and json serialization") {
  Graph g = gen_path(6);
  auto rep = stretch_report(g, full_edge_set(g), StretchOptions::all());
  json j = rep.to_json();
  CHECK(j["schema"] == 1);
  CHECK(j["max_error"] == 0);
  std::ostringstream csv;
  rep.to_csv(csv);
  CHECK(csv.str().rfind("s,t,dist_g,dist_h,error", 0) == 0);
}

TEST_CASE("per-class max errors keyed by power-of-two classes") {
  Graph g = gen_path(33);
  EdgeSet h = full_edge_set(g);
  auto rep = stretch_report(g, h, StretchOptions::all());
  for (const auto& [cls, err] : rep.per_class_max) {
    CHECK((cls & (cls - 1)) == 0);
    CHECK(err == 0);
  }
}
