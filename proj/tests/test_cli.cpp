#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <unistd.h>

#include "spanner/additive_spanner.hpp"
#include "spanner/cli_commands.hpp"
#include "spanner/graph.hpp"

using namespace spanner;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() /
          ("spanner_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const {
    return (dir / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("gen: path, grid and deterministic gnm") {
  TempDir tmp;
  CHECK(run_cli({"gen", "--kind", "path", "--n", "5", "--out",
                 tmp / "p5.edges"}) == 0);
  Graph p5 = load_edge_list(tmp / "p5.edges");
  CHECK(p5.edge_count() == 4);

  CHECK(run_cli({"gen", "--kind", "grid", "--rows", "10", "--cols", "10",
                 "--out", tmp / "grid.edges"}) == 0);
  CHECK(load_edge_list(tmp / "grid.edges").edge_count() == 180);

  CHECK(run_cli({"gen", "--kind", "gnm", "--n", "100", "--m", "300", "--seed",
                 "1", "--out", tmp / "a.edges"}) == 0);
  CHECK(run_cli({"gen", "--kind", "gnm", "--n", "100", "--m", "300", "--seed",
                 "1", "--out", tmp / "b.edges"}) == 0);
  CHECK(slurp(tmp / "a.edges") == slurp(tmp / "b.edges"));

  CHECK(run_cli({"gen", "--kind", "gnm", "--n", "5", "--m", "99", "--out",
                 tmp / "bad.edges"}) == 2);
}

TEST_CASE("build + verify round trip on a path graph") {
  TempDir tmp;
  REQUIRE(run_cli({"gen", "--kind", "path", "--n", "100", "--out",
                   tmp / "g.edges"}) == 0);
  CHECK(run_cli({"build", "--graph", tmp / "g.edges", "--alg", "sublinear",
                 "--k", "2", "--eps", "0.25", "--out", tmp / "h.edges",
                 "--log", tmp / "h.json", "--threads", "1"}) == 0);
  // The spanner of a path is the path itself.
  CHECK(load_edge_list(tmp / "h.edges").edge_count() == 99);
  json log = json::parse(slurp(tmp / "h.json"));
  CHECK(log["schema"] == 1);

  CHECK(run_cli({"verify", "--graph", tmp / "g.edges", "--spanner",
                 tmp / "h.edges", "--all", "--report", tmp / "rep.json"}) == 0);
  json rep = json::parse(slurp(tmp / "rep.json"));
  CHECK(rep["stretch"]["max_error"] == 0);
}

TEST_CASE("verify exit codes: identity, bridge removal, non-subgraph") {
  TempDir tmp;
  REQUIRE(run_cli({"gen", "--kind", "path", "--n", "10", "--out",
                   tmp / "g.edges"}) == 0);
  // Identity spanner.
  fs::copy(tmp / "g.edges", tmp / "same.edges");
  CHECK(run_cli({"verify", "--graph", tmp / "g.edges", "--spanner",
                 tmp / "same.edges", "--all"}) == 0);
  // Remove a bridge: a reachable pair becomes disconnected -> exit 4.
  {
    std::ofstream out(tmp / "broken.edges");
    Graph g = load_edge_list(tmp / "g.edges");
    for (const Edge& e : g.edges())
      if (!(e.u == 4 && e.v == 5)) out << e.u << ' ' << e.v << '\n';
  }
  CHECK(run_cli({"verify", "--graph", tmp / "g.edges", "--spanner",
                 tmp / "broken.edges", "--all"}) == 4);
  // Non-subgraph edge -> exit 4.
  {
    std::ofstream out(tmp / "alien.edges");
    out << "0 9\n";
  }
  CHECK(run_cli({"verify", "--graph", tmp / "g.edges", "--spanner",
                 tmp / "alien.edges", "--all"}) == 4);
}

TEST_CASE("subset build with one terminal is vacuous but succeeds") {
  TempDir tmp;
  REQUIRE(run_cli({"gen", "--kind", "gnm", "--n", "64", "--m", "160", "--seed",
                   "3", "--out", tmp / "g.edges"}) == 0);
  {
    std::ofstream out(tmp / "U.txt");
    out << "7\n";
  }
  CHECK(run_cli({"build", "--graph", tmp / "g.edges", "--alg", "subset",
                 "--terminals", tmp / "U.txt", "--eps", "0.25", "--out",
                 tmp / "h.edges"}) == 0);
}

TEST_CASE("additive preset emits a schedule ending below 0.403") {
  TempDir tmp;
  REQUIRE(run_cli({"gen", "--kind", "gnm", "--n", "128", "--m", "384",
                   "--seed", "2", "--out", tmp / "g.edges"}) == 0);
  CHECK(run_cli({"build", "--graph", tmp / "g.edges", "--alg", "additive",
                 "--preset", "0403", "--eps", "0.25", "--out", tmp / "h.edges",
                 "--log", tmp / "log.json", "--threads", "1"}) == 0);
  json log = json::parse(slurp(tmp / "log.json"));
  auto rho = log["schedule_rho"].get<std::vector<double>>();
  REQUIRE(!rho.empty());
  double last = rho.back();
  CHECK(reduction_f(last) + 1e-4 <= 0.403);
  for (size_t i = 1; i < rho.size(); ++i) CHECK(rho[i] < rho[i - 1]);
}

TEST_CASE("pairwise build consumes a pair file") {
  TempDir tmp;
  REQUIRE(run_cli({"gen", "--kind", "gnm", "--n", "128", "--m", "512",
                   "--seed", "5", "--out", tmp / "g.edges"}) == 0);
  {
    std::ofstream out(tmp / "P.txt");
    out << "# demand pairs\n0 100\n5 90\n17 23\n";
  }
  CHECK(run_cli({"build", "--graph", tmp / "g.edges", "--alg", "pairwise",
                 "--pairs", tmp / "P.txt", "--k", "2", "--eps", "0.25",
                 "--out", tmp / "h.edges", "--threads", "1"}) == 0);
  CHECK(run_cli({"verify", "--graph", tmp / "g.edges", "--spanner",
                 tmp / "h.edges", "--pairs", tmp / "P.txt"}) == 0);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli({"build", "--graph", "/nonexistent", "--alg", "bogus"}) == 2);
  CHECK(run_cli({"nonsense"}) == 2);
  CHECK(run_cli({"build"}) == 2);
}

TEST_CASE("bench produces rows and a slope summary") {
  TempDir tmp;
  CHECK(run_cli({"bench", "--ns", "64,96,128,192", "--algs", "mult", "--k",
                 "3", "--seeds", "1", "--sample", "32", "--csv",
                 tmp / "bench.csv", "--threads", "1"}) == 0);
  std::string csv = slurp(tmp / "bench.csv");
  CHECK(csv.find("run,64") != std::string::npos);
  CHECK(csv.find("slope,") != std::string::npos);
}
