#include "spanner/cli_commands.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include <CLI11.hpp>

#include "spanner/additive_spanner.hpp"
#include "spanner/base_spanners.hpp"
#include "spanner/clustering.hpp"
#include "spanner/parallel.hpp"
#include "spanner/pairwise_sublinear.hpp"
#include "spanner/preservers.hpp"
#include "spanner/sublinear_spanner.hpp"
#include "spanner/subset_spanner.hpp"
#include "spanner/verify.hpp"

namespace spanner {

namespace {

int64_t label_of(const Graph& g, Vertex v) {
  return g.labels().empty() ? v : g.labels()[v];
}

Vertex id_of_label(const Graph& g,
                   const std::unordered_map<int64_t, Vertex>& map,
                   int64_t label) {
  if (g.labels().empty()) {
    if (label < 0 || label >= g.vertex_count())
      throw std::invalid_argument("vertex label out of range: " +
                                  std::to_string(label));
    return static_cast<Vertex>(label);
  }
  auto it = map.find(label);
  if (it == map.end())
    throw std::invalid_argument("unknown vertex label: " +
                                std::to_string(label));
  return it->second;
}

std::unordered_map<int64_t, Vertex> label_map(const Graph& g) {
  std::unordered_map<int64_t, Vertex> m;
  for (size_t i = 0; i < g.labels().size(); ++i)
    m[g.labels()[i]] = static_cast<Vertex>(i);
  return m;
}

std::vector<std::pair<int64_t, int64_t>> read_number_pairs(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::vector<std::pair<int64_t, int64_t>> out;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    int64_t a, b;
    if (ls >> a >> b) out.emplace_back(a, b);
  }
  return out;
}

std::vector<int64_t> read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::vector<int64_t> out;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    int64_t a;
    while (ls >> a) out.push_back(a);
  }
  return out;
}

PairSet load_pairs(const Graph& g, const std::string& path) {
  auto lm = label_map(g);
  std::vector<std::pair<Vertex, Vertex>> raw;
  for (auto [a, b] : read_number_pairs(path))
    raw.emplace_back(id_of_label(g, lm, a), id_of_label(g, lm, b));
  return PairSet::from(std::move(raw));
}

std::vector<Vertex> load_terminals(const Graph& g, const std::string& path) {
  auto lm = label_map(g);
  std::vector<Vertex> out;
  for (int64_t a : read_numbers(path)) out.push_back(id_of_label(g, lm, a));
  return out;
}

void save_edge_subset(const Graph& g, const EdgeSet& edges,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (const Edge& e : edges.sorted_edges())
    out << label_of(g, e.u) << ' ' << label_of(g, e.v) << '\n';
}

// Reads an edge-list file as a subset of g's edges (labels respected).
// Throws std::domain_error on a non-subgraph edge (verification failure).
EdgeSet load_edge_subset(const Graph& g, const std::string& path) {
  auto lm = label_map(g);
  EdgeSet out;
  for (auto [a, b] : read_number_pairs(path)) {
    Vertex u, v;
    try {
      u = id_of_label(g, lm, a);
      v = id_of_label(g, lm, b);
    } catch (const std::invalid_argument& e) {
      throw std::domain_error(e.what());
    }
    if (!g.has_edge(u, v))
      throw std::domain_error("spanner edge not in graph: " +
                              std::to_string(a) + " " + std::to_string(b));
    out.insert(u, v);
  }
  return out;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << j.dump(2) << '\n';
}

struct BuildOptions {
  std::string graph_file, alg, out_file, log_file, pairs_file, terminals_file;
  std::string preset;
  int k = 2;
  double eps = 0.25;
  int K = 0;
  double schedule_eps = 1e-4;
  int d = 2;
  uint64_t seed = 1;
  int threads = 0;
  bool exact_audit = false;
};

Graph load_graph_warn(const std::string& path) {
  LoadReport rep;
  Graph g = load_edge_list(path, &rep);
  if (rep.self_loops_rejected || rep.duplicates_rejected)
    std::cerr << "warning: rejected " << rep.self_loops_rejected
              << " self-loops, " << rep.duplicates_rejected
              << " duplicate edges\n";
  return g;
}

int cmd_build(const BuildOptions& o) {
  Graph g = load_graph_warn(o.graph_file);
  int threads = o.threads > 0 ? o.threads : default_thread_count();
  SpannerResult result;

  if (o.alg == "pairwise") {
    if (o.pairs_file.empty())
      throw std::invalid_argument("--alg pairwise requires --pairs");
    SublinearParams p{o.k, o.eps, o.seed, threads, o.exact_audit};
    result = build_sublinear_pairwise_spanner(g, load_pairs(g, o.pairs_file), p);
  } else if (o.alg == "sublinear") {
    SublinearParams p{o.k, o.eps, o.seed, threads, o.exact_audit};
    result = build_sublinear_spanner(g, p);
  } else if (o.alg == "subset") {
    if (o.terminals_file.empty())
      throw std::invalid_argument("--alg subset requires --terminals");
    result = build_subset_spanner(g, load_terminals(g, o.terminals_file), o.eps,
                                  nullptr, threads);
  } else if (o.alg == "additive37") {
    result = build_additive_37(g, o.eps, o.seed, threads);
  } else if (o.alg == "additive") {
    int K = o.K;
    double eps = o.eps;
    double sched = o.schedule_eps;
    if (o.preset == "0403") {
      sched = 1e-4;
      K = reduction_schedule(sched, 0.403).K;
    } else if (!o.preset.empty()) {
      throw std::invalid_argument("unknown preset: " + o.preset);
    }
    result = build_additive_0403(g, eps, K, sched, o.seed, threads);
  } else if (o.alg == "pairwise6") {
    if (o.pairs_file.empty())
      throw std::invalid_argument("--alg pairwise6 requires --pairs");
    PairSet pp = load_pairs(g, o.pairs_file);
    Plus6Result r = plus6_pairwise_spanner(g, pp);
    result.edges = std::move(r.edges);
    result.log["bought_paths"] = r.bought_paths;
    result.log["size_constant"] =
        static_cast<double>(result.edges.size()) /
        (g.vertex_count() *
         std::pow(std::max<double>(1.0, static_cast<double>(pp.size())), 0.25));
    result.finish_log("plus6_pairwise");
  } else if (o.alg == "allpairs6") {
    Plus6Result r = plus6_allpairs_spanner(g);
    result.edges = std::move(r.edges);
    result.log["bought_paths"] = r.bought_paths;
    result.log["size_constant"] =
        static_cast<double>(result.edges.size()) /
        std::pow(static_cast<double>(g.vertex_count()), 4.0 / 3.0);
    result.finish_log("plus6_allpairs");
  } else if (o.alg == "mult") {
    result.edges = multiplicative_spanner(g, o.k, o.seed);
    result.finish_log("multiplicative");
  } else if (o.alg == "preserver") {
    if (o.pairs_file.empty())
      throw std::invalid_argument("--alg preserver requires --pairs");
    PreserverResult r = distance_preserver(g, load_pairs(g, o.pairs_file));
    result.edges = std::move(r.edges);
    json unreach = json::array();
    for (auto [s, t] : r.unreachable)
      unreach.push_back({label_of(g, s), label_of(g, t)});
    result.log["unreachable_pairs"] = unreach;
    result.finish_log("preserver");
  } else if (o.alg == "sparsify") {
    json sp_log;
    Graph gp = sparsify(g, o.d, o.seed, &sp_log);
    for (const Edge& e : gp.edges()) result.edges.insert(e.u, e.v);
    result.log = sp_log;
    result.finish_log("sparsify");
  } else {
    throw std::invalid_argument("unknown algorithm: " + o.alg);
  }

  if (!o.out_file.empty()) save_edge_subset(g, result.edges, o.out_file);
  if (!o.log_file.empty()) write_json(result.log, o.log_file);
  std::cout << "edges=" << result.edges.size() << "\n";
  return 0;
}

struct VerifyOptions {
  std::string graph_file, spanner_file, pairs_file, report_file, csv_file;
  bool all = false;
  size_t sample = 256;
  uint64_t seed = 1;
  int threads = 0;
};

int cmd_verify(const VerifyOptions& o) {
  Graph g = load_graph_warn(o.graph_file);
  json report;
  report["schema"] = 1;
  EdgeSet h;
  try {
    h = load_edge_subset(g, o.spanner_file);
  } catch (const std::domain_error& e) {
    report["subgraph_ok"] = false;
    report["failure"] = e.what();
    if (!o.report_file.empty()) write_json(report, o.report_file);
    std::cerr << "verification failed: " << e.what() << "\n";
    return 4;
  }
  report["subgraph_ok"] = true;

  StretchOptions so;
  if (!o.pairs_file.empty()) {
    so = StretchOptions::explicit_pairs(load_pairs(g, o.pairs_file));
  } else if (o.all) {
    so = StretchOptions::all();
  } else {
    so = StretchOptions::sample(o.sample, o.seed);
  }
  so.threads = o.threads > 0 ? o.threads : default_thread_count();
  StretchReport rep = stretch_report(g, h, so);
  report["stretch"] = rep.to_json();
  if (!o.report_file.empty()) write_json(report, o.report_file);
  if (!o.csv_file.empty()) {
    std::ofstream csv(o.csv_file);
    rep.to_csv(csv);
  }
  std::cout << "pairs=" << rep.pairs.size() << " max_error=" << rep.max_error
            << " disconnected=" << rep.disconnected_pairs << "\n";
  return rep.exact_ok() ? 0 : 4;
}

struct BenchOptions {
  std::vector<int> ns;
  int m_factor = 3;
  std::vector<std::string> algs;
  std::vector<uint64_t> seeds{1, 2, 3};
  int k = 2;
  double eps = 0.25;
  size_t sample = 256;
  std::string csv_file;
  int threads = 0;
};

int cmd_bench(const BenchOptions& o) {
  if (o.ns.empty() || o.algs.empty())
    throw std::invalid_argument("bench: need --ns and --algs");
  int threads = o.threads > 0 ? o.threads : default_thread_count();
  std::ostringstream csv;
  csv << "kind,n,m,alg,params,seed,edges,max_error,wall_ms,slope\n";
  std::map<std::string, std::map<int, std::vector<double>>> sizes;
  for (int n : o.ns) {
    for (uint64_t seed : o.seeds) {
      Graph g = gen_gnm(n, static_cast<size_t>(o.m_factor) * n, seed);
      for (const std::string& alg : o.algs) {
        auto t0 = std::chrono::steady_clock::now();
        SpannerResult r;
        std::string params;
        if (alg == "sublinear") {
          SublinearParams p{o.k, o.eps, seed, threads, false};
          r = build_sublinear_spanner(g, p);
          params = "k=" + std::to_string(o.k) + ";eps=" + std::to_string(o.eps);
        } else if (alg == "additive37") {
          r = build_additive_37(g, o.eps, seed, threads);
          params = "eps=" + std::to_string(o.eps);
        } else if (alg == "additive0403") {
          int K = reduction_schedule(1e-4, 0.403).K;
          r = build_additive_0403(g, o.eps, K, 1e-4, seed, threads);
          params = "eps=" + std::to_string(o.eps) + ";K=" + std::to_string(K);
        } else if (alg == "allpairs6") {
          Plus6Result b = plus6_allpairs_spanner(g);
          r.edges = std::move(b.edges);
        } else if (alg == "mult") {
          r.edges = multiplicative_spanner(g, o.k, seed);
          params = "k=" + std::to_string(o.k);
        } else {
          throw std::invalid_argument("bench: unknown alg " + alg);
        }
        auto t1 = std::chrono::steady_clock::now();
        double ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        StretchOptions so = StretchOptions::sample(o.sample, seed);
        so.threads = threads;
        StretchReport rep = stretch_report(g, r.edges, so);
        csv << "run," << n << ',' << g.edge_count() << ',' << alg << ','
            << params << ',' << seed << ',' << r.edges.size() << ','
            << rep.max_error << ',' << ms << ",\n";
        sizes[alg][n].push_back(static_cast<double>(r.edges.size()));
      }
    }
  }
  for (const auto& [alg, by_n] : sizes) {
    if (by_n.size() >= 4) {
      std::vector<std::pair<double, double>> obs;
      for (const auto& [n, vals] : by_n) {
        double mean = 0;
        for (double v : vals) mean += v;
        obs.emplace_back(n, mean / vals.size());
      }
      SlopeFit fit = slope_fit(obs);
      csv << "slope,,," << alg << ",,,,,," << fit.slope << "\n";
    }
  }
  if (!o.csv_file.empty()) {
    std::ofstream out(o.csv_file);
    out << csv.str();
  }
  std::cout << csv.str();
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"additive and sublinear graph spanner toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph file");
  std::string gen_kind, gen_out;
  int gen_n = 0, gen_rows = 0, gen_cols = 0;
  size_t gen_m = 0;
  uint64_t gen_seed = 1;
  gen->add_option("--kind", gen_kind, "path|cycle|grid|gnm")->required();
  gen->add_option("--n", gen_n, "vertex count");
  gen->add_option("--m", gen_m, "edge count (gnm)");
  gen->add_option("--rows", gen_rows, "grid rows");
  gen->add_option("--cols", gen_cols, "grid cols");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "output edge-list file")->required();

  // build
  auto* build = app.add_subcommand("build", "build a spanner");
  BuildOptions bo;
  build->add_option("--graph", bo.graph_file)->required();
  build->add_option("--alg", bo.alg)->required();
  build->add_option("--out", bo.out_file);
  build->add_option("--log", bo.log_file);
  build->add_option("--pairs", bo.pairs_file);
  build->add_option("--terminals", bo.terminals_file);
  build->add_option("--preset", bo.preset);
  build->add_option("--k", bo.k);
  build->add_option("--eps", bo.eps);
  build->add_option("--K", bo.K);
  build->add_option("--schedule-eps", bo.schedule_eps);
  build->add_option("--d", bo.d);
  build->add_option("--seed", bo.seed);
  build->add_option("--threads", bo.threads);
  build->add_flag("--exact-audit", bo.exact_audit);

  // verify
  auto* verify = app.add_subcommand("verify", "verify a spanner file");
  VerifyOptions vo;
  verify->add_option("--graph", vo.graph_file)->required();
  verify->add_option("--spanner", vo.spanner_file)->required();
  verify->add_option("--pairs", vo.pairs_file);
  verify->add_flag("--all", vo.all);
  verify->add_option("--sample", vo.sample);
  verify->add_option("--seed", vo.seed);
  verify->add_option("--report", vo.report_file);
  verify->add_option("--csv", vo.csv_file);
  verify->add_option("--threads", vo.threads);

  // audit
  auto* audit = app.add_subcommand("audit", "ball clustering audit report");
  std::string audit_graph, audit_report;
  int audit_r = 2;
  double audit_eps = 0.25;
  audit->add_option("--graph", audit_graph)->required();
  audit->add_option("--R", audit_r);
  audit->add_option("--eps", audit_eps);
  audit->add_option("--report", audit_report);

  // bench
  auto* bench = app.add_subcommand("bench", "benchmark over a graph grid");
  BenchOptions eo;
  bench->add_option("--ns", eo.ns, "vertex counts")->required()->delimiter(',');
  bench->add_option("--m-factor", eo.m_factor);
  bench->add_option("--algs", eo.algs)->required()->delimiter(',');
  bench->add_option("--seeds", eo.seeds)->delimiter(',');
  bench->add_option("--k", eo.k);
  bench->add_option("--eps", eo.eps);
  bench->add_option("--sample", eo.sample);
  bench->add_option("--csv", eo.csv_file);
  bench->add_option("--threads", eo.threads);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      Graph g;
      if (gen_kind == "path") {
        g = gen_path(gen_n);
      } else if (gen_kind == "cycle") {
        g = gen_cycle(gen_n);
      } else if (gen_kind == "grid") {
        g = gen_grid(gen_rows, gen_cols);
      } else if (gen_kind == "gnm") {
        g = gen_gnm(gen_n, gen_m, gen_seed);
      } else {
        throw std::invalid_argument("unknown kind: " + gen_kind);
      }
      save_edge_list(g, gen_out);
      std::cout << "n=" << g.vertex_count() << " m=" << g.edge_count() << "\n";
      return 0;
    }
    if (build->parsed()) return cmd_build(bo);
    if (verify->parsed()) return cmd_verify(vo);
    if (audit->parsed()) {
      Graph g = load_graph_warn(audit_graph);
      BallClustering cl = build_clustering(g, audit_r, audit_eps);
      ClusteringAudit a = audit_clustering(g, cl);
      if (!audit_report.empty()) write_json(a.to_json(), audit_report);
      std::cout << "balls=" << a.ball_count << " pass=" << (a.pass ? 1 : 0)
                << "\n";
      return a.pass ? 0 : 4;
    }
    if (bench->parsed()) return cmd_bench(eo);
  } catch (const HittingSetError& e) {
    std::cerr << "probabilistic failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace spanner
