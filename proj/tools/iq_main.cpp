#include <cstdio>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "iq/oracle.hpp"
#include "iq/workbench.hpp"

namespace {

using namespace iq;

std::vector<Point> parse_inline_queries(const std::string& text) {
  std::vector<Point> out;
  std::stringstream per_point(text);
  std::string chunk;
  while (std::getline(per_point, chunk, ';')) {
    if (chunk.empty()) continue;
    Point p;
    std::stringstream per_coord(chunk);
    std::string c;
    while (std::getline(per_coord, c, ',')) {
      try {
        p.coords.push_back(std::stod(c));
      } catch (...) {
        throw std::invalid_argument("bad coordinate '" + c + "' in --q");
      }
    }
    if (p.coords.empty()) throw std::invalid_argument("empty point in --q");
    out.push_back(std::move(p));
  }
  if (out.empty()) throw std::invalid_argument("--q parsed to no points");
  return out;
}

// inline query points adopt the id of a coordinate-identical dataset
// point when one exists; otherwise a fresh negative id
void resolve_query_ids(std::vector<Point>& qs, const std::vector<Point>& dataset) {
  PointId fresh = -1;
  for (auto& q : qs) {
    q.id = fresh--;
    for (const auto& p : dataset) {
      if (same_coords(p, q)) {
        q.id = p.id;
        break;
      }
    }
  }
}

int cmd_gen_data(const std::string& dist, std::int64_t n, int d, std::uint64_t seed,
                 const std::string& out, int clusters, double spread) {
  std::vector<Point> pts;
  if (dist == "uniform")
    pts = gen_uniform(n, d, seed);
  else if (dist == "clustered")
    pts = gen_clustered(n, d, seed, clusters, spread);
  else
    throw std::invalid_argument("--dist must be uniform or clustered");
  write_points(out, pts);
  std::cout << "wrote " << pts.size() << " points to " << out << "\n";
  return 0;
}

int cmd_ingest(const std::string& in, const std::string& out, bool with_ids) {
  auto pts = ingest_points(in, with_ids ? PointFormat::IdXy : PointFormat::Auto);
  write_points(out, pts);
  std::cout << "wrote " << pts.size() << " normalized points to " << out << "\n";
  return 0;
}

int cmd_query(const std::string& data_path, const std::string& type, double eps,
              int k, const std::string& q_inline, const std::string& q_file,
              const std::string& algo_name_arg, const std::string& bi_path,
              int page_size, std::uint64_t seed) {
  const std::vector<Point> dataset = read_points(data_path);
  const AggRTree tree = AggRTree::bulk_load(dataset, page_size);

  std::optional<AggRTree> aux;
  if (!bi_path.empty())
    aux.emplace(AggRTree::bulk_load(read_points(bi_path), page_size));

  std::vector<Point> qpts;
  if (!q_file.empty()) {
    // files win over inline --q
    qpts = read_points(q_file, PointFormat::Xy);
    for (auto& q : qpts) q.id = -1;
  } else if (!q_inline.empty()) {
    qpts = parse_inline_queries(q_inline);
  } else {
    throw std::invalid_argument("query needs --q or --q-file");
  }
  const auto& resolve_against = aux ? aux->points() : dataset;
  resolve_query_ids(qpts, resolve_against);

  Predicate pred;
  if (type == "ieps")
    pred = Predicate::eps_range(eps);
  else if (type == "iknn")
    pred = Predicate::knn(k);
  else if (type == "idsq")
    pred = Predicate::dynamic_skyline();
  else
    throw std::invalid_argument("--type must be ieps, iknn or idsq");

  Algo algo = Algo::Mqf;
  if (algo_name_arg == "sqf")
    algo = Algo::Sqf;
  else if (algo_name_arg == "naive")
    algo = Algo::Naive;
  else if (algo_name_arg != "mqf")
    throw std::invalid_argument("--algo must be mqf, sqf or naive");

  InverseQuerySpec spec(pred, QuerySet(std::move(qpts)), aux.has_value());
  const QueryReport rep = run_algorithm(algo, spec, tree, aux ? &*aux : nullptr, seed);

  std::cout << "results: " << rep.results.size() << "\n";
  std::cout << "ids:";
  for (PointId id : rep.results) std::cout << ' ' << id;
  std::cout << "\n";
  std::cout << "node_reads: " << rep.node_reads << "\n";
  std::printf("time_ms: %.4f\n", rep.wall_ms);
  if (rep.validated_empty) std::cout << "fast-validation: empty\n";
  return 0;
}

int cmd_bench(const std::string& config_path, const std::string& out_csv) {
  const ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
  const auto rows = run_experiment(cfg);
  write_csv(out_csv, rows);
  std::cout << "wrote " << rows.size() << " rows to " << out_csv << "\n";
  return 0;
}

int cmd_verify(std::int64_t n, int d, int trials, std::uint64_t seed) {
  int failures = 0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t) * 7919ULL;
    std::mt19937_64 rng(s);
    const std::vector<Point> data =
        t % 2 == 0 ? gen_uniform(n, d, s) : gen_clustered(n, d, s);
    const AggRTree tree = AggRTree::bulk_load(data, 1024);

    for (PredicateKind kind : {PredicateKind::EpsRange, PredicateKind::Knn,
                               PredicateKind::DynamicSkyline}) {
      const int m = kind == PredicateKind::DynamicSkyline
                        ? 2 + static_cast<int>(rng() % 3)
                        : 2 + static_cast<int>(rng() % 4);
      QuerySet qs = [&] {
        try {
          return gen_query_set(data, m, 0.01, rng());
        } catch (const std::runtime_error&) {
          return gen_query_set(data, m, 1.0, rng());
        }
      }();
      Predicate pred;
      switch (kind) {
        case PredicateKind::EpsRange:
          pred = Predicate::eps_range(0.03 + 0.12 * std::uniform_real_distribution<>(0, 1)(rng));
          break;
        case PredicateKind::Knn:
          pred = Predicate::knn(2 + static_cast<int>(rng() % 20));
          break;
        case PredicateKind::DynamicSkyline:
          pred = Predicate::dynamic_skyline();
          break;
      }
      InverseQuerySpec spec(pred, qs);
      const auto expected = oracle::brute_inverse(data, pred, qs);
      for (Algo algo : {Algo::Mqf, Algo::Sqf, Algo::Naive}) {
        const QueryReport rep = run_algorithm(algo, spec, tree, nullptr, s);
        if (rep.results != expected) {
          ++failures;
          std::cout << "MISMATCH trial=" << t << " seed=" << s << " predicate="
                    << predicate_name(kind) << " algo=" << algo_name(algo)
                    << " |Q|=" << m;
          if (kind == PredicateKind::EpsRange) std::cout << " eps=" << pred.eps;
          if (kind == PredicateKind::Knn) std::cout << " k=" << pred.k;
          std::cout << "\n  got     :";
          for (auto id : rep.results) std::cout << ' ' << id;
          std::cout << "\n  expected:";
          for (auto id : expected) std::cout << ' ' << id;
          std::cout << "\n";
        }
      }
    }
  }
  if (failures == 0) {
    std::cout << "verify: all " << trials << " trials agree with the oracle\n";
    return 0;
  }
  std::cout << "verify: " << failures << " mismatches\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inverse spatial query workbench"};
  app.require_subcommand(1);

  // gen-data
  std::string dist = "uniform", out_path;
  std::int64_t n = 1000;
  int d = 2, clusters = 5;
  double spread = 0.02;
  std::uint64_t seed = 0;
  auto* gen = app.add_subcommand("gen-data", "generate a synthetic point file");
  gen->add_option("--dist", dist, "uniform|clustered");
  gen->add_option("--n", n, "point count")->required();
  gen->add_option("--d", d, "dimensionality")->required();
  gen->add_option("--seed", seed, "rng seed");
  gen->add_option("--out", out_path, "output file")->required();
  gen->add_option("--clusters", clusters, "cluster count (clustered)");
  gen->add_option("--spread", spread, "per-axis std dev (clustered)");

  // ingest
  std::string in_path, out_path2;
  bool with_ids = false;
  auto* ing = app.add_subcommand("ingest", "normalize a point file onto [0,1]^d");
  ing->add_option("--in", in_path, "input file")->required();
  ing->add_option("--out", out_path2, "output file")->required();
  ing->add_flag("--with-ids", with_ids, "input lines are 'id x y ...'");

  // query
  std::string data_path, qtype, q_inline, q_file, algo = "mqf", bi_path;
  double eps = 0.0;
  int k = 0, page_size = 1024;
  std::uint64_t qseed = 0;
  auto* qu = app.add_subcommand("query", "run one inverse query");
  qu->add_option("--data", data_path, "dataset file")->required();
  qu->add_option("--type", qtype, "ieps|iknn|idsq")->required();
  qu->add_option("--eps", eps, "epsilon (ieps)");
  qu->add_option("--k", k, "k (iknn)");
  qu->add_option("--q", q_inline, "inline query points: x,y;x,y;...");
  qu->add_option("--q-file", q_file, "query point file (coordinates only)");
  qu->add_option("--algo", algo, "mqf|sqf|naive");
  qu->add_option("--bichromatic", bi_path, "candidate dataset file");
  qu->add_option("--page-size", page_size, "page size in bytes");
  qu->add_option("--seed", qseed, "sqf filter seed");

  // bench
  std::string cfg_path, csv_path;
  auto* be = app.add_subcommand("bench", "run the experiment matrix");
  be->add_option("--config", cfg_path, "key=value config file")->required();
  be->add_option("--out", csv_path, "output CSV")->required();

  // verify
  std::int64_t vn = 500;
  int vd = 2, vtrials = 20;
  std::uint64_t vseed = 1;
  auto* ve = app.add_subcommand("verify", "randomized oracle-equality check");
  ve->add_option("--n", vn, "points per trial");
  ve->add_option("--d", vd, "dimensionality");
  ve->add_option("--trials", vtrials, "trial count");
  ve->add_option("--seed", vseed, "rng seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_data(dist, n, d, seed, out_path, clusters, spread);
    if (ing->parsed()) return cmd_ingest(in_path, out_path2, with_ids);
    if (qu->parsed())
      return cmd_query(data_path, qtype, eps, k, q_inline, q_file, algo, bi_path,
                       page_size, qseed);
    if (be->parsed()) return cmd_bench(cfg_path, csv_path);
    if (ve->parsed()) return cmd_verify(vn, vd, vtrials, vseed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
