#include "iq/workbench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace iq {

std::vector<Point> gen_uniform(std::int64_t n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("gen_uniform: bad shape");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    Point p;
    p.id = i;
    p.coords.resize(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) p.coords[static_cast<std::size_t>(j)] = u(rng);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Point> gen_clustered(std::int64_t n, int d, std::uint64_t seed,
                                 int clusters, double spread) {
  if (n < 1 || d < 1 || clusters < 1)
    throw std::invalid_argument("gen_clustered: bad shape");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, spread);

  std::vector<std::vector<double>> centers;
  for (int c = 0; c < clusters; ++c) {
    std::vector<double> cc(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) cc[static_cast<std::size_t>(j)] = u(rng);
    centers.push_back(std::move(cc));
  }

  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    // equal-size blobs, remainder round-robin onto the first clusters
    const auto c = static_cast<std::size_t>(i % clusters);
    Point p;
    p.id = i;
    p.coords.resize(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
      p.coords[static_cast<std::size_t>(j)] = centers[c][static_cast<std::size_t>(j)] + g(rng);
    out.push_back(std::move(p));
  }
  return normalize(std::move(out));
}

std::vector<Point> normalize(std::vector<Point> dataset) {
  if (dataset.empty()) return dataset;
  const int d = dataset.front().dim();
  std::vector<double> lo(static_cast<std::size_t>(d), kInf);
  std::vector<double> hi(static_cast<std::size_t>(d), -kInf);
  for (const auto& p : dataset) {
    for (int j = 0; j < d; ++j) {
      lo[static_cast<std::size_t>(j)] = std::min(lo[static_cast<std::size_t>(j)], p[j]);
      hi[static_cast<std::size_t>(j)] = std::max(hi[static_cast<std::size_t>(j)], p[j]);
    }
  }
  for (auto& p : dataset) {
    for (int j = 0; j < d; ++j) {
      const double span = hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)];
      auto& c = p.coords[static_cast<std::size_t>(j)];
      c = span > 0 ? (c - lo[static_cast<std::size_t>(j)]) / span : 0.0;
    }
  }
  return dataset;
}

namespace {

bool looks_like_id(const std::string& tok) {
  if (tok.empty()) return false;
  std::size_t i = tok[0] == '-' || tok[0] == '+' ? 1 : 0;
  if (i == tok.size()) return false;
  for (; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
  return true;
}

}  // namespace

std::vector<Point> read_points(const std::string& path, PointFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("ingest: cannot open " + path);

  struct Row {
    std::size_t lineno;
    std::vector<std::string> toks;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ss >> tok) toks.push_back(tok);
    if (!toks.empty()) rows.push_back({lineno, std::move(toks)});
  }
  if (rows.empty()) throw std::runtime_error("ingest: no points in " + path);

  if (format == PointFormat::Auto) {
    // "id x ..." needs at least two columns and an integral first token
    const bool id_like =
        rows.front().toks.size() >= 2 &&
        std::all_of(rows.begin(), rows.end(),
                    [](const Row& r) { return looks_like_id(r.toks.front()); });
    format = id_like ? PointFormat::IdXy : PointFormat::Xy;
  }
  const bool with_ids = format == PointFormat::IdXy;

  std::vector<Point> out;
  std::unordered_set<PointId> seen;
  const std::size_t cols = rows.front().toks.size();
  for (const auto& row : rows) {
    if (row.toks.size() != cols)
      throw std::runtime_error("ingest: line " + std::to_string(row.lineno) +
                               ": expected " + std::to_string(cols) + " fields");
    Point p;
    std::size_t start = 0;
    if (with_ids) {
      try {
        p.id = std::stoll(row.toks[0]);
      } catch (...) {
        throw std::runtime_error("ingest: line " + std::to_string(row.lineno) +
                                 ": bad id");
      }
      start = 1;
    } else {
      p.id = static_cast<PointId>(out.size());
    }
    for (std::size_t i = start; i < cols; ++i) {
      try {
        std::size_t used = 0;
        const double v = std::stod(row.toks[i], &used);
        if (used != row.toks[i].size()) throw std::invalid_argument("trailing");
        p.coords.push_back(v);
      } catch (...) {
        throw std::runtime_error("ingest: line " + std::to_string(row.lineno) +
                                 ": bad coordinate '" + row.toks[i] + "'");
      }
    }
    if (with_ids && !seen.insert(p.id).second) continue;  // drop duplicate ids
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Point> ingest_points(const std::string& path, PointFormat format) {
  return normalize(read_points(path, format));
}

void write_points(const std::string& path, const std::vector<Point>& pts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  char buf[64];
  for (const auto& p : pts) {
    out << p.id;
    for (double c : p.coords) {
      std::snprintf(buf, sizeof buf, "%.17g", c);
      out << ' ' << buf;
    }
    out << '\n';
  }
}

double query_cube_side(double extent, int d) {
  if (!(extent > 0) || extent > 1) throw std::invalid_argument("extent out of (0,1]");
  return std::pow(extent, 1.0 / d);
}

QuerySet gen_query_set(const std::vector<Point>& dataset, int m, double extent,
                       std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("gen_query_set: m < 1");
  if (m > static_cast<int>(dataset.size()))
    throw std::invalid_argument("gen_query_set: m exceeds dataset size");
  const int d = dataset.front().dim();
  const double side = query_cube_side(extent, d);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, dataset.size() - 1);

  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Point& anchor = dataset[pick(rng)];
    Rect cube = Rect::whole(d);
    for (int j = 0; j < d; ++j) {
      const double lo = std::clamp(anchor[j] - side / 2, 0.0, std::max(0.0, 1.0 - side));
      cube.lo[static_cast<std::size_t>(j)] = lo;
      cube.hi[static_cast<std::size_t>(j)] = lo + side;
    }
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < dataset.size(); ++i)
      if (cube.contains(dataset[i])) inside.push_back(i);
    if (static_cast<int>(inside.size()) < m) continue;
    // sample m distinct members
    std::vector<Point> members;
    for (int t = 0; t < m; ++t) {
      std::uniform_int_distribution<std::size_t> pi(0, inside.size() - 1);
      const std::size_t at = pi(rng);
      members.push_back(dataset[inside[at]]);
      inside.erase(inside.begin() + static_cast<std::ptrdiff_t>(at));
    }
    return QuerySet(std::move(members));
  }
  throw std::runtime_error("gen_query_set: no cube with enough points after 1000 anchors");
}

void ExperimentConfig::apply_defaults() {
  if (eps_values.empty()) eps_values = {0.06};
  if (k_values.empty()) k_values = {100};
  if (q_counts.empty())
    q_counts = {predicate == PredicateKind::DynamicSkyline ? 4 : 10};
  if (extents.empty()) extents = {0.0004};
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    // trim
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = split(line.substr(0, eq), ',').front();
    const std::string val = line.substr(eq + 1);
    auto vals = split(val, ',');
    auto bad = [&](const std::string& why) {
      return std::runtime_error("config line " + std::to_string(lineno) + ": " + why);
    };
    try {
      if (key == "dataset") {
        const std::string v = vals.front();
        if (v == "uniform")
          cfg.source = Source::Uniform;
        else if (v == "clustered")
          cfg.source = Source::Clustered;
        else {
          cfg.source = Source::File;
          cfg.path = v;
        }
      } else if (key == "n") {
        cfg.n = std::stoll(vals.front());
      } else if (key == "d") {
        cfg.d = std::stoi(vals.front());
      } else if (key == "predicate") {
        const std::string v = vals.front();
        if (v == "ieps")
          cfg.predicate = PredicateKind::EpsRange;
        else if (v == "iknn")
          cfg.predicate = PredicateKind::Knn;
        else if (v == "idsq")
          cfg.predicate = PredicateKind::DynamicSkyline;
        else
          throw bad("unknown predicate " + v);
      } else if (key == "eps") {
        cfg.eps_values.clear();
        for (const auto& v : vals) cfg.eps_values.push_back(std::stod(v));
      } else if (key == "k") {
        cfg.k_values.clear();
        for (const auto& v : vals) cfg.k_values.push_back(std::stoi(v));
      } else if (key == "qcounts") {
        cfg.q_counts.clear();
        for (const auto& v : vals) cfg.q_counts.push_back(std::stoi(v));
      } else if (key == "extent") {
        cfg.extents.clear();
        for (const auto& v : vals) cfg.extents.push_back(std::stod(v));
      } else if (key == "page_size") {
        cfg.page_size = std::stoi(vals.front());
      } else if (key == "queries_per_cell") {
        cfg.queries_per_cell = std::stoi(vals.front());
      } else if (key == "seed") {
        cfg.seed = std::stoull(vals.front());
      } else if (key == "clusters") {
        cfg.clusters = std::stoi(vals.front());
      } else if (key == "spread") {
        cfg.spread = std::stod(vals.front());
      } else if (key == "algorithms") {
        cfg.algorithms.clear();
        for (const auto& v : vals) {
          if (v == "mqf")
            cfg.algorithms.push_back(Algo::Mqf);
          else if (v == "sqf")
            cfg.algorithms.push_back(Algo::Sqf);
          else if (v == "naive")
            cfg.algorithms.push_back(Algo::Naive);
          else
            throw bad("unknown algorithm " + v);
        }
      } else {
        throw bad("unknown key " + key);
      }
    } catch (const std::runtime_error&) {
      throw;
    } catch (...) {
      throw bad("cannot parse value for " + key);
    }
  }
  cfg.apply_defaults();
  return cfg;
}

const char* predicate_name(PredicateKind k) {
  switch (k) {
    case PredicateKind::EpsRange: return "ieps";
    case PredicateKind::Knn: return "iknn";
    case PredicateKind::DynamicSkyline: return "idsq";
  }
  return "?";
}

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::Mqf: return "mqf";
    case Algo::Sqf: return "sqf";
    case Algo::Naive: return "naive";
  }
  return "?";
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& raw) {
  ExperimentConfig cfg = raw;
  cfg.apply_defaults();

  std::vector<Point> dataset;
  switch (cfg.source) {
    case ExperimentConfig::Source::Uniform:
      dataset = gen_uniform(cfg.n, cfg.d, cfg.seed);
      break;
    case ExperimentConfig::Source::Clustered:
      dataset = gen_clustered(cfg.n, cfg.d, cfg.seed, cfg.clusters, cfg.spread);
      break;
    case ExperimentConfig::Source::File:
      dataset = ingest_points(cfg.path);
      cfg.n = static_cast<std::int64_t>(dataset.size());
      cfg.d = dataset.front().dim();
      break;
  }
  const AggRTree tree = AggRTree::bulk_load(dataset, cfg.page_size);

  const bool knob_is_eps = cfg.predicate == PredicateKind::EpsRange;
  const bool knob_is_k = cfg.predicate == PredicateKind::Knn;
  std::vector<double> params;
  if (knob_is_eps)
    params = cfg.eps_values;
  else if (knob_is_k)
    for (int k : cfg.k_values) params.push_back(k);
  else
    params = {0.0};

  std::vector<ResultRow> rows;
  std::uint64_t cell_index = 0;
  for (double param : params) {
    for (int qc : cfg.q_counts) {
      for (double extent : cfg.extents) {
        struct Acc {
          double reads = 0, ms = 0, res = 0;
          int done = 0;
        };
        std::vector<Acc> acc(cfg.algorithms.size());
        for (int qi = 0; qi < cfg.queries_per_cell; ++qi) {
          const std::uint64_t qseed =
              cfg.seed * 1000003ULL + cell_index * 10007ULL + static_cast<std::uint64_t>(qi);
          std::optional<QuerySet> qs;
          try {
            qs.emplace(gen_query_set(dataset, qc, extent, qseed));
          } catch (const std::runtime_error&) {
            continue;  // sampling failed; average over completed queries only
          }

          Predicate pred = knob_is_eps ? Predicate::eps_range(param)
                           : knob_is_k ? Predicate::knn(static_cast<int>(param))
                                       : Predicate::dynamic_skyline();
          InverseQuerySpec spec(pred, std::move(*qs));
          for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
            const QueryReport rep =
                run_algorithm(cfg.algorithms[ai], spec, tree, nullptr, qseed ^ 0x5151);
            acc[ai].reads += static_cast<double>(rep.node_reads);
            acc[ai].ms += rep.wall_ms;
            acc[ai].res += static_cast<double>(rep.results.size());
            ++acc[ai].done;
          }
        }
        for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
          const int nq = std::max(1, acc[ai].done);
          rows.push_back({cfg.predicate, param, cfg.d, cfg.n, qc, extent,
                          cfg.algorithms[ai], acc[ai].reads / nq, acc[ai].ms / nq,
                          acc[ai].res / nq, acc[ai].done});
        }
        ++cell_index;
      }
    }
  }
  return rows;
}

void write_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "predicate,param,d,n,qcount,extent,algorithm,mean_node_reads,"
         "mean_time_ms,mean_results,queries\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%.6g,%d,%lld,%d,%.6g,%s,%.3f,%.4f,%.3f,%d\n",
                  predicate_name(r.predicate), r.param, r.d,
                  static_cast<long long>(r.n), r.q_count, r.extent,
                  algo_name(r.algorithm), r.mean_node_reads, r.mean_time_ms,
                  r.mean_results, r.queries);
    out << buf;
  }
}

}  // namespace iq
