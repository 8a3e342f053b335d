#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iq/baselines.hpp"

namespace iq {

std::vector<Point> gen_uniform(std::int64_t n, int d, std::uint64_t seed);
std::vector<Point> gen_clustered(std::int64_t n, int d, std::uint64_t seed,
                                 int clusters = 5, double spread = 0.02);

/// Min-max normalization onto [0,1] per dimension; a constant dimension
/// maps to zero.
std::vector<Point> normalize(std::vector<Point> dataset);

/// Plain-text point files: either "id x y ..." or "x y ..." per line.
enum class PointFormat { Auto, Xy, IdXy };

/// Parse a point file verbatim (ids deduplicated, no renormalization).
std::vector<Point> read_points(const std::string& path,
                               PointFormat format = PointFormat::Auto);

/// read_points followed by min-max normalization onto the unit cube.
std::vector<Point> ingest_points(const std::string& path,
                                 PointFormat format = PointFormat::Auto);

void write_points(const std::string& path, const std::vector<Point>& pts);

double query_cube_side(double extent, int d);

/// Extent-bounded query set: random dataset anchor, axis-aligned cube of
/// side extent^(1/d) clamped into the unit space around it, m distinct
/// dataset points sampled from the cube. Re-anchors up to 1000 times.
QuerySet gen_query_set(const std::vector<Point>& dataset, int m, double extent,
                       std::uint64_t seed);

struct ExperimentConfig {
  enum class Source { Uniform, Clustered, File };
  Source source = Source::Uniform;
  std::string path;
  std::int64_t n = 100000;
  int d = 3;
  PredicateKind predicate = PredicateKind::Knn;
  std::vector<double> eps_values;  // defaults to {0.06}
  std::vector<int> k_values;       // defaults to {100}
  std::vector<int> q_counts;       // defaults to {10}, dynamic skyline {4}
  std::vector<double> extents;     // defaults to {0.0004}
  int page_size = 1024;
  int queries_per_cell = 1000;
  std::uint64_t seed = 0;
  std::vector<Algo> algorithms = {Algo::Mqf, Algo::Sqf, Algo::Naive};
  int clusters = 5;
  double spread = 0.02;

  void apply_defaults();
  static ExperimentConfig from_file(const std::string& path);
};

struct ResultRow {
  PredicateKind predicate;
  double param;  // eps or k; 0 for the dynamic skyline
  int d;
  std::int64_t n;
  int q_count;
  double extent;
  Algo algorithm;
  double mean_node_reads;
  double mean_time_ms;
  double mean_results;
  int queries;
};

std::vector<ResultRow> run_experiment(const ExperimentConfig& config);
void write_csv(const std::string& path, const std::vector<ResultRow>& rows);

const char* predicate_name(PredicateKind k);
const char* algo_name(Algo a);

}  // namespace iq
