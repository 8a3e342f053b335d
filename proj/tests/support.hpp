#pragma once

#include <random>
#include <vector>

#include "iq/workbench.hpp"

namespace iqtest {

using namespace iq;

inline Point pt(std::vector<double> c, PointId id = -1) {
  return Point(std::move(c), id);
}

inline std::vector<Point> pts(std::vector<std::vector<double>> rows) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.emplace_back(std::move(rows[i]), static_cast<PointId>(i));
  return out;
}

inline QuerySet qset(std::vector<std::vector<double>> rows) {
  return QuerySet(pts(std::move(rows)));
}

/// 1D instances are modeled as 2D points on the x axis, matching how the
/// CLI demo dataset is laid out.
inline std::vector<Point> line_points(std::vector<double> xs) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    out.push_back(Point({xs[i], 0.0}, static_cast<PointId>(i)));
  return out;
}

inline Point rand_point(std::mt19937_64& rng, int d, double lo = 0.0, double hi = 1.0,
                        PointId id = -1) {
  std::uniform_real_distribution<double> u(lo, hi);
  Point p;
  p.id = id;
  p.coords.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) p.coords[static_cast<std::size_t>(i)] = u(rng);
  return p;
}

/// Query set sampled from the dataset, falling back to the whole space
/// when the requested extent holds too few points.
inline QuerySet sample_queries(const std::vector<Point>& data, int m, double extent,
                               std::uint64_t seed) {
  try {
    return gen_query_set(data, m, extent, seed);
  } catch (const std::runtime_error&) {
    return gen_query_set(data, m, 1.0, seed);
  }
}

}  // namespace iqtest
