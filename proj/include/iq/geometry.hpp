#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace iq {

using PointId = std::int64_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Residual tolerance of the convex-combination feasibility test.
/// Coordinates live in the normalized unit cube, so an absolute
/// tolerance is adequate.
inline constexpr double kHullTol = 1e-9;

struct Point {
  std::vector<double> coords;
  PointId id = -1;

  Point() = default;
  Point(std::vector<double> c, PointId pid) : coords(std::move(c)), id(pid) {}

  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
};

bool same_coords(const Point& a, const Point& b);

/// Identity rule shared by the query engines and the brute-force oracle:
/// two records are the same object iff id and coordinates both match.
bool same_object(const Point& a, const Point& b);

/// Axis-aligned box with closed per-dimension intervals. Sides may be
/// unbounded (+-inf), which is how pruning regions encode half-spaces.
/// The empty box is lo > hi in every dimension.
struct Rect {
  std::vector<double> lo, hi;

  Rect() = default;
  Rect(std::vector<double> l, std::vector<double> h);

  static Rect empty(int dim);
  static Rect whole(int dim);
  static Rect around(const Point& p);
  static Rect bounding(std::span<const Point> pts);
  static Rect corners(const Point& a, const Point& b);

  int dim() const { return static_cast<int>(lo.size()); }
  bool is_empty() const;
  bool contains(const Point& p) const;
  bool contains(const Rect& r) const;
  bool intersects(const Rect& r) const;
  Rect intersect(const Rect& r) const;
  void expand(const Point& p);
  void expand(const Rect& r);
};

/// Query objects plus the cached artifacts every filter wants: the
/// minimal bounding box Q-box and, in 2D, the convex hull vertices.
class QuerySet {
 public:
  explicit QuerySet(std::vector<Point> members);

  const std::vector<Point>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  int dim() const { return members_.front().dim(); }
  const Rect& box() const { return box_; }
  const std::vector<Point>& hull2d() const { return hull2d_; }

  /// True when p is one of the query objects (by id or by coordinates).
  bool matches(const Point& p) const;

 private:
  std::vector<Point> members_;
  Rect box_;
  std::vector<Point> hull2d_;
};

double distance(const Point& a, const Point& b);

struct DistBounds {
  double min_dist;
  double max_dist;
};

DistBounds rect_point_bounds(const Rect& r, const Point& p);
double rect_min_dist(const Rect& r, const Point& p);
double rect_max_dist(const Rect& r, const Point& p);
double rect_rect_min_dist(const Rect& a, const Rect& b);
double rect_rect_max_dist(const Rect& a, const Rect& b);

/// Farthest query object: for a point the exact argmax of d(o,q); for a
/// box the q maximizing minDist(box,q), a lower bound on the farthest
/// query distance of every contained point. Ties go to the lowest id.
struct QueryRef {
  int index;     // position in Q.members()
  double bound;  // the achieved distance value
};
QueryRef farthest_query(const Point& o, const QuerySet& q);
QueryRef farthest_query(const Rect& o, const QuerySet& q);

/// Conservative sufficient test that every point of e' is strictly
/// closer to every point of e than that point's farthest query object:
/// maxDist(e,e') < max_q minDist(e,q). False negatives allowed.
bool entry_dominance(const Rect& e, const Rect& ep, const QuerySet& q);

std::vector<Point> convex_hull_2d(std::span<const Point> pts);

/// Closed convex hull membership. 2D goes through the monotone-chain
/// polygon; other dimensionalities through a phase-1 simplex feasibility
/// test for "p is a convex combination of Q".
bool point_in_hull(const Point& p, const QuerySet& q);
bool rect_in_hull(const Rect& r, const QuerySet& q);
bool convex_comb_feasible(const Point& p, std::span<const Point> hullPts);

/// Viewpoints c for which o coordinate-wise dominates q: per dimension
/// [ (q+o)/2, +inf ) when q < o, ( -inf, (q+o)/2 ] when q > o, and the
/// full line when q == o (there the dominance inequality always holds).
Rect pruning_region(const Point& q, const Point& o);

/// a dominates b with respect to viewpoint c.
bool dynamic_dominates(const Point& a, const Point& b, const Point& c);

/// Containment tests used when discarding via a pruning region. Closed
/// containment alone admits the all-boundary point, for which dominance
/// has no strict dimension; these require one strictly interior finite
/// side so that every covered point is genuinely dominated.
bool region_prunes_point(const Rect& region, const Point& p);
bool region_prunes_rect(const Rect& region, const Rect& r);

}  // namespace iq
