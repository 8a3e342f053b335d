#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "iq/geometry.hpp"

namespace iq {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double point_segment_dist(const Point& p, const Point& a, const Point& b) {
  double abx = b[0] - a[0], aby = b[1] - a[1];
  double apx = p[0] - a[0], apy = p[1] - a[1];
  const double len2 = abx * abx + aby * aby;
  double t = len2 > 0 ? (apx * abx + apy * aby) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = apx - t * abx, dy = apy - t * aby;
  return std::sqrt(dx * dx + dy * dy);
}

bool point_in_convex_polygon(const Point& p, const std::vector<Point>& hull) {
  if (hull.size() == 1) return distance(p, hull[0]) <= kHullTol;
  if (hull.size() == 2) return point_segment_dist(p, hull[0], hull[1]) <= kHullTol;
  const std::size_t n = hull.size();
  for (std::size_t i = 0; i < n; ++i) {
    // CCW order: inside means never strictly to the right of an edge
    if (cross(hull[i], hull[(i + 1) % n], p) < -kHullTol) return false;
  }
  return true;
}

}  // namespace

std::vector<Point> convex_hull_2d(std::span<const Point> pts) {
  if (pts.empty()) return {};
  std::vector<Point> p(pts.begin(), pts.end());
  std::sort(p.begin(), p.end(), [](const Point& a, const Point& b) {
    if (a[0] != b[0]) return a[0] < b[0];
    if (a[1] != b[1]) return a[1] < b[1];
    return a.id < b.id;
  });
  p.erase(std::unique(p.begin(), p.end(),
                      [](const Point& a, const Point& b) { return same_coords(a, b); }),
          p.end());
  if (p.size() <= 2) return p;

  std::vector<Point> hull(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {  // lower chain
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
    hull[k++] = p[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = p.size() - 1; i-- > 0;) {  // upper chain
    while (k >= lower && cross(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
    hull[k++] = p[i];
  }
  hull.resize(k - 1);  // last point repeats the first
  return hull;
}

// Phase-1 simplex for: exists lambda >= 0 with V*lambda = p, sum lambda = 1.
// Small dense tableau, Bland's rule, so it terminates on degenerate input
// (collinear or coincident hull points included).
bool convex_comb_feasible(const Point& p, std::span<const Point> hullPts) {
  if (hullPts.empty()) return false;
  const int d = p.dim();
  const int m = static_cast<int>(hullPts.size());
  const int rows = d + 1;
  const int cols = m + rows + 1;  // lambdas, artificials, rhs
  constexpr double pivTol = 1e-11;

  std::vector<std::vector<double>> t(static_cast<std::size_t>(rows),
                                     std::vector<double>(static_cast<std::size_t>(cols), 0.0));
  for (int r = 0; r < rows; ++r) {
    double rhs = r < d ? p[r] : 1.0;
    for (int j = 0; j < m; ++j)
      t[r][static_cast<std::size_t>(j)] = r < d ? hullPts[static_cast<std::size_t>(j)][r] : 1.0;
    if (rhs < 0) {
      for (int j = 0; j < m; ++j) t[r][static_cast<std::size_t>(j)] = -t[r][static_cast<std::size_t>(j)];
      rhs = -rhs;
    }
    t[r][static_cast<std::size_t>(m + r)] = 1.0;
    t[r].back() = rhs;
  }

  // objective row: minimize sum of artificials, expressed in reduced costs
  std::vector<double> obj(static_cast<std::size_t>(cols), 0.0);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) obj[static_cast<std::size_t>(c)] -= t[r][static_cast<std::size_t>(c)];
  for (int r = 0; r < rows; ++r) obj[static_cast<std::size_t>(m + r)] = 0.0;

  std::vector<int> basis(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) basis[static_cast<std::size_t>(r)] = m + r;

  for (int iter = 0; iter < 10000; ++iter) {
    int enter = -1;
    for (int c = 0; c < cols - 1; ++c) {
      if (obj[static_cast<std::size_t>(c)] < -pivTol) {
        enter = c;  // Bland: first eligible column
        break;
      }
    }
    if (enter < 0) break;

    int leave = -1;
    double bestRatio = 0;
    for (int r = 0; r < rows; ++r) {
      const double a = t[r][static_cast<std::size_t>(enter)];
      if (a > pivTol) {
        const double ratio = t[r].back() / a;
        if (leave < 0 || ratio < bestRatio - pivTol ||
            (ratio < bestRatio + pivTol &&
             basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
          leave = r;
          bestRatio = ratio;
        }
      }
    }
    if (leave < 0) break;  // unbounded cannot happen here; bail out safely

    const double piv = t[static_cast<std::size_t>(leave)][static_cast<std::size_t>(enter)];
    for (int c = 0; c < cols; ++c) t[static_cast<std::size_t>(leave)][static_cast<std::size_t>(c)] /= piv;
    for (int r = 0; r < rows; ++r) {
      if (r == leave) continue;
      const double f = t[static_cast<std::size_t>(r)][static_cast<std::size_t>(enter)];
      if (f == 0) continue;
      for (int c = 0; c < cols; ++c)
        t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            f * t[static_cast<std::size_t>(leave)][static_cast<std::size_t>(c)];
    }
    const double fo = obj[static_cast<std::size_t>(enter)];
    if (fo != 0)
      for (int c = 0; c < cols; ++c)
        obj[static_cast<std::size_t>(c)] -= fo * t[static_cast<std::size_t>(leave)][static_cast<std::size_t>(c)];
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  double artificialSum = 0;
  for (int r = 0; r < rows; ++r)
    if (basis[static_cast<std::size_t>(r)] >= m) artificialSum += t[static_cast<std::size_t>(r)].back();
  return artificialSum <= kHullTol;
}

bool point_in_hull(const Point& p, const QuerySet& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("point_in_hull: dim mismatch");
  // quick reject against the box that bounds the hull
  for (std::size_t i = 0; i < q.box().lo.size(); ++i) {
    if (p.coords[i] < q.box().lo[i] - kHullTol ||
        p.coords[i] > q.box().hi[i] + kHullTol)
      return false;
  }
  if (p.dim() == 2) return point_in_convex_polygon(p, q.hull2d());
  return convex_comb_feasible(p, q.members());
}

bool rect_in_hull(const Rect& r, const QuerySet& q) {
  if (r.dim() != q.dim()) throw std::invalid_argument("rect_in_hull: dim mismatch");
  if (r.is_empty()) return true;
  const int d = r.dim();
  for (std::size_t i = 0; i < r.lo.size(); ++i)
    if (std::isinf(r.lo[i]) || std::isinf(r.hi[i])) return false;
  const std::uint32_t corners = 1u << d;
  Point c;
  c.coords.resize(static_cast<std::size_t>(d));
  for (std::uint32_t mask = 0; mask < corners; ++mask) {
    for (int i = 0; i < d; ++i)
      c.coords[static_cast<std::size_t>(i)] =
          (mask >> i) & 1u ? r.hi[static_cast<std::size_t>(i)] : r.lo[static_cast<std::size_t>(i)];
    if (!point_in_hull(c, q)) return false;
  }
  return true;
}

}  // namespace iq
