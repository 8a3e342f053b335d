#include "iq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iq {

bool same_coords(const Point& a, const Point& b) {
  return a.coords == b.coords;
}

bool same_object(const Point& a, const Point& b) {
  return a.id == b.id && a.coords == b.coords;
}

Rect::Rect(std::vector<double> l, std::vector<double> h)
    : lo(std::move(l)), hi(std::move(h)) {
  if (lo.size() != hi.size() || lo.empty())
    throw std::invalid_argument("rect: malformed corner vectors");
}

Rect Rect::empty(int dim) {
  Rect r;
  r.lo.assign(static_cast<std::size_t>(dim), kInf);
  r.hi.assign(static_cast<std::size_t>(dim), -kInf);
  return r;
}

Rect Rect::whole(int dim) {
  Rect r;
  r.lo.assign(static_cast<std::size_t>(dim), -kInf);
  r.hi.assign(static_cast<std::size_t>(dim), kInf);
  return r;
}

Rect Rect::around(const Point& p) {
  Rect r;
  r.lo = p.coords;
  r.hi = p.coords;
  return r;
}

Rect Rect::bounding(std::span<const Point> pts) {
  if (pts.empty()) throw std::invalid_argument("rect: no points to bound");
  Rect r = Rect::around(pts.front());
  for (std::size_t i = 1; i < pts.size(); ++i) r.expand(pts[i]);
  return r;
}

Rect Rect::corners(const Point& a, const Point& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("rect: corner dimensionality mismatch");
  Rect r = Rect::around(a);
  r.expand(b);
  return r;
}

bool Rect::is_empty() const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) return true;
  return false;
}

bool Rect::contains(const Point& p) const {
  if (p.dim() != dim()) throw std::invalid_argument("rect/point dim mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (p.coords[i] < lo[i] || p.coords[i] > hi[i]) return false;
  return true;
}

bool Rect::contains(const Rect& r) const {
  if (r.dim() != dim()) throw std::invalid_argument("rect/rect dim mismatch");
  if (r.is_empty()) return true;
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (r.lo[i] < lo[i] || r.hi[i] > hi[i]) return false;
  return true;
}

bool Rect::intersects(const Rect& r) const {
  if (r.dim() != dim()) throw std::invalid_argument("rect/rect dim mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > r.hi[i] || hi[i] < r.lo[i]) return false;
  return true;
}

Rect Rect::intersect(const Rect& r) const {
  if (r.dim() != dim()) throw std::invalid_argument("rect/rect dim mismatch");
  Rect out = *this;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    out.lo[i] = std::max(lo[i], r.lo[i]);
    out.hi[i] = std::min(hi[i], r.hi[i]);
  }
  return out;
}

void Rect::expand(const Point& p) {
  if (p.dim() != dim()) throw std::invalid_argument("rect/point dim mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] = std::min(lo[i], p.coords[i]);
    hi[i] = std::max(hi[i], p.coords[i]);
  }
}

void Rect::expand(const Rect& r) {
  if (r.dim() != dim()) throw std::invalid_argument("rect/rect dim mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] = std::min(lo[i], r.lo[i]);
    hi[i] = std::max(hi[i], r.hi[i]);
  }
}

QuerySet::QuerySet(std::vector<Point> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("query set: empty");
  const int d = members_.front().dim();
  if (d < 1) throw std::invalid_argument("query set: zero-dimensional member");
  for (const auto& m : members_)
    if (m.dim() != d) throw std::invalid_argument("query set: mixed dims");
  box_ = Rect::bounding(members_);
  if (d == 2) hull2d_ = convex_hull_2d(members_);
}

bool QuerySet::matches(const Point& p) const {
  for (const auto& m : members_)
    if (m.id == p.id || same_coords(m, p)) return true;
  return false;
}

double distance(const Point& a, const Point& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("distance: dimensionality mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const double d = a.coords[i] - b.coords[i];
    s += d * d;
  }
  return std::sqrt(s);
}

DistBounds rect_point_bounds(const Rect& r, const Point& p) {
  if (r.dim() != p.dim())
    throw std::invalid_argument("rect_point_bounds: dim mismatch");
  if (r.is_empty())
    throw std::invalid_argument("rect_point_bounds: empty rectangle");
  double smin = 0, smax = 0;
  for (std::size_t i = 0; i < r.lo.size(); ++i) {
    const double c = p.coords[i];
    const double below = r.lo[i] - c, above = c - r.hi[i];
    const double gap = std::max({below, above, 0.0});
    smin += gap * gap;
    const double far_side = std::max(std::abs(c - r.lo[i]), std::abs(c - r.hi[i]));
    smax += far_side * far_side;
  }
  return {std::sqrt(smin), std::sqrt(smax)};
}

double rect_min_dist(const Rect& r, const Point& p) {
  return rect_point_bounds(r, p).min_dist;
}

double rect_max_dist(const Rect& r, const Point& p) {
  return rect_point_bounds(r, p).max_dist;
}

double rect_rect_min_dist(const Rect& a, const Rect& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("rect_rect_min_dist: dim mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    const double gap = std::max({a.lo[i] - b.hi[i], b.lo[i] - a.hi[i], 0.0});
    s += gap * gap;
  }
  return std::sqrt(s);
}

double rect_rect_max_dist(const Rect& a, const Rect& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("rect_rect_max_dist: dim mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    const double far_side =
        std::max(std::abs(a.hi[i] - b.lo[i]), std::abs(b.hi[i] - a.lo[i]));
    s += far_side * far_side;
  }
  return std::sqrt(s);
}

QueryRef farthest_query(const Point& o, const QuerySet& q) {
  int best = 0;
  double bestDist = -1;
  for (int i = 0; i < q.size(); ++i) {
    const Point& m = q.members()[static_cast<std::size_t>(i)];
    const double d = distance(o, m);
    if (d > bestDist ||
        (d == bestDist && m.id < q.members()[static_cast<std::size_t>(best)].id)) {
      best = i;
      bestDist = d;
    }
  }
  return {best, bestDist};
}

QueryRef farthest_query(const Rect& o, const QuerySet& q) {
  int best = 0;
  double bestDist = -1;
  for (int i = 0; i < q.size(); ++i) {
    const Point& m = q.members()[static_cast<std::size_t>(i)];
    const double d = rect_min_dist(o, m);
    if (d > bestDist ||
        (d == bestDist && m.id < q.members()[static_cast<std::size_t>(best)].id)) {
      best = i;
      bestDist = d;
    }
  }
  return {best, bestDist};
}

bool entry_dominance(const Rect& e, const Rect& ep, const QuerySet& q) {
  const double bound = farthest_query(e, q).bound;
  return rect_rect_max_dist(e, ep) < bound;
}

Rect pruning_region(const Point& q, const Point& o) {
  if (q.dim() != o.dim())
    throw std::invalid_argument("pruning_region: dim mismatch");
  const int d = q.dim();
  Rect r = Rect::whole(d);
  for (int i = 0; i < d; ++i) {
    const double mid = (q[i] + o[i]) / 2.0;
    if (q[i] < o[i])
      r.lo[static_cast<std::size_t>(i)] = mid;
    else if (q[i] > o[i])
      r.hi[static_cast<std::size_t>(i)] = mid;
    // q[i] == o[i]: full line
  }
  return r;
}

bool dynamic_dominates(const Point& a, const Point& b, const Point& c) {
  if (a.dim() != b.dim() || a.dim() != c.dim())
    throw std::invalid_argument("dynamic_dominates: dim mismatch");
  bool strict = false;
  for (int i = 0; i < a.dim(); ++i) {
    const double da = std::abs(a[i] - c[i]);
    const double db = std::abs(b[i] - c[i]);
    if (da > db) return false;
    if (da < db) strict = true;
  }
  return strict;
}

bool region_prunes_point(const Rect& region, const Point& p) {
  if (!region.contains(p)) return false;
  for (std::size_t i = 0; i < region.lo.size(); ++i) {
    if (region.lo[i] != -kInf && p.coords[i] > region.lo[i]) return true;
    if (region.hi[i] != kInf && p.coords[i] < region.hi[i]) return true;
  }
  return false;
}

bool region_prunes_rect(const Rect& region, const Rect& r) {
  if (r.is_empty()) return false;
  if (!region.contains(r)) return false;
  for (std::size_t i = 0; i < region.lo.size(); ++i) {
    if (region.lo[i] != -kInf && r.lo[i] > region.lo[i]) return true;
    if (region.hi[i] != kInf && r.hi[i] < region.hi[i]) return true;
  }
  return false;
}

}  // namespace iq
