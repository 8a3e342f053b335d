#include "iq/idsq.hpp"

#include <algorithm>
#include <queue>

namespace iq {

bool idsq_fast_validate(const QuerySet& q) {
  const int d = q.dim();
  if (d > 20) return true;  // mask enumeration guard; never hit in practice
  const std::uint32_t parts = 1u << d;
  for (const auto& center : q.members()) {
    std::uint32_t occupied = 0;
    std::vector<bool> seen(parts, false);
    for (const auto& other : q.members()) {
      if (&other == &center) continue;
      // boundary coordinates count toward both sides of that dimension
      std::uint32_t fixed = 0, free_dims = 0;
      for (int i = 0; i < d; ++i) {
        if (other[i] > center[i])
          fixed |= 1u << i;
        else if (other[i] == center[i])
          free_dims |= 1u << i;
      }
      // enumerate all masks compatible with the free dimensions
      std::uint32_t sub = free_dims;
      while (true) {
        const std::uint32_t mask = fixed | sub;
        if (!seen[mask]) {
          seen[mask] = true;
          ++occupied;
        }
        if (sub == 0) break;
        sub = (sub - 1) & free_dims;
      }
      if (occupied == parts) break;
    }
    if (occupied == parts) return false;
  }
  return true;
}

PruneSpace::PruneSpace(const QuerySet& q) {
  const auto& m = q.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i != j) regions_.push_back(pruning_region(m[i], m[j]));
}

void PruneSpace::add_object(const Point& o, const QuerySet& q) {
  for (const auto& m : q.members()) regions_.push_back(pruning_region(m, o));
}

bool PruneSpace::covers(const Point& p) const {
  for (const auto& r : regions_)
    if (region_prunes_point(r, p)) return true;
  return false;
}

bool PruneSpace::covers(const Rect& x) const {
  for (const auto& r : regions_)
    if (region_prunes_rect(r, x)) return true;
  return false;
}

std::vector<Point> dynamic_skyline(std::span<const Point> points, const Point& c) {
  std::vector<Point> out;
  for (const auto& p : points) {
    if (same_object(p, c)) continue;
    bool dominated = false;
    for (const auto& other : points) {
      if (same_object(other, c)) continue;
      if (dynamic_dominates(other, p, c)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(p);
  }
  return out;
}

bool idsq_refine(const AggRTree& t, const Point& c, const QuerySet& q,
                 AccessMeter& meter) {
  const int d = c.dim();
  for (const auto& m : q.members()) {
    Point reflected;
    reflected.coords.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      reflected.coords[static_cast<std::size_t>(i)] = 2 * c[i] - m[i];
    const Rect window = Rect::corners(m, reflected);
    for (const auto& p : t.window_query(window, meter)) {
      if (same_object(p, c)) continue;
      if (dynamic_dominates(p, m, c)) return false;
    }
  }
  return true;
}

QBoxContext::QBoxContext(const QuerySet& q) : box_(q.box()) {
  if (q.dim() != 2) throw std::invalid_argument("QBoxContext is 2D only");
  cx_ = (box_.lo[0] + box_.hi[0]) / 2;
  cy_ = (box_.lo[1] + box_.hi[1]) / 2;
  min_above_[0] = min_above_[1] = kInf;
  max_below_[0] = max_below_[1] = -kInf;
  for (const auto& m : q.members()) {
    const bool at_xlo = m[0] == box_.lo[0], at_xhi = m[0] == box_.hi[0];
    const bool at_ylo = m[1] == box_.lo[1], at_yhi = m[1] == box_.hi[1];
    const bool x_edge = at_xlo || at_xhi;
    const bool y_edge = at_ylo || at_yhi;
    if (x_edge && y_edge) {
      corner_[(at_xhi ? 1 : 0) + (at_yhi ? 2 : 0)] = true;
    } else if (x_edge) {
      edge_cut_[at_xhi ? 1 : 0] = true;
    } else if (y_edge) {
      edge_cut_[at_yhi ? 3 : 2] = true;
    }
  }
}

void QBoxContext::observe(const Point& o) {
  // Condition IV sources: outside the box in exactly one dimension
  for (int j = 0; j < 2; ++j) {
    const int i = 1 - j;
    const bool i_inside = o[i] >= box_.lo[static_cast<std::size_t>(i)] &&
                          o[i] <= box_.hi[static_cast<std::size_t>(i)];
    if (!i_inside) continue;
    if (o[j] > box_.hi[static_cast<std::size_t>(j)])
      min_above_[j] = std::min(min_above_[j], o[j]);
    else if (o[j] < box_.lo[static_cast<std::size_t>(j)])
      max_below_[j] = std::max(max_below_[j], o[j]);
  }
}

bool QBoxContext::prunes(const Point& p) const {
  return prunes(Rect::around(p));
}

bool QBoxContext::prunes(const Rect& r) const {
  if (r.is_empty()) return false;
  const double xlo = box_.lo[0], xhi = box_.hi[0];
  const double ylo = box_.lo[1], yhi = box_.hi[1];

  // Condition II: a non-corner query on a side prunes everything strictly
  // beyond that side.
  if (edge_cut_[0] && r.hi[0] < xlo) return true;
  if (edge_cut_[1] && r.lo[0] > xhi) return true;
  if (edge_cut_[2] && r.hi[1] < ylo) return true;
  if (edge_cut_[3] && r.lo[1] > yhi) return true;

  // Condition I: a corner query prunes its quadrant outside the box.
  // All comparisons strict: the paired edge queries are only known up to
  // their edge, and the strict sides are exactly where dominance is
  // provable for every possible placement. A point box has no paired
  // queries at all, so the rule stays off there.
  if (xhi > xlo || yhi > ylo) {
    for (int ci = 0; ci < 4; ++ci) {
      if (!corner_[ci]) continue;
      const bool hix = (ci & 1) != 0;  // corner at xhi
      const bool hiy = (ci & 2) != 0;  // corner at yhi
      const bool beyond_box_y = hiy ? r.lo[1] > yhi : r.hi[1] < ylo;
      const bool beyond_cx = hix ? r.lo[0] > cx_ : r.hi[0] < cx_;
      if (beyond_box_y && beyond_cx) return true;
      const bool beyond_box_x = hix ? r.lo[0] > xhi : r.hi[0] < xlo;
      const bool beyond_cy = hiy ? r.lo[1] > cy_ : r.hi[1] < cy_;
      if (beyond_box_x && beyond_cy) return true;
    }
  }

  // Condition IV: bands from observed outside objects
  for (int j = 0; j < 2; ++j) {
    if (min_above_[j] != kInf) {
      const double cut = (min_above_[j] + box_.hi[static_cast<std::size_t>(j)]) / 2;
      if (r.lo[static_cast<std::size_t>(j)] > cut) return true;
    }
    if (max_below_[j] != -kInf) {
      const double cut = (max_below_[j] + box_.lo[static_cast<std::size_t>(j)]) / 2;
      if (r.hi[static_cast<std::size_t>(j)] < cut) return true;
    }
  }
  return false;
}

std::optional<Point> region_unique_candidate(std::span<const Point> region_points,
                                             const Point& q1, const Point& q2) {
  if (region_points.empty()) return std::nullopt;
  const Rect box = Rect::corners(q1, q2);
  const double cx = (box.lo[0] + box.hi[0]) / 2;
  const double cy = (box.lo[1] + box.hi[1]) / 2;
  const bool ne = region_points.front()[0] >= cx && region_points.front()[1] >= cy;

  double bx = region_points.front()[0], by = region_points.front()[1];
  for (const auto& p : region_points) {
    bx = ne ? std::max(bx, p[0]) : std::min(bx, p[0]);
    by = ne ? std::max(by, p[1]) : std::min(by, p[1]);
  }
  const Point* unique = nullptr;
  for (const auto& p : region_points) {
    if (p[0] == bx && p[1] == by) {
      if (unique) return std::nullopt;  // coordinate ties: mutual pruning
      unique = &p;
    }
  }
  return unique ? std::optional<Point>(*unique) : std::nullopt;
}

namespace {

struct HeapRef {
  double key;
  std::int32_t node;
  std::int32_t slot;
  bool operator>(const HeapRef& o) const {
    if (key != o.key) return key > o.key;
    if (node != o.node) return node > o.node;
    return slot > o.slot;
  }
};

double min_max_dist(const Rect& r, const QuerySet& q) {
  double best = kInf;
  for (const auto& m : q.members()) best = std::min(best, rect_max_dist(r, m));
  return best;
}

}  // namespace

QueryOutcome idsq_query(const AggRTree& t, const QuerySet& q, AccessMeter& meter,
                        FilterTrace* trace, std::optional<bool> use_2d_accel) {
  QueryOutcome out;
  if (!idsq_fast_validate(q)) return out;

  const bool accel = use_2d_accel.value_or(q.dim() == 2) && q.dim() == 2;
  PruneSpace space(q);
  std::optional<QBoxContext> ctx;
  if (accel) ctx.emplace(q);

  std::priority_queue<HeapRef, std::vector<HeapRef>, std::greater<>> heap;
  auto enqueue_node = [&](std::int32_t nid) {
    meter.visit(nid);
    const Node& n = t.node(nid);
    for (std::int32_t s = 0; s < static_cast<std::int32_t>(n.entries.size()); ++s)
      heap.push({min_max_dist(n.entries[static_cast<std::size_t>(s)].mbr, q), nid, s});
  };
  enqueue_node(t.root());

  std::vector<Point> candidates;
  while (!heap.empty()) {
    const HeapRef top = heap.top();
    heap.pop();
    const Entry& e = t.node(top.node).entries[static_cast<std::size_t>(top.slot)];

    const bool pruned = (ctx && ctx->prunes(e.mbr)) || space.covers(e.mbr);
    if (pruned) {
      if (trace) trace->pruned.push_back(e);
    } else if (e.is_point()) {
      const Point& p = t.point(e.point);
      if (!q.matches(p)) candidates.push_back(p);
    } else {
      enqueue_node(e.child);
      continue;
    }
    // every accessed non-query object extends the pruning space, whether
    // or not it survived its own test
    if (e.is_point()) {
      const Point& p = t.point(e.point);
      if (!q.matches(p)) {
        space.add_object(p, q);
        if (ctx) ctx->observe(p);
      }
    }
  }

  out.candidate_count = static_cast<std::int64_t>(candidates.size());
  for (const auto& c : candidates) {
    ++out.refinement_checks;
    if (idsq_refine(t, c, q, meter)) out.results.push_back(c.id);
  }
  std::sort(out.results.begin(), out.results.end());
  return out;
}

QueryOutcome idsq_query_bi(const AggRTree& data, const AggRTree& cands,
                           const QuerySet& q, AccessMeter& meter) {
  QueryOutcome out;
  if (!idsq_fast_validate(q)) return out;

  // candidate-side objects may not prune each other, so only the query
  // pair regions apply during the filter; the data tree arbitrates in
  // refinement
  PruneSpace space(q);

  std::vector<Point> candidates;
  auto rec = [&](auto&& self, std::int32_t nid) -> void {
    meter.visit(nid);
    for (const auto& e : cands.node(nid).entries) {
      if (space.covers(e.mbr)) continue;
      if (e.is_point()) {
        const Point& p = cands.point(e.point);
        if (!q.matches(p)) candidates.push_back(p);
      } else {
        self(self, e.child);
      }
    }
  };
  rec(rec, cands.root());

  out.candidate_count = static_cast<std::int64_t>(candidates.size());
  for (const auto& c : candidates) {
    ++out.refinement_checks;
    if (idsq_refine(data, c, q, meter)) out.results.push_back(c.id);
  }
  std::sort(out.results.begin(), out.results.end());
  return out;
}

}  // namespace iq
