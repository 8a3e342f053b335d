#include "iq/rtree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace iq {

namespace {

// Recursive sort-tile ordering: arranges index positions so that
// consecutive runs of `fanout` elements form spatially compact tiles.
template <typename GetCoord, typename GetId>
void str_order(std::vector<std::int32_t>& idx, std::size_t begin, std::size_t end,
               int dim, int dims_total, int fanout, const GetCoord& coord,
               const GetId& id) {
  const std::size_t n = end - begin;
  if (n == 0) return;
  auto cmp = [&](std::int32_t a, std::int32_t b) {
    const double ca = coord(a, dim), cb = coord(b, dim);
    if (ca != cb) return ca < cb;
    return id(a) < id(b);
  };
  std::sort(idx.begin() + static_cast<std::ptrdiff_t>(begin),
            idx.begin() + static_cast<std::ptrdiff_t>(end), cmp);
  if (dim == dims_total - 1 || n <= static_cast<std::size_t>(fanout)) return;

  const std::size_t pages = (n + static_cast<std::size_t>(fanout) - 1) / static_cast<std::size_t>(fanout);
  const int remaining = dims_total - dim;
  const auto slabs = static_cast<std::size_t>(
      std::ceil(std::pow(static_cast<double>(pages), 1.0 / remaining)));
  const std::size_t pages_per_slab = (pages + slabs - 1) / slabs;
  const std::size_t cap = pages_per_slab * static_cast<std::size_t>(fanout);
  for (std::size_t s = begin; s < end; s += cap) {
    str_order(idx, s, std::min(s + cap, end), dim + 1, dims_total, fanout, coord, id);
  }
}

// Sequential chunking into groups of `fanout`; the final two groups are
// rebalanced so every group keeps at least ceil(fanout/2) members.
std::vector<std::size_t> chunk_sizes(std::size_t n, int fanout) {
  std::vector<std::size_t> sizes;
  const auto f = static_cast<std::size_t>(fanout);
  for (std::size_t done = 0; done < n;) {
    const std::size_t s = std::min(f, n - done);
    sizes.push_back(s);
    done += s;
  }
  const std::size_t min_fill = (f + 1) / 2;
  if (sizes.size() >= 2 && sizes.back() < min_fill) {
    const std::size_t pooled = sizes.back() + sizes[sizes.size() - 2];
    sizes[sizes.size() - 2] = (pooled + 1) / 2;
    sizes.back() = pooled / 2;
  }
  return sizes;
}

}  // namespace

int AggRTree::fanout_for(int page_size_bytes, int dim) {
  // entry byte model: 2*d coordinates + child reference + count, 8 bytes each
  const int entry_bytes = 16 * dim + 16;
  return std::max(4, page_size_bytes / entry_bytes);
}

AggRTree AggRTree::bulk_load(std::vector<Point> points, int page_size_bytes) {
  if (points.empty()) throw std::invalid_argument("bulk_load: empty input");
  const int d = points.front().dim();
  if (d < 1) throw std::invalid_argument("bulk_load: zero-dimensional points");
  for (const auto& p : points)
    if (p.dim() != d) throw std::invalid_argument("bulk_load: mixed dimensionality");

  AggRTree t;
  t.dim_ = d;
  t.fanout_ = fanout_for(page_size_bytes, d);
  t.points_ = std::move(points);

  // leaf level
  std::vector<std::int32_t> order(t.points_.size());
  std::iota(order.begin(), order.end(), 0);
  str_order(
      order, 0, order.size(), 0, d, t.fanout_,
      [&](std::int32_t i, int dm) { return t.points_[static_cast<std::size_t>(i)][dm]; },
      [&](std::int32_t i) { return t.points_[static_cast<std::size_t>(i)].id; });

  struct Level {
    std::vector<std::int32_t> nodes;  // node indices of this level
  };
  std::vector<std::int32_t> current;
  {
    std::size_t pos = 0;
    for (std::size_t sz : chunk_sizes(order.size(), t.fanout_)) {
      Node n;
      n.leaf = true;
      for (std::size_t k = 0; k < sz; ++k) {
        const std::int32_t pi = order[pos + k];
        Entry e;
        e.mbr = Rect::around(t.points_[static_cast<std::size_t>(pi)]);
        e.count = 1;
        e.point = pi;
        n.entries.push_back(std::move(e));
      }
      pos += sz;
      current.push_back(static_cast<std::int32_t>(t.nodes_.size()));
      t.nodes_.push_back(std::move(n));
    }
  }

  auto node_mbr = [&](std::int32_t nid) {
    Rect r = t.nodes_[static_cast<std::size_t>(nid)].entries.front().mbr;
    for (const auto& e : t.nodes_[static_cast<std::size_t>(nid)].entries) r.expand(e.mbr);
    return r;
  };
  auto node_count = [&](std::int32_t nid) {
    std::int64_t c = 0;
    for (const auto& e : t.nodes_[static_cast<std::size_t>(nid)].entries) c += e.count;
    return c;
  };

  // upper levels: same tiling over node MBR centers
  while (current.size() > 1) {
    std::vector<Rect> mbrs;
    mbrs.reserve(current.size());
    for (std::int32_t nid : current) mbrs.push_back(node_mbr(nid));

    std::vector<std::int32_t> order_up(current.size());
    std::iota(order_up.begin(), order_up.end(), 0);
    str_order(
        order_up, 0, order_up.size(), 0, d, t.fanout_,
        [&](std::int32_t i, int dm) {
          const Rect& r = mbrs[static_cast<std::size_t>(i)];
          return (r.lo[static_cast<std::size_t>(dm)] + r.hi[static_cast<std::size_t>(dm)]) / 2.0;
        },
        [&](std::int32_t i) { return static_cast<PointId>(current[static_cast<std::size_t>(i)]); });

    std::vector<std::int32_t> next;
    std::size_t pos = 0;
    for (std::size_t sz : chunk_sizes(order_up.size(), t.fanout_)) {
      Node n;
      n.leaf = false;
      for (std::size_t k = 0; k < sz; ++k) {
        const std::int32_t child = current[static_cast<std::size_t>(order_up[pos + k])];
        Entry e;
        e.mbr = mbrs[static_cast<std::size_t>(order_up[pos + k])];
        e.count = node_count(child);
        e.child = child;
        n.entries.push_back(std::move(e));
      }
      pos += sz;
      next.push_back(static_cast<std::int32_t>(t.nodes_.size()));
      t.nodes_.push_back(std::move(n));
    }
    current = std::move(next);
  }
  t.root_ = current.front();

  // renumber nodes in depth-first creation order; node ids are the
  // deterministic tie-break everywhere
  std::vector<Node> renumbered;
  renumbered.reserve(t.nodes_.size());
  std::vector<std::int32_t> remap(t.nodes_.size(), -1);
  std::vector<std::int32_t> stack{t.root_};
  std::vector<std::int32_t> dfs;
  while (!stack.empty()) {
    const std::int32_t nid = stack.back();
    stack.pop_back();
    dfs.push_back(nid);
    const Node& n = t.nodes_[static_cast<std::size_t>(nid)];
    if (!n.leaf)
      for (auto it = n.entries.rbegin(); it != n.entries.rend(); ++it)
        stack.push_back(it->child);
  }
  for (std::size_t i = 0; i < dfs.size(); ++i) remap[static_cast<std::size_t>(dfs[i])] = static_cast<std::int32_t>(i);
  for (std::int32_t nid : dfs) {
    Node n = std::move(t.nodes_[static_cast<std::size_t>(nid)]);
    n.id = remap[static_cast<std::size_t>(nid)];
    if (!n.leaf)
      for (auto& e : n.entries) e.child = remap[static_cast<std::size_t>(e.child)];
    renumbered.push_back(std::move(n));
  }
  t.nodes_ = std::move(renumbered);
  t.root_ = remap[static_cast<std::size_t>(t.root_)];

  t.bounds_ = node_mbr(t.root_);
  for (std::size_t i = 0; i < t.points_.size(); ++i)
    t.by_id_.emplace(t.points_[i].id, static_cast<std::int32_t>(i));
  return t;
}

const Point* AggRTree::find_by_id(PointId id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &points_[static_cast<std::size_t>(it->second)];
}

void AggRTree::window_rec(std::int32_t nid, const Rect& w, const EntryFilter& f,
                          AccessMeter& meter, std::vector<Point>& out) const {
  meter.visit(nid);
  const Node& n = nodes_[static_cast<std::size_t>(nid)];
  for (const auto& e : n.entries) {
    if (!w.intersects(e.mbr)) continue;
    if (f && !f(e)) continue;
    if (e.is_point()) {
      const Point& p = points_[static_cast<std::size_t>(e.point)];
      if (w.contains(p)) out.push_back(p);
    } else {
      window_rec(e.child, w, f, meter, out);
    }
  }
}

std::vector<Point> AggRTree::window_query(const Rect& w, AccessMeter& meter,
                                          const EntryFilter& entry_filter) const {
  std::vector<Point> out;
  if (w.dim() != dim_) throw std::invalid_argument("window_query: dim mismatch");
  if (w.is_empty()) return out;
  window_rec(root_, w, entry_filter, meter, out);
  return out;
}

std::int64_t AggRTree::range_count(const Point& center, double radius, RangeMode mode,
                                   std::optional<PointId> exclude,
                                   AccessMeter& meter) const {
  if (center.dim() != dim_) throw std::invalid_argument("range_count: dim mismatch");
  if (radius < 0) throw std::invalid_argument("range_count: negative radius");
  const bool strict = mode == RangeMode::Strict;

  std::int64_t count = 0;
  auto rec = [&](auto&& self, std::int32_t nid) -> void {
    meter.visit(nid);
    for (const auto& e : nodes_[static_cast<std::size_t>(nid)].entries) {
      const auto b = rect_point_bounds(e.mbr, center);
      if (strict ? b.min_dist >= radius : b.min_dist > radius) continue;
      if (strict ? b.max_dist < radius : b.max_dist <= radius) {
        count += e.count;  // whole subtree inside the ball
        continue;
      }
      if (e.is_point()) {
        const double dd = distance(points_[static_cast<std::size_t>(e.point)], center);
        if (strict ? dd < radius : dd <= radius) ++count;
      } else {
        self(self, e.child);
      }
    }
  };
  rec(rec, root_);

  if (exclude) {
    if (const Point* p = find_by_id(*exclude)) {
      const double dd = distance(*p, center);
      if (strict ? dd < radius : dd <= radius) --count;
    }
  }
  return count;
}

std::vector<PointId> AggRTree::collect_subtree_ids(const Entry& e) const {
  std::vector<PointId> out;
  if (e.is_point()) {
    out.push_back(points_[static_cast<std::size_t>(e.point)].id);
    return out;
  }
  auto rec = [&](auto&& self, std::int32_t nid) -> void {
    for (const auto& en : nodes_[static_cast<std::size_t>(nid)].entries) {
      if (en.is_point())
        out.push_back(points_[static_cast<std::size_t>(en.point)].id);
      else
        self(self, en.child);
    }
  };
  rec(rec, e.child);
  return out;
}

BestFirst::BestFirst(const AggRTree& t, KeyFn key, AccessMeter& meter)
    : tree_(t), key_(std::move(key)), meter_(meter) {
  push_node(t.root());
}

void BestFirst::push_node(std::int32_t nid) {
  meter_.visit(nid);
  const Node& n = tree_.node(nid);
  for (std::int32_t s = 0; s < static_cast<std::int32_t>(n.entries.size()); ++s)
    heap_.push({key_(n.entries[static_cast<std::size_t>(s)]), nid, s});
}

std::optional<BestFirst::Item> BestFirst::next() {
  if (heap_.empty()) return std::nullopt;
  const HeapEntry h = heap_.top();
  heap_.pop();
  const Entry& e = tree_.node(h.node).entries[static_cast<std::size_t>(h.slot)];
  return Item{h.key, h.node, h.slot, &e};
}

void BestFirst::expand(const Item& item) {
  if (item.entry->is_point()) throw std::logic_error("expand: point entry");
  push_node(item.entry->child);
}

}  // namespace iq
