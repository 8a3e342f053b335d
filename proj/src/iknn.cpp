#include "iq/iknn.hpp"

#include <algorithm>
#include <queue>

namespace iq {

bool iknn_fast_validate(const QuerySet& q, int k) {
  return q.size() <= k;
}

std::int64_t prune_threshold(int k, int q_count, std::int64_t hull_count,
                             bool inside_hull) {
  return static_cast<std::int64_t>(k) - hull_count - q_count + (inside_hull ? 1 : 0);
}

std::size_t PruneLedger::add(LedgerItem item) {
  items_.push_back(std::move(item));
  return items_.size() - 1;
}

void PruneLedger::set_status(std::size_t idx, LedgerItem::Status st) {
  items_[idx].status = st;
}

namespace {

// Sum of the counts of ledger entries provably strictly closer than the
// entry's farthest-query bound. Early-exits once `stop_above` is passed
// (a negative threshold forces an immediate prune decision).
std::int64_t dominating_count(const PruneLedger& ledger, const Rect& mbr,
                              double bound, std::size_t self,
                              std::int64_t stop_above, bool bounded) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    if (i == self) continue;
    const LedgerItem& other = ledger.item(i);
    if (other.status == LedgerItem::Status::Expanded) continue;
    if (!other.outside_hull) continue;
    if (rect_rect_max_dist(mbr, other.mbr) < bound) {
      sum += other.count;
      if (bounded && sum > stop_above) return sum;
    }
  }
  return sum;
}

}  // namespace

std::int64_t prune_count(const PruneLedger& ledger, const Rect& e, const QuerySet& q,
                         std::size_t self) {
  const double bound = farthest_query(e, q).bound;
  return dominating_count(ledger, e, bound, self, 0, false);
}

namespace {

struct HeapRef {
  double key;
  std::int32_t node;
  std::int32_t slot;
  std::size_t idx;
  bool operator>(const HeapRef& o) const {
    if (key != o.key) return key > o.key;
    if (node != o.node) return node > o.node;
    return slot > o.slot;
  }
};

LedgerItem make_item(const AggRTree& t, const Entry& e, const QuerySet& q) {
  LedgerItem it;
  it.mbr = e.mbr;
  it.count = e.count;
  if (e.is_point()) {
    it.pt = t.point(e.point);
    it.outside_hull = !point_in_hull(*it.pt, q);
  } else {
    it.outside_hull = !e.mbr.intersects(q.box());
  }
  it.bound = farthest_query(e.mbr, q).bound;
  return it;
}

std::int64_t queries_in_rect(const Rect& r, const QuerySet& q) {
  std::int64_t n = 0;
  for (const auto& m : q.members())
    if (r.contains(m)) ++n;
  return n;
}

}  // namespace

QueryOutcome iknn_query(const AggRTree& t, const QuerySet& q, int k,
                        AccessMeter& meter, FilterTrace* trace) {
  QueryOutcome out;
  if (!iknn_fast_validate(q, k)) return out;

  PruneLedger ledger;
  std::priority_queue<HeapRef, std::vector<HeapRef>, std::greater<>> heap;
  std::vector<Entry> entry_of;  // parallel to ledger, for traces

  auto enqueue_node = [&](std::int32_t nid) {
    meter.visit(nid);
    const Node& n = t.node(nid);
    for (std::int32_t s = 0; s < static_cast<std::int32_t>(n.entries.size()); ++s) {
      const Entry& e = n.entries[static_cast<std::size_t>(s)];
      LedgerItem item = make_item(t, e, q);
      const double key = item.bound;
      const std::size_t idx = ledger.add(std::move(item));
      entry_of.push_back(e);
      heap.push({key, nid, s, idx});
    }
  };
  enqueue_node(t.root());

  std::int64_t hull_count = 0;
  std::vector<std::size_t> candidates;

  // grows |H| once an entry's fate is settled; expanded entries defer to
  // their children so nothing is counted twice
  auto credit_hull = [&](std::size_t idx) {
    const LedgerItem& item = ledger.item(idx);
    if (item.pt) {
      if (!q.matches(*item.pt) && !item.outside_hull) ++hull_count;
    } else if (rect_in_hull(item.mbr, q)) {
      hull_count += std::max<std::int64_t>(0, item.count - queries_in_rect(item.mbr, q));
    }
  };

  while (!heap.empty()) {
    const HeapRef top = heap.top();
    heap.pop();
    const std::size_t idx = top.idx;
    const LedgerItem& item = ledger.item(idx);

    const std::int64_t threshold =
        prune_threshold(k, q.size(), hull_count, !item.outside_hull);
    const bool prune =
        threshold < 0 ||
        dominating_count(ledger, item.mbr, item.bound, idx, threshold, true) >
            threshold;

    if (prune) {
      ledger.set_status(idx, LedgerItem::Status::Pruned);
      if (trace) trace->pruned.push_back(entry_of[idx]);
      credit_hull(idx);
    } else if (item.pt) {
      ledger.set_status(idx, LedgerItem::Status::Candidate);
      candidates.push_back(idx);
      credit_hull(idx);
    } else {
      ledger.set_status(idx, LedgerItem::Status::Expanded);
      enqueue_node(entry_of[idx].child);
    }
  }

  if (trace) trace->hull_count_final = hull_count;

  out.candidate_count = static_cast<std::int64_t>(candidates.size());
  for (std::size_t idx : candidates) {
    const Point& c = *ledger.item(idx).pt;
    const double eps = farthest_query(c, q).bound;
    ++out.refinement_checks;
    const std::int64_t closer =
        t.range_count(c, eps, AggRTree::RangeMode::Strict, c.id, meter);
    if (closer < k) out.results.push_back(c.id);
  }
  std::sort(out.results.begin(), out.results.end());
  return out;
}

namespace {

// Count data points provably strictly closer to every point of `mbr`
// than `bound`, restricted to points provably outside the hull of Q.
// Aggregate counts short-circuit whole subtrees.
std::int64_t bi_closer_count(const AggRTree& data, const Rect& mbr, double bound,
                             const QuerySet& q, AccessMeter& meter) {
  std::int64_t sum = 0;
  auto rec = [&](auto&& self, std::int32_t nid) -> void {
    meter.visit(nid);
    for (const auto& e : data.node(nid).entries) {
      if (rect_rect_min_dist(mbr, e.mbr) >= bound) continue;
      if (e.is_point()) {
        const Point& p = data.point(e.point);
        if (point_in_hull(p, q)) continue;
        if (rect_rect_max_dist(mbr, e.mbr) < bound) ++sum;
      } else {
        const bool outside = !e.mbr.intersects(q.box());
        if (outside && rect_rect_max_dist(mbr, e.mbr) < bound) {
          sum += e.count;
        } else {
          self(self, e.child);
        }
      }
    }
  };
  rec(rec, data.root());
  return sum;
}

// Exact count of non-query data objects inside the hull of Q.
std::int64_t hull_population(const AggRTree& data, const QuerySet& q,
                             AccessMeter& meter) {
  std::int64_t sum = 0;
  auto rec = [&](auto&& self, std::int32_t nid) -> void {
    meter.visit(nid);
    for (const auto& e : data.node(nid).entries) {
      if (!e.mbr.intersects(q.box())) continue;
      if (e.is_point()) {
        const Point& p = data.point(e.point);
        if (!q.matches(p) && point_in_hull(p, q)) ++sum;
      } else if (rect_in_hull(e.mbr, q) && queries_in_rect(e.mbr, q) == 0) {
        sum += e.count;
      } else {
        self(self, e.child);
      }
    }
  };
  rec(rec, data.root());
  return sum;
}

}  // namespace

QueryOutcome iknn_query_bi(const AggRTree& data, const AggRTree& cands,
                           const QuerySet& q, int k, AccessMeter& meter) {
  QueryOutcome out;
  if (!iknn_fast_validate(q, k)) return out;

  const std::int64_t hull_count = hull_population(data, q, meter);
  // no |Q| term: query objects need not be members of the data set
  const std::int64_t threshold = static_cast<std::int64_t>(k) - hull_count;

  std::vector<Point> survivors;
  auto rec = [&](auto&& self, std::int32_t nid) -> void {
    meter.visit(nid);
    for (const auto& e : cands.node(nid).entries) {
      const double bound = farthest_query(e.mbr, q).bound;
      if (threshold < 0 ||
          bi_closer_count(data, e.mbr, bound, q, meter) > threshold) {
        continue;  // pruned
      }
      if (e.is_point())
        survivors.push_back(cands.point(e.point));
      else
        self(self, e.child);
    }
  };
  rec(rec, cands.root());

  out.candidate_count = static_cast<std::int64_t>(survivors.size());
  for (const auto& c : survivors) {
    const double eps = farthest_query(c, q).bound;
    ++out.refinement_checks;
    std::optional<PointId> exclude;
    if (const Point* same = data.find_by_id(c.id); same && same_coords(*same, c))
      exclude = c.id;
    const std::int64_t closer =
        data.range_count(c, eps, AggRTree::RangeMode::Strict, exclude, meter);
    if (closer < k) out.results.push_back(c.id);
  }
  std::sort(out.results.begin(), out.results.end());
  return out;
}

}  // namespace iq
