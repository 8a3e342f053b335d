#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "iq/geometry.hpp"

namespace iq {

/// Simulated page-access counter. With the memo enabled, re-reads of an
/// already visited node are free (the unbounded per-query buffer).
struct AccessMeter {
  std::int64_t node_reads = 0;
  bool memo_enabled = false;
  std::unordered_set<std::int32_t> seen;

  void visit(std::int32_t node_id) {
    if (memo_enabled && !seen.insert(node_id).second) return;
    ++node_reads;
  }
  void reset() {
    node_reads = 0;
    seen.clear();
  }
};

struct Entry {
  Rect mbr;
  std::int64_t count = 0;
  std::int32_t child = -1;  // inner entries: node index
  std::int32_t point = -1;  // leaf entries: point index

  bool is_point() const { return point >= 0; }
};

struct Node {
  std::int32_t id = 0;  // depth-first creation order
  bool leaf = false;
  std::vector<Entry> entries;
};

/// Aggregate R-tree: STR bulk-loaded, entries augmented with subtree
/// cardinalities, immutable after construction.
class AggRTree {
 public:
  static AggRTree bulk_load(std::vector<Point> points, int page_size_bytes);
  static int fanout_for(int page_size_bytes, int dim);

  int dim() const { return dim_; }
  int fanout() const { return fanout_; }
  std::int64_t total() const { return static_cast<std::int64_t>(points_.size()); }
  std::int32_t root() const { return root_; }
  std::size_t node_count() const { return nodes_.size(); }
  const Node& node(std::int32_t id) const { return nodes_[static_cast<std::size_t>(id)]; }
  const Point& point(std::int32_t idx) const { return points_[static_cast<std::size_t>(idx)]; }
  const std::vector<Point>& points() const { return points_; }
  const Rect& bounds() const { return bounds_; }
  const Point* find_by_id(PointId id) const;

  using EntryFilter = std::function<bool(const Entry&)>;

  std::vector<Point> window_query(const Rect& w, AccessMeter& meter,
                                  const EntryFilter& entry_filter = {}) const;

  enum class RangeMode { Closed, Strict };
  std::int64_t range_count(const Point& center, double radius, RangeMode mode,
                           std::optional<PointId> exclude, AccessMeter& meter) const;

  /// Points of the subtree under an entry (instrumentation/auditing).
  std::vector<PointId> collect_subtree_ids(const Entry& e) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Point> points_;
  std::unordered_map<PointId, std::int32_t> by_id_;
  Rect bounds_;
  std::int32_t root_ = 0;
  int dim_ = 0;
  int fanout_ = 0;

  void window_rec(std::int32_t nid, const Rect& w, const EntryFilter& f,
                  AccessMeter& meter, std::vector<Point>& out) const;
};

/// Best-first scan over tree entries: emits entries in nondecreasing key
/// order; the caller decides which inner entries to expand. Ties break on
/// (key, owning node id, slot).
class BestFirst {
 public:
  using KeyFn = std::function<double(const Entry&)>;

  struct Item {
    double key;
    std::int32_t node;
    std::int32_t slot;
    const Entry* entry;
  };

  BestFirst(const AggRTree& t, KeyFn key, AccessMeter& meter);

  std::optional<Item> next();
  void expand(const Item& item);

 private:
  struct HeapEntry {
    double key;
    std::int32_t node;
    std::int32_t slot;
    bool operator>(const HeapEntry& o) const {
      if (key != o.key) return key > o.key;
      if (node != o.node) return node > o.node;
      return slot > o.slot;
    }
  };

  const AggRTree& tree_;
  KeyFn key_;
  AccessMeter& meter_;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap_;

  void push_node(std::int32_t nid);
};

}  // namespace iq
