#pragma once

#include <cstddef>
#include <optional>

#include "iq/trace.hpp"

namespace iq {

/// False iff |Q| > k (result provably empty).
bool iknn_fast_validate(const QuerySet& q, int k);

/// k' = k - |H| - |Q|, plus one when the object lies inside the convex
/// hull of Q. May go negative: the whole outside-hull region is then
/// prunable without counting.
std::int64_t prune_threshold(int k, int q_count, std::int64_t hull_count,
                             bool inside_hull);

/// One live entry during the filter phase. The three states Queue,
/// Candidate and Pruned partition the live entries; Expanded entries have
/// been replaced by their children.
struct LedgerItem {
  enum class Status { Queue, Candidate, Pruned, Expanded };
  Rect mbr;
  std::int64_t count = 0;
  std::optional<Point> pt;         // set for point entries
  Status status = Status::Queue;
  double bound = 0.0;              // cached max_q minDist(mbr, q)
  bool outside_hull = false;       // provably outside the hull of Q
};

class PruneLedger {
 public:
  std::size_t add(LedgerItem item);
  void set_status(std::size_t idx, LedgerItem::Status st);
  const LedgerItem& item(std::size_t idx) const { return items_[idx]; }
  const std::vector<LedgerItem>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<LedgerItem> items_;
};

/// Lower bound on the number of objects provably closer to every point of
/// entry `e` than that point's farthest query object. Counts only ledger
/// entries provably outside the closed hull of Q (hull objects and query
/// objects are already accounted for by the threshold terms). Pass the
/// entry's own ledger index as `self` to keep it out of its own count.
std::int64_t prune_count(const PruneLedger& ledger, const Rect& e, const QuerySet& q,
                         std::size_t self = PruneLedger::npos);

/// Inverse kNN query. Membership rank: q is a kNN of o iff fewer than k
/// objects of the dataset (minus o itself) are strictly closer to o than q.
QueryOutcome iknn_query(const AggRTree& t, const QuerySet& q, int k,
                        AccessMeter& meter, FilterTrace* trace = nullptr);

/// Bichromatic form: candidates from `cands`, ranks and pruning objects
/// from `data`.
QueryOutcome iknn_query_bi(const AggRTree& data, const AggRTree& cands,
                           const QuerySet& q, int k, AccessMeter& meter);

}  // namespace iq
