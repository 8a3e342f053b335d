#include "iq/ieps.hpp"

#include <algorithm>

namespace iq {

bool ieps_fast_validate(const QuerySet& q, double eps) {
  const auto& m = q.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (distance(m[i], m[j]) > 2 * eps) return false;
  return true;
}

Rect ieps_filter_rect(const QuerySet& q, double eps) {
  const int d = q.dim();
  Rect r = Rect::whole(d);
  for (const auto& m : q.members()) {
    for (int i = 0; i < d; ++i) {
      r.lo[static_cast<std::size_t>(i)] = std::max(r.lo[static_cast<std::size_t>(i)], m[i] - eps);
      r.hi[static_cast<std::size_t>(i)] = std::min(r.hi[static_cast<std::size_t>(i)], m[i] + eps);
    }
  }
  return r;
}

QueryOutcome ieps_query(const AggRTree& t, const QuerySet& q, double eps,
                        AccessMeter& meter, FilterTrace* trace) {
  QueryOutcome out;
  if (!ieps_fast_validate(q, eps)) return out;
  const Rect filter = ieps_filter_rect(q, eps);
  if (filter.is_empty()) return out;

  // subtree worth visiting only if it can be within eps of every query
  auto entry_ok = [&](const Entry& e) {
    for (const auto& m : q.members()) {
      if (rect_min_dist(e.mbr, m) > eps) {
        if (trace) trace->pruned.push_back(e);
        return false;
      }
    }
    return true;
  };

  std::vector<Point> cands = t.window_query(filter, meter, entry_ok);
  out.candidate_count = static_cast<std::int64_t>(cands.size());
  for (const auto& c : cands) {
    ++out.refinement_checks;
    bool ok = true;
    for (const auto& m : q.members()) {
      if (distance(c, m) > eps) {
        ok = false;
        break;
      }
    }
    if (ok) out.results.push_back(c.id);
  }
  std::sort(out.results.begin(), out.results.end());
  return out;
}

}  // namespace iq
