#pragma once

#include <vector>

#include "iq/rtree.hpp"

namespace iq {

/// What a filter pipeline produced, before the framework wraps it into a
/// full report.
struct QueryOutcome {
  std::vector<PointId> results;  // sorted ascending
  std::int64_t candidate_count = 0;
  std::int64_t refinement_checks = 0;
};

/// Optional instrumentation: entries the filters discarded, for the
/// pruned-subtree soundness audits, plus the final hull-population bound
/// of the kNN pipeline.
struct FilterTrace {
  std::vector<Entry> pruned;
  std::int64_t hull_count_final = 0;
};

}  // namespace iq
