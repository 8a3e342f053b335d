#pragma once

#include <optional>

#include "iq/predicate.hpp"
#include "iq/rtree.hpp"
#include "iq/trace.hpp"

namespace iq {

struct InverseQuerySpec {
  Predicate predicate;
  QuerySet query;
  bool bichromatic = false;

  InverseQuerySpec(Predicate p, QuerySet q, bool bi = false)
      : predicate(p), query(std::move(q)), bichromatic(bi) {}

  void validate(const AggRTree& data, const AggRTree* aux) const;
};

struct QueryReport {
  std::vector<PointId> results;
  std::int64_t node_reads = 0;
  double wall_ms = 0.0;
  bool validated_empty = false;
  std::int64_t candidate_count = 0;
  std::int64_t refinement_checks = 0;
};

/// The multi-query-filter pipeline: fast query-based validation, query
/// and object based pruning, refinement. Bichromatic mode draws
/// candidates from `aux` and verification objects from `data`.
QueryReport run_inverse_query(const InverseQuerySpec& spec, const AggRTree& data,
                              const AggRTree* aux = nullptr,
                              FilterTrace* trace = nullptr);

/// Shared forward-predicate membership: is q in P(r) over the indexed
/// dataset? All refinement and verification paths answer through here.
bool predicate_member(const AggRTree& data, const Point& r, const Point& q,
                      const Predicate& pred, AccessMeter& meter);

}  // namespace iq
