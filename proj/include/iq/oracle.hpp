#pragma once

#include <span>
#include <vector>

#include "iq/predicate.hpp"

namespace iq::oracle {

/// Exact truth of "q is in the forward query result of r" by linear scan.
/// Conventions match the engines: closed eps-ball; strict-rank kNN with
/// self-exclusion by (id, coords); strict dynamic dominance with
/// self-exclusion.
bool brute_membership(std::span<const Point> points, const Point& r, const Point& q,
                      const Predicate& pred);

/// Exhaustive monochromatic inverse query. Candidate universe is the
/// dataset for eps-range and kNN, the dataset minus query matches for
/// the dynamic skyline.
std::vector<PointId> brute_inverse(std::span<const Point> points, const Predicate& pred,
                                   const QuerySet& q);

/// Bichromatic variant: candidates from `cands`, forward queries over `data`.
std::vector<PointId> brute_inverse_bi(std::span<const Point> data,
                                      std::span<const Point> cands,
                                      const Predicate& pred, const QuerySet& q);

}  // namespace iq::oracle
