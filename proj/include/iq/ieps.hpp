#pragma once

#include "iq/trace.hpp"

namespace iq {

/// False iff some query pair is more than 2*eps apart, which makes the
/// result provably empty.
bool ieps_fast_validate(const QuerySet& q, double eps);

/// Intersection of the boxes bounding the per-query eps-spheres. May be
/// empty; every true result lies inside it.
Rect ieps_filter_rect(const QuerySet& q, double eps);

/// Inverse eps-range query: exactly { o : d(o,q) <= eps for all q in Q }.
QueryOutcome ieps_query(const AggRTree& t, const QuerySet& q, double eps,
                        AccessMeter& meter, FilterTrace* trace = nullptr);

}  // namespace iq
