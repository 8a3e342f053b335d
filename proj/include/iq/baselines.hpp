#pragma once

#include <cstdint>

#include "iq/framework.hpp"

namespace iq {

enum class Algo { Mqf, Sqf, Naive };

/// Reverse query around a single q: { o : q in P(o) }. For eps-range this
/// is the forward range query; kNN and dynamic skyline run the inverse
/// engines with a singleton query set.
std::vector<PointId> reverse_query(const AggRTree& t, const Point& q,
                                   const Predicate& pred, AccessMeter& meter);

/// Per-query reverse queries intersected iteratively, in Q's stored
/// order, with an early exit once the running intersection is empty.
QueryReport naive_inverse(const InverseQuerySpec& spec, const AggRTree& data,
                          const AggRTree* aux = nullptr);

/// Single-query filter: one seeded-random reverse query yields
/// candidates, each verified against the whole of Q by the shared
/// membership routine. The per-query node memo plays the paper's buffer.
QueryReport sqf_inverse(const InverseQuerySpec& spec, const AggRTree& data,
                        const AggRTree* aux, std::uint64_t seed);

QueryReport run_algorithm(Algo algo, const InverseQuerySpec& spec,
                          const AggRTree& data, const AggRTree* aux = nullptr,
                          std::uint64_t sqf_seed = 0);

}  // namespace iq
