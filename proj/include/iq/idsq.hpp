#pragma once

#include <optional>
#include <span>

#include "iq/trace.hpp"

namespace iq {

/// False iff some q in Q has every one of the 2^d partitions around it
/// occupied by another query object. A query on a partition boundary
/// counts toward every partition it touches.
bool idsq_fast_validate(const QuerySet& q);

/// Union-of-regions membership: the query-pair regions PR_{qi}(qj) plus
/// object regions accumulated during traversal. Regions are never merged;
/// a hit means "contained in at least one region" with the strict-side
/// rule of region_prunes_*.
class PruneSpace {
 public:
  explicit PruneSpace(const QuerySet& q);

  void add_object(const Point& o, const QuerySet& q);
  bool covers(const Point& p) const;
  bool covers(const Rect& r) const;
  std::size_t size() const { return regions_.size(); }

 private:
  std::vector<Rect> regions_;
};

/// Points of the set not dynamically dominated w.r.t. viewpoint c by any
/// other member. c itself is skipped by identity if present.
std::vector<Point> dynamic_skyline(std::span<const Point> points, const Point& c);

/// Reflection-window verification: c is accepted iff for every q the
/// window spanned by q and its reflection through c holds no point that
/// dominates q w.r.t. c.
bool idsq_refine(const AggRTree& t, const Point& c, const QuerySet& q,
                 AccessMeter& meter);

/// 2D accelerator built from the query box: corner regions (Condition I),
/// edge half-planes (Condition II) and object bands (Condition IV).
class QBoxContext {
 public:
  explicit QBoxContext(const QuerySet& q);

  /// Feed an accessed database object; keeps the Condition-IV bands.
  void observe(const Point& o);

  bool prunes(const Point& p) const;
  bool prunes(const Rect& r) const;

 private:
  Rect box_;
  double cx_, cy_;
  bool corner_[4] = {false, false, false, false};  // (xlo,ylo),(xhi,ylo),(xlo,yhi),(xhi,yhi)
  bool edge_cut_[4] = {false, false, false, false};  // xlo, xhi, ylo, yhi sides
  double min_above_[2];
  double max_below_[2];
};

/// Condition III / the at-most-one-candidate rule for a surviving region
/// between two query points: in the NE case only the point carrying both
/// the largest x and largest y can survive mutual pruning; SW mirrored.
std::optional<Point> region_unique_candidate(std::span<const Point> region_points,
                                             const Point& q1, const Point& q2);

/// Inverse dynamic-skyline query: { o in D \ Q : every q in Q lies in the
/// dynamic skyline of o over D \ {o} }.
QueryOutcome idsq_query(const AggRTree& t, const QuerySet& q, AccessMeter& meter,
                        FilterTrace* trace = nullptr,
                        std::optional<bool> use_2d_accel = std::nullopt);

/// Bichromatic form: candidates from `cands`, dominators from `data`.
QueryOutcome idsq_query_bi(const AggRTree& data, const AggRTree& cands,
                           const QuerySet& q, AccessMeter& meter);

}  // namespace iq
