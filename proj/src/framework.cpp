#include "iq/framework.hpp"

#include <chrono>

#include "iq/idsq.hpp"
#include "iq/ieps.hpp"
#include "iq/iknn.hpp"

namespace iq {

void InverseQuerySpec::validate(const AggRTree& data, const AggRTree* aux) const {
  predicate.validate();
  if (query.dim() != data.dim())
    throw std::invalid_argument("query set dimensionality does not match dataset");
  if (bichromatic) {
    if (!aux) throw std::invalid_argument("bichromatic query needs a candidate tree");
    if (aux->dim() != data.dim())
      throw std::invalid_argument("candidate tree dimensionality mismatch");
  }
}

namespace {

bool fast_validate(const InverseQuerySpec& spec) {
  switch (spec.predicate.kind) {
    case PredicateKind::EpsRange:
      return ieps_fast_validate(spec.query, spec.predicate.eps);
    case PredicateKind::Knn:
      return iknn_fast_validate(spec.query, spec.predicate.k);
    case PredicateKind::DynamicSkyline:
      return idsq_fast_validate(spec.query);
  }
  return true;
}

}  // namespace

QueryReport run_inverse_query(const InverseQuerySpec& spec, const AggRTree& data,
                              const AggRTree* aux, FilterTrace* trace) {
  spec.validate(data, aux);
  QueryReport rep;
  const auto started = std::chrono::steady_clock::now();

  if (!fast_validate(spec)) {
    rep.validated_empty = true;
    rep.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    return rep;
  }

  AccessMeter meter;
  QueryOutcome outcome;
  if (!spec.bichromatic) {
    switch (spec.predicate.kind) {
      case PredicateKind::EpsRange:
        outcome = ieps_query(data, spec.query, spec.predicate.eps, meter, trace);
        break;
      case PredicateKind::Knn:
        outcome = iknn_query(data, spec.query, spec.predicate.k, meter, trace);
        break;
      case PredicateKind::DynamicSkyline:
        outcome = idsq_query(data, spec.query, meter, trace);
        break;
    }
  } else {
    switch (spec.predicate.kind) {
      case PredicateKind::EpsRange:
        outcome = ieps_query(*aux, spec.query, spec.predicate.eps, meter, trace);
        break;
      case PredicateKind::Knn:
        outcome = iknn_query_bi(data, *aux, spec.query, spec.predicate.k, meter);
        break;
      case PredicateKind::DynamicSkyline:
        outcome = idsq_query_bi(data, *aux, spec.query, meter);
        break;
    }
  }

  rep.results = std::move(outcome.results);
  rep.candidate_count = outcome.candidate_count;
  rep.refinement_checks = outcome.refinement_checks;
  rep.node_reads = meter.node_reads;
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - started)
                    .count();
  return rep;
}

bool predicate_member(const AggRTree& data, const Point& r, const Point& q,
                      const Predicate& pred, AccessMeter& meter) {
  switch (pred.kind) {
    case PredicateKind::EpsRange:
      return distance(r, q) <= pred.eps;
    case PredicateKind::Knn: {
      std::optional<PointId> exclude;
      if (const Point* same = data.find_by_id(r.id); same && same_coords(*same, r))
        exclude = r.id;
      const std::int64_t closer = data.range_count(
          r, distance(r, q), AggRTree::RangeMode::Strict, exclude, meter);
      return closer < pred.k;
    }
    case PredicateKind::DynamicSkyline: {
      // the reflection window of q through r bounds every possible dominator
      Point reflected;
      reflected.coords.resize(static_cast<std::size_t>(r.dim()));
      for (int i = 0; i < r.dim(); ++i)
        reflected.coords[static_cast<std::size_t>(i)] = 2 * r[i] - q[i];
      for (const auto& p : data.window_query(Rect::corners(q, reflected), meter)) {
        if (same_object(p, r)) continue;
        if (dynamic_dominates(p, q, r)) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace iq
