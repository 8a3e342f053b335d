#include "iq/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "iq/idsq.hpp"
#include "iq/ieps.hpp"
#include "iq/iknn.hpp"

namespace iq {

namespace {

std::vector<PointId> forward_range_ids(const AggRTree& t, const Point& q, double eps,
                                       AccessMeter& meter) {
  std::vector<PointId> out;
  auto rec = [&](auto&& self, std::int32_t nid) -> void {
    meter.visit(nid);
    for (const auto& e : t.node(nid).entries) {
      if (rect_min_dist(e.mbr, q) > eps) continue;
      if (e.is_point()) {
        const Point& p = t.point(e.point);
        if (distance(p, q) <= eps) out.push_back(p.id);
      } else {
        self(self, e.child);
      }
    }
  };
  rec(rec, t.root());
  std::sort(out.begin(), out.end());
  return out;
}

QuerySet singleton(const Point& q) { return QuerySet({q}); }

std::vector<PointId> reverse_query_on(const AggRTree& data, const AggRTree* aux,
                                      const Point& q, const Predicate& pred,
                                      AccessMeter& meter) {
  const AggRTree& cand_tree = aux ? *aux : data;
  switch (pred.kind) {
    case PredicateKind::EpsRange:
      // the reverse eps-range query equals the forward one
      return forward_range_ids(cand_tree, q, pred.eps, meter);
    case PredicateKind::Knn:
      return aux ? iknn_query_bi(data, *aux, singleton(q), pred.k, meter).results
                 : iknn_query(data, singleton(q), pred.k, meter).results;
    case PredicateKind::DynamicSkyline:
      return aux ? idsq_query_bi(data, *aux, singleton(q), meter).results
                 : idsq_query(data, singleton(q), meter).results;
  }
  return {};
}

}  // namespace

std::vector<PointId> reverse_query(const AggRTree& t, const Point& q,
                                   const Predicate& pred, AccessMeter& meter) {
  return reverse_query_on(t, nullptr, q, pred, meter);
}

QueryReport naive_inverse(const InverseQuerySpec& spec, const AggRTree& data,
                          const AggRTree* aux) {
  spec.validate(data, aux);
  QueryReport rep;
  const auto started = std::chrono::steady_clock::now();
  AccessMeter meter;

  std::vector<PointId> inter;
  bool first = true;
  for (const auto& q : spec.query.members()) {
    std::vector<PointId> ids =
        reverse_query_on(data, spec.bichromatic ? aux : nullptr, q,
                         spec.predicate, meter);
    if (first) {
      inter = std::move(ids);
      first = false;
    } else {
      std::vector<PointId> next;
      std::set_intersection(inter.begin(), inter.end(), ids.begin(), ids.end(),
                            std::back_inserter(next));
      inter = std::move(next);
    }
    if (inter.empty()) break;
  }

  rep.results = std::move(inter);
  rep.node_reads = meter.node_reads;
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - started)
                    .count();
  return rep;
}

QueryReport sqf_inverse(const InverseQuerySpec& spec, const AggRTree& data,
                        const AggRTree* aux, std::uint64_t seed) {
  spec.validate(data, aux);
  QueryReport rep;
  const auto started = std::chrono::steady_clock::now();
  AccessMeter meter;
  meter.memo_enabled = true;

  std::mt19937_64 rng(seed);
  const auto pick = static_cast<std::size_t>(
      std::uniform_int_distribution<std::size_t>(0, spec.query.members().size() - 1)(rng));
  const Point& filter_q = spec.query.members()[pick];

  std::vector<PointId> cands = reverse_query_on(
      data, spec.bichromatic ? aux : nullptr, filter_q, spec.predicate, meter);
  rep.candidate_count = static_cast<std::int64_t>(cands.size());

  const AggRTree& cand_tree = spec.bichromatic && aux ? *aux : data;
  for (PointId cid : cands) {
    const Point* c = cand_tree.find_by_id(cid);
    if (!c) continue;
    // skyline results never include query objects
    if (spec.predicate.kind == PredicateKind::DynamicSkyline && spec.query.matches(*c))
      continue;
    ++rep.refinement_checks;
    bool ok = true;
    for (const auto& q : spec.query.members()) {
      if (!predicate_member(data, *c, q, spec.predicate, meter)) {
        ok = false;
        break;
      }
    }
    if (ok) rep.results.push_back(cid);
  }
  std::sort(rep.results.begin(), rep.results.end());
  rep.node_reads = meter.node_reads;
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - started)
                    .count();
  return rep;
}

QueryReport run_algorithm(Algo algo, const InverseQuerySpec& spec,
                          const AggRTree& data, const AggRTree* aux,
                          std::uint64_t sqf_seed) {
  switch (algo) {
    case Algo::Mqf:
      return run_inverse_query(spec, data, aux);
    case Algo::Sqf:
      return sqf_inverse(spec, data, aux, sqf_seed);
    case Algo::Naive:
      return naive_inverse(spec, data, aux);
  }
  return {};
}

}  // namespace iq
