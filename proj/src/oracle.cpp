#include "iq/oracle.hpp"

#include <algorithm>

namespace iq::oracle {

namespace {

bool member_eps(const Point& r, const Point& q, double eps) {
  return distance(r, q) <= eps;
}

bool member_knn(std::span<const Point> points, const Point& r, const Point& q, int k) {
  const double dq = distance(r, q);
  std::int64_t strictly_closer = 0;
  for (const auto& p : points) {
    if (same_object(p, r)) continue;
    if (distance(r, p) < dq) ++strictly_closer;
  }
  return strictly_closer < k;
}

bool member_skyline(std::span<const Point> points, const Point& r, const Point& q) {
  for (const auto& p : points) {
    if (same_object(p, r)) continue;
    if (dynamic_dominates(p, q, r)) return false;
  }
  return true;
}

}  // namespace

bool brute_membership(std::span<const Point> points, const Point& r, const Point& q,
                      const Predicate& pred) {
  switch (pred.kind) {
    case PredicateKind::EpsRange:
      return member_eps(r, q, pred.eps);
    case PredicateKind::Knn:
      return member_knn(points, r, q, pred.k);
    case PredicateKind::DynamicSkyline:
      return member_skyline(points, r, q);
  }
  return false;
}

static std::vector<PointId> scan(std::span<const Point> data,
                                 std::span<const Point> universe,
                                 const Predicate& pred, const QuerySet& q) {
  std::vector<PointId> out;
  for (const auto& r : universe) {
    if (pred.kind == PredicateKind::DynamicSkyline && q.matches(r)) continue;
    bool all = true;
    for (const auto& m : q.members()) {
      if (!brute_membership(data, r, m, pred)) {
        all = false;
        break;
      }
    }
    if (all) out.push_back(r.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointId> brute_inverse(std::span<const Point> points, const Predicate& pred,
                                   const QuerySet& q) {
  return scan(points, points, pred, q);
}

std::vector<PointId> brute_inverse_bi(std::span<const Point> data,
                                      std::span<const Point> cands,
                                      const Predicate& pred, const QuerySet& q) {
  return scan(data, cands, pred, q);
}

}  // namespace iq::oracle
