#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "iq/iknn.hpp"
#include "iq/oracle.hpp"
#include "support.hpp"

using namespace iqtest;

namespace {

// self-contained rank membership for the lemma tests
bool rank_member(const std::vector<Point>& universe, const Point& o, const Point& q,
                 int k) {
  const double dq = distance(o, q);
  std::int64_t closer = 0;
  for (const auto& p : universe) {
    if (same_object(p, o)) continue;
    if (distance(o, p) < dq) ++closer;
  }
  return closer < k;
}

}  // namespace

TEST_CASE("fast validation") {
  CHECK_FALSE(iknn_fast_validate(qset({{0, 0}, {1, 0}, {2, 0}}), 2));
  CHECK(iknn_fast_validate(qset({{0, 0}, {1, 0}}), 2));
  CHECK(iknn_fast_validate(qset({{0, 0}}), 1));
}

TEST_CASE("prune threshold") {
  CHECK(prune_threshold(10, 7, 4, false) == -1);
  CHECK(prune_threshold(10, 7, 4, true) == 0);
  CHECK(prune_threshold(10, 4, 2, false) == 4);
  // counter 5 defeats threshold 4, so the entry gets pruned
  CHECK(5 > prune_threshold(10, 4, 2, false));
}

TEST_CASE("prune count over the ledger") {
  const QuerySet q = qset({{10, 0}, {10, 1}});

  PruneLedger empty;
  CHECK(prune_count(empty, Rect({0, 0}, {1, 1}), q) == 0);

  auto add = [&](PruneLedger& lg, Rect r, std::int64_t count,
                 LedgerItem::Status st = LedgerItem::Status::Queue) {
    LedgerItem item;
    item.mbr = std::move(r);
    item.count = count;
    item.status = st;
    item.outside_hull = true;
    return lg.add(std::move(item));
  };

  // a single dominating neighborhood with five points
  PruneLedger lg;
  add(lg, Rect({0.5, 0}, {1, 0.5}), 5);
  const Rect e({0, 0}, {0.2, 0.2});
  CHECK(prune_count(lg, e, q) == 5);

  // duplicates are additive
  PruneLedger lg2;
  add(lg2, Rect({0.5, 0}, {1, 0.5}), 2);
  add(lg2, Rect({0.5, 0}, {1, 0.5}), 3);
  CHECK(prune_count(lg2, e, q) == 5);

  // expanded entries leave the live set
  PruneLedger lg3;
  add(lg3, Rect({0.5, 0}, {1, 0.5}), 5, LedgerItem::Status::Expanded);
  CHECK(prune_count(lg3, e, q) == 0);

  // entries too far away do not count
  PruneLedger lg4;
  add(lg4, Rect({30, 0}, {31, 1}), 5);
  CHECK(prune_count(lg4, e, q) == 0);

  // the entry never counts itself
  PruneLedger lg5;
  const std::size_t self = add(lg5, e, 3);
  add(lg5, Rect({0.5, 0}, {1, 0.5}), 5);
  CHECK(prune_count(lg5, e, q, self) == 5);
}

TEST_CASE("worked example on the demo line") {
  const auto line = line_points({0, 1, 2, 3, 10});
  const AggRTree t = AggRTree::bulk_load(line, 1024);

  AccessMeter m;
  CHECK(iknn_query(t, QuerySet({line[1], line[2]}), 2, m).results ==
        std::vector<PointId>{0, 1, 2, 3});

  // |Q| > k short-circuits without touching the tree
  AccessMeter m2;
  const auto empty = iknn_query(t, QuerySet({line[0], line[1], line[2]}), 2, m2);
  CHECK(empty.results.empty());
  CHECK(m2.node_reads == 0);

  // n-1 <= k admits everything
  AccessMeter m3;
  CHECK(iknn_query(t, QuerySet({line[1], line[2]}), 4, m3).results ==
        std::vector<PointId>{0, 1, 2, 3, 4});
}

TEST_CASE("oracle equality on random instances") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const int n = 100 + static_cast<int>(rng() % 1900);
    std::vector<Point> data;
    const bool clustered = trial % 2 == 1;
    if (clustered) {
      data = gen_clustered(n, d, rng());
    } else {
      for (int i = 0; i < n; ++i) data.push_back(rand_point(rng, d, 0, 1, i));
    }
    const AggRTree t = AggRTree::bulk_load(data, 1024);
    const int k = rng() % 2 == 0 ? 5 : 20;
    const int m = rng() % 2 == 0 ? 2 : 5;
    if (m > k) continue;
    const QuerySet q = sample_queries(data, m, 0.02, rng());

    AccessMeter meter;
    const auto got = iknn_query(t, q, k, meter).results;
    const auto want = iq::oracle::brute_inverse(data, Predicate::knn(k), q);
    CHECK(got == want);
  }
}

TEST_CASE("lemma: result survives the reduced singleton query") {
  std::mt19937_64 rng(42);
  int checks = 0;
  for (int trial = 0; trial < 2000 && checks < 1000; ++trial) {
    const int n = 150 + static_cast<int>(rng() % 350);
    std::vector<Point> data;
    for (int i = 0; i < n; ++i) data.push_back(rand_point(rng, 2, 0, 1, i));
    const AggRTree t = AggRTree::bulk_load(data, 1024);
    const int k = 5 + static_cast<int>(rng() % 16);
    const int m = 2 + static_cast<int>(rng() % 3);
    const QuerySet q = sample_queries(data, m, 0.05, rng());

    AccessMeter meter;
    const auto results = iknn_query(t, q, k, meter).results;
    const int kp = k - q.size() + 1;
    for (PointId id : results) {
      const Point* o = t.find_by_id(id);
      REQUIRE(o != nullptr);
      if (q.matches(*o)) continue;  // the lemma speaks about D - Q
      // universe: non-query objects plus the one query point
      for (const auto& qq : q.members()) {
        std::vector<Point> universe;
        for (const auto& p : data)
          if (!q.matches(p)) universe.push_back(p);
        universe.push_back(qq);
        CHECK(rank_member(universe, *o, qq, kp));
        ++checks;
      }
    }
  }
  CHECK(checks >= 1000);
}

TEST_CASE("lemma: hull objects are never farther than the reference query") {
  std::mt19937_64 rng(43);
  int checks = 0;
  for (int trial = 0; trial < 2000 && checks < 1000; ++trial) {
    std::vector<Point> data;
    for (int i = 0; i < 300; ++i) data.push_back(rand_point(rng, 2, 0, 1, i));
    const QuerySet q = sample_queries(data, 4, 0.2, rng());
    const Point o = rand_point(rng, 2, -0.5, 1.5);
    const auto ref = farthest_query(o, q);
    for (const auto& p : data) {
      if (q.matches(p) || !point_in_hull(p, q)) continue;
      CHECK(distance(o, p) <= ref.bound + 1e-12);
      ++checks;
    }
  }
  CHECK(checks >= 1000);
}

TEST_CASE("hull counter audit and pruned-subtree soundness") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 80 + static_cast<int>(rng() % 220);
    std::vector<Point> data;
    for (int i = 0; i < n; ++i) data.push_back(rand_point(rng, 2, 0, 1, i));
    const AggRTree t = AggRTree::bulk_load(data, 256);
    const int k = 4 + static_cast<int>(rng() % 10);
    const QuerySet q = sample_queries(data, 2 + static_cast<int>(rng() % 2), 0.3, rng());

    FilterTrace trace;
    AccessMeter meter;
    const auto got = iknn_query(t, q, k, meter, &trace).results;
    const auto want = iq::oracle::brute_inverse(data, Predicate::knn(k), q);
    CHECK(got == want);

    // the running |H| bound never exceeds the true hull population
    std::int64_t true_hull = 0;
    for (const auto& p : data)
      if (!q.matches(p) && point_in_hull(p, q)) ++true_hull;
    CHECK(trace.hull_count_final <= true_hull);

    std::set<PointId> result_set(want.begin(), want.end());
    for (const auto& e : trace.pruned) {
      for (PointId id : t.collect_subtree_ids(e)) CHECK(result_set.count(id) == 0);
    }
  }
}
