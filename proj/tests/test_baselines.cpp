#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "iq/oracle.hpp"
#include "support.hpp"

using namespace iqtest;

TEST_CASE("reverse queries keep the shared membership conventions") {
  const auto line = line_points({0, 1, 3});
  const AggRTree t = AggRTree::bulk_load(line, 1024);
  AccessMeter m;

  // rank membership admits the query object itself (distance-zero rank),
  // which keeps Naive's intersection consistent with MQF and the oracle
  CHECK(reverse_query(t, line[0], Predicate::knn(1), m) ==
        std::vector<PointId>{0, 1});
  CHECK(reverse_query(t, line[1], Predicate::knn(1), m) ==
        std::vector<PointId>{0, 1, 3});

  CHECK(reverse_query(t, line[1], Predicate::knn(1), m) ==
        iq::oracle::brute_inverse(line, Predicate::knn(1), QuerySet({line[1]})));
}

TEST_CASE("reverse eps-range equals the forward range") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 50 + static_cast<int>(rng() % 450);
    std::vector<Point> data;
    for (int i = 0; i < n; ++i) data.push_back(rand_point(rng, 2, 0, 1, i));
    const AggRTree t = AggRTree::bulk_load(data, 512);
    const Point& q = data[rng() % data.size()];
    const double eps = 0.05 + 0.2 * std::uniform_real_distribution<>(0, 1)(rng);

    AccessMeter m;
    const auto got = reverse_query(t, q, Predicate::eps_range(eps), m);
    std::vector<PointId> want;
    for (const auto& p : data)
      if (distance(p, q) <= eps) want.push_back(p.id);
    std::sort(want.begin(), want.end());
    CHECK(got == want);
  }
}

TEST_CASE("three-way agreement") {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const int n = 80 + static_cast<int>(rng() % 420);
    std::vector<Point> data;
    for (int i = 0; i < n; ++i) data.push_back(rand_point(rng, d, 0, 1, i));
    const AggRTree t = AggRTree::bulk_load(data, 512);
    const QuerySet q = sample_queries(data, 2 + static_cast<int>(rng() % 3), 0.1, rng());

    for (auto pred : {Predicate::eps_range(0.15), Predicate::knn(9),
                      Predicate::dynamic_skyline()}) {
      if (pred.kind == PredicateKind::Knn && q.size() > pred.k) continue;
      InverseQuerySpec spec(pred, q);
      const auto mqf = run_inverse_query(spec, t);
      const auto naive = naive_inverse(spec, t);
      const auto sqf = sqf_inverse(spec, t, nullptr, rng());
      const auto want = iq::oracle::brute_inverse(data, pred, q);
      CHECK(mqf.results == want);
      CHECK(naive.results == want);
      CHECK(sqf.results == want);
    }
  }
}

TEST_CASE("naive early exit skips remaining reverse queries") {
  // two distant queries give an empty intersection immediately; a third
  // query must not add any node reads
  const auto data = pts({{0, 0}, {0.1, 0}, {5, 0}, {5.1, 0}, {10, 0}});
  const AggRTree t = AggRTree::bulk_load(data, 256);

  const Predicate pred = Predicate::eps_range(0.5);
  InverseQuerySpec two(pred, QuerySet({data[0], data[2]}));
  InverseQuerySpec three(pred, QuerySet({data[0], data[2], data[4]}));

  const auto rep2 = naive_inverse(two, t);
  const auto rep3 = naive_inverse(three, t);
  CHECK(rep2.results.empty());
  CHECK(rep3.results.empty());
  CHECK(rep2.node_reads == rep3.node_reads);
}

TEST_CASE("naive with a single query equals one reverse query") {
  std::mt19937_64 rng(73);
  std::vector<Point> data;
  for (int i = 0; i < 300; ++i) data.push_back(rand_point(rng, 2, 0, 1, i));
  const AggRTree t = AggRTree::bulk_load(data, 512);
  const Point& q = data[17];

  for (auto pred : {Predicate::eps_range(0.2), Predicate::knn(5),
                    Predicate::dynamic_skyline()}) {
    AccessMeter m;
    InverseQuerySpec spec(pred, QuerySet({q}));
    CHECK(naive_inverse(spec, t).results == reverse_query(t, q, pred, m));
  }
}

TEST_CASE("sqf is deterministic for a fixed seed") {
  std::mt19937_64 rng(74);
  std::vector<Point> data;
  for (int i = 0; i < 400; ++i) data.push_back(rand_point(rng, 2, 0, 1, i));
  const AggRTree t = AggRTree::bulk_load(data, 512);
  const QuerySet q = sample_queries(data, 4, 0.1, 5);

  InverseQuerySpec spec(Predicate::knn(10), q);
  const auto a = sqf_inverse(spec, t, nullptr, 12345);
  const auto b = sqf_inverse(spec, t, nullptr, 12345);
  CHECK(a.results == b.results);
  CHECK(a.node_reads == b.node_reads);
}

TEST_CASE("sqf with one query verifies only against it") {
  std::mt19937_64 rng(75);
  std::vector<Point> data;
  for (int i = 0; i < 200; ++i) data.push_back(rand_point(rng, 2, 0, 1, i));
  const AggRTree t = AggRTree::bulk_load(data, 512);
  const Point& q = data[3];

  for (auto pred : {Predicate::eps_range(0.2), Predicate::knn(6),
                    Predicate::dynamic_skyline()}) {
    AccessMeter m;
    InverseQuerySpec spec(pred, QuerySet({q}));
    CHECK(sqf_inverse(spec, t, nullptr, 1).results == reverse_query(t, q, pred, m));
  }
}
