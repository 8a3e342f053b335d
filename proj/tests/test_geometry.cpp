#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace iqtest;

TEST_CASE("euclidean distance") {
  CHECK(distance(pt({0, 0}), pt({3, 4})) == doctest::Approx(5.0));
  CHECK(distance(pt({1, 1}), pt({1, 1})) == 0.0);
  CHECK(distance(pt({0, 0}), pt({1, 1})) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(distance(pt({0, 0}), pt({0, 0, 0})), std::invalid_argument);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const Point a = rand_point(rng, 3), b = rand_point(rng, 3);
    CHECK(distance(a, b) == doctest::Approx(distance(b, a)));
    CHECK(distance(a, a) == 0.0);
  }
}

TEST_CASE("rect/point min and max distance") {
  const Rect unit({0, 0}, {1, 1});
  auto b = rect_point_bounds(unit, pt({2, 0}));
  CHECK(b.min_dist == doctest::Approx(1.0));
  CHECK(b.max_dist == doctest::Approx(std::sqrt(5.0)));

  b = rect_point_bounds(unit, pt({0.5, 0.5}));
  CHECK(b.min_dist == 0.0);
  CHECK(b.max_dist == doctest::Approx(std::sqrt(0.5)));

  b = rect_point_bounds(unit, pt({0, 0}));
  CHECK(b.min_dist == 0.0);
  CHECK(b.max_dist == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS_AS(rect_point_bounds(Rect::empty(2), pt({0, 0})),
                  std::invalid_argument);

  // sandwich property on random boxes
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Point a = rand_point(rng, 3), c = rand_point(rng, 3);
    Rect r = Rect::around(a);
    r.expand(c);
    const Point probe = rand_point(rng, 3, -0.5, 1.5);
    const auto bounds = rect_point_bounds(r, probe);
    CHECK((bounds.min_dist == 0.0) == r.contains(probe));
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 50; ++i) {
      Point inside;
      inside.coords.resize(3);
      for (int j = 0; j < 3; ++j)
        inside.coords[j] = r.lo[j] + u(rng) * (r.hi[j] - r.lo[j]);
      const double d = distance(probe, inside);
      CHECK(d >= bounds.min_dist - 1e-12);
      CHECK(d <= bounds.max_dist + 1e-12);
    }
  }
}

TEST_CASE("farthest query object") {
  {
    const QuerySet q = qset({{1, 0}, {3, 0}});
    const auto r = farthest_query(pt({0, 0}), q);
    CHECK(q.members()[r.index].id == 1);
    CHECK(r.bound == doctest::Approx(3.0));
  }
  {
    // symmetric tie resolved toward the lower id
    const QuerySet q = qset({{1, 0}, {3, 0}});
    const auto r = farthest_query(pt({2, 0}), q);
    CHECK(q.members()[r.index].id == 0);
    CHECK(r.bound == doctest::Approx(1.0));
  }
  {
    const QuerySet q = qset({{2, 2}});
    const auto r = farthest_query(Rect({0, 0}, {1, 1}), q);
    CHECK(q.members()[r.index].id == 0);
    CHECK(r.bound == doctest::Approx(std::sqrt(2.0)));
  }

  // exactness for points
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::vector<Point> m;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) m.push_back(rand_point(rng, 2, 0, 1, i));
    const QuerySet q(m);
    const Point o = rand_point(rng, 2);
    double expect = 0;
    for (const auto& mm : m) expect = std::max(expect, distance(o, mm));
    CHECK(farthest_query(o, q).bound == expect);
  }
}

TEST_CASE("entry dominance") {
  CHECK(entry_dominance(Rect({0, 0}, {1, 0}), Rect({1.5, 0}, {2, 0}),
                        qset({{10, 0}})));
  CHECK_FALSE(entry_dominance(Rect::around(pt({0, 0})), Rect::around(pt({5, 0})),
                              qset({{1, 0}})));
  CHECK(entry_dominance(Rect({0, 0}, {1, 1}), Rect({0, 0}, {1, 1}),
                        qset({{10, 10}})));

  // when the test fires, sampled pairs really are strictly closer
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  int fired = 0;
  for (int t = 0; t < 400 && fired < 40; ++t) {
    const Point a1 = rand_point(rng, 2), a2 = rand_point(rng, 2);
    Rect e = Rect::around(a1);
    e.expand(a2);
    Point b1 = rand_point(rng, 2), b2 = rand_point(rng, 2);
    Rect ep = Rect::around(b1);
    ep.expand(b2);
    std::vector<Point> qm{rand_point(rng, 2, 2, 6, 0), rand_point(rng, 2, 2, 6, 1)};
    const QuerySet q(qm);
    if (!entry_dominance(e, ep, q)) continue;
    ++fired;
    for (int i = 0; i < 25; ++i) {
      Point p, pp;
      p.coords = {e.lo[0] + u(rng) * (e.hi[0] - e.lo[0]),
                  e.lo[1] + u(rng) * (e.hi[1] - e.lo[1])};
      pp.coords = {ep.lo[0] + u(rng) * (ep.hi[0] - ep.lo[0]),
                   ep.lo[1] + u(rng) * (ep.hi[1] - ep.lo[1])};
      const auto fq = farthest_query(p, q);
      CHECK(distance(p, pp) < fq.bound);
    }
  }
  CHECK(fired > 0);
}

TEST_CASE("convex hull membership") {
  const QuerySet tri = qset({{0, 0}, {1, 0}, {0, 1}});
  CHECK(point_in_hull(pt({0.25, 0.25}), tri));
  CHECK_FALSE(point_in_hull(pt({1, 1}), tri));
  CHECK(point_in_hull(pt({0, 0}), tri));       // vertex on boundary
  CHECK(point_in_hull(pt({0.5, 0.5}), tri));   // edge midpoint

  const QuerySet collinear = qset({{0, 0}, {1, 0}, {2, 0}});
  CHECK(point_in_hull(pt({1, 0}), collinear));
  CHECK_FALSE(point_in_hull(pt({1, 0.5}), collinear));
  CHECK(convex_comb_feasible(pt({1, 0}), collinear.members()));

  CHECK(rect_in_hull(Rect({0.1, 0.1}, {0.2, 0.2}), tri));
  CHECK_FALSE(rect_in_hull(Rect({0.1, 0.1}, {2, 2}), tri));
}

TEST_CASE("2d polygon route agrees with the feasibility route") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 1000; ++t) {
    std::vector<Point> m;
    const int n = 3 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) m.push_back(rand_point(rng, 2, 0.2, 0.8, i));
    const QuerySet q(m);
    const Point p = rand_point(rng, 2);
    CHECK(point_in_hull(p, q) == convex_comb_feasible(p, q.members()));
  }
}

TEST_CASE("3d membership agrees with a barycentric oracle on simplices") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 300; ++t) {
    std::vector<Point> m;
    for (int i = 0; i < 4; ++i) m.push_back(rand_point(rng, 3, 0, 1, i));
    const QuerySet q(m);

    // inside sample: random barycentric combination
    double w[4];
    double sum = 0;
    for (double& x : w) {
      x = u(rng);
      sum += x;
    }
    Point inside;
    inside.coords = {0, 0, 0};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) inside.coords[j] += w[i] / sum * m[i][j];
    CHECK(point_in_hull(inside, q));

    // outside sample: push past a vertex from the centroid
    Point centroid;
    centroid.coords = {0, 0, 0};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) centroid.coords[j] += m[i][j] / 4;
    Point outside;
    outside.coords = {0, 0, 0};
    for (int j = 0; j < 3; ++j)
      outside.coords[j] = m[0][j] + 1.5 * (m[0][j] - centroid.coords[j]);
    CHECK_FALSE(point_in_hull(outside, q));
  }
}

TEST_CASE("farthest member of Q sits on a hull vertex") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 1000; ++t) {
    std::vector<Point> m;
    const int n = 3 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) m.push_back(rand_point(rng, 2, 0, 1, i));
    const QuerySet q(m);
    const Point o = rand_point(rng, 2, -1, 2);
    double far = 0;
    for (const auto& mm : m) far = std::max(far, distance(o, mm));
    const auto& hull = q.hull2d();
    for (const auto& mm : m) {
      if (distance(o, mm) != far) continue;
      bool on_hull = false;
      for (const auto& v : hull)
        if (same_coords(v, mm)) on_hull = true;
      CHECK(on_hull);
    }
  }
}

TEST_CASE("pruning region construction") {
  {
    const Rect r = pruning_region(pt({0, 0}), pt({2, 2}));
    CHECK(r.lo == std::vector<double>{1, 1});
    CHECK(r.hi == std::vector<double>{kInf, kInf});
  }
  {
    const Rect r = pruning_region(pt({2, 2}), pt({0, 0}));
    CHECK(r.lo == std::vector<double>{-kInf, -kInf});
    CHECK(r.hi == std::vector<double>{1, 1});
  }
  {
    const Rect r = pruning_region(pt({0, 0}), pt({2, -2}));
    CHECK(r.lo == std::vector<double>{1, -kInf});
    CHECK(r.hi == std::vector<double>{kInf, -1});
  }
  {
    // equal coordinate widens to the full line
    const Rect r = pruning_region(pt({0, 5}), pt({2, 5}));
    CHECK(r.lo == std::vector<double>{1, -kInf});
    CHECK(r.hi == std::vector<double>{kInf, kInf});
  }
}

TEST_CASE("pruning region soundness") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> off(0.01, 3.0);
  for (int t = 0; t < 1000; ++t) {
    const Point q = rand_point(rng, 3), o = rand_point(rng, 3);
    if (same_coords(q, o)) continue;
    const Rect region = pruning_region(q, o);
    Point p;
    p.coords.resize(3);
    for (int i = 0; i < 3; ++i) {
      if (region.lo[i] != -kInf)
        p.coords[i] = region.lo[i] + off(rng);
      else if (region.hi[i] != kInf)
        p.coords[i] = region.hi[i] - off(rng);
      else
        p.coords[i] = rand_point(rng, 1)[0];
    }
    CHECK(dynamic_dominates(o, q, p));
    CHECK(region_prunes_point(region, p));
  }
}

TEST_CASE("dynamic dominance") {
  CHECK(dynamic_dominates(pt({1, 0}), pt({2, 0}), pt({0, 0})));
  CHECK_FALSE(dynamic_dominates(pt({1, 2}), pt({2, 1}), pt({0, 0})));
  CHECK_FALSE(dynamic_dominates(pt({1, 1}), pt({1, 1}), pt({0, 0})));
}

TEST_CASE("region strict-side rule") {
  const Rect region = pruning_region(pt({0, 0}), pt({2, 2}));  // [1,inf)^2
  CHECK_FALSE(region_prunes_point(region, pt({1, 1})));  // all-boundary point
  CHECK(region_prunes_point(region, pt({1, 1.5})));
  CHECK(region_prunes_point(region, pt({3, 3})));
  CHECK_FALSE(region_prunes_point(region, pt({0.5, 3})));

  CHECK(region_prunes_rect(region, Rect({2, 1}, {3, 2})));
  CHECK_FALSE(region_prunes_rect(region, Rect({1, 1}, {1, 1})));
  CHECK_FALSE(region_prunes_rect(region, Rect({0.5, 1}, {3, 2})));
}

TEST_CASE("rect basics") {
  CHECK(Rect::empty(2).is_empty());
  CHECK_FALSE(Rect({0, 0}, {0, 0}).is_empty());
  const Rect a({0, 0}, {2, 2}), b({1, 1}, {3, 3});
  CHECK(a.intersects(b));
  const Rect i = a.intersect(b);
  CHECK(i.lo == std::vector<double>{1, 1});
  CHECK(i.hi == std::vector<double>{2, 2});
  CHECK(a.intersect(Rect({5, 5}, {6, 6})).is_empty());
}
