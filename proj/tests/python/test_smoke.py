"""Smoke tests for the pyiq extension."""

import math

import pytest

pyiq = pytest.importorskip("pyiq")


def test_generators_are_deterministic():
    a = pyiq.gen_uniform(50, 2, seed=7)
    b = pyiq.gen_uniform(50, 2, seed=7)
    assert a == b
    assert len(a) == 50
    assert all(0.0 <= c <= 1.0 for row in a for c in row)

    c = pyiq.gen_clustered(100, 3, seed=1)
    assert len(c) == 100 and len(c[0]) == 3


def test_normalize_unit_box():
    pts = [[2.0, 0.0], [4.0, 10.0], [3.0, 5.0]]
    out = pyiq.normalize(pts)
    assert out[0] == [0.0, 0.0]
    assert out[1] == [1.0, 1.0]


def test_query_cube_side():
    assert math.isclose(pyiq.query_cube_side(0.0004, 3), 0.073, abs_tol=1e-3)


def test_index_and_queries_match_brute_force():
    pts = pyiq.gen_uniform(400, 2, seed=3)
    ix = pyiq.Index(pts, page_size=512)
    assert ix.size == 400
    assert ix.dim == 2
    assert ix.fanout >= 4

    qs = pyiq.gen_query_set(pts, 3, 0.05, seed=11)

    for kind, kwargs in [
        ("ieps", {"eps": 0.15}),
        ("iknn", {"k": 8}),
        ("idsq", {}),
    ]:
        expected = ix.brute(kind, qs, **kwargs)
        for algo in ("mqf", "sqf", "naive"):
            rep = ix.query(kind, qs, algo=algo, **kwargs)
            assert rep.results == expected, (kind, algo)
            assert rep.node_reads >= 0
            assert rep.wall_ms >= 0.0


def test_fast_validation_reports_empty():
    pts = pyiq.gen_uniform(200, 2, seed=9)
    ix = pyiq.Index(pts)
    rep = ix.query("ieps", [[0.0, 0.0], [1.0, 1.0]], eps=0.01)
    assert rep.validated_empty
    assert rep.results == []
    assert rep.node_reads == 0


def test_demo_line_example():
    rows = [[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0], [10.0, 0.0]]
    ix = pyiq.Index(rows)
    rep = ix.query("iknn", [[1.0, 0.0], [2.0, 0.0]], k=2)
    assert rep.results == [0, 1, 2, 3]
