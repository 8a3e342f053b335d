"""Inverse spatial queries over an aggregate R-tree.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from ._core import (
    Index,
    QueryReport,
    gen_clustered,
    gen_query_set,
    gen_uniform,
    normalize,
    query_cube_side,
)

__all__ = [
    "Index",
    "QueryReport",
    "gen_clustered",
    "gen_query_set",
    "gen_uniform",
    "normalize",
    "query_cube_side",
]
