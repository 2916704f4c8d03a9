"""Parallel enumeration of maximal k-plexes."""

from ._kplex import (
    Graph,
    ParseError,
    count,
    degeneracy_order,
    enumerate,
    enumerate_naive,
    reduce_to_core,
)

__all__ = [
    "Graph",
    "ParseError",
    "count",
    "degeneracy_order",
    "enumerate",
    "enumerate_naive",
    "reduce_to_core",
]
