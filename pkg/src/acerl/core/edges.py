"""
Edge-index conventions for undirected graphs without self loops.

Edge ``e`` enumerates the unordered node pair ``(u, u')``, ``u < u'``,
lexicographically and 0-based: ``(0,1), (0,2), ..., (0,v-1), (1,2), ...``.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from cachetools import LRUCache, cached

from ..errors import DimensionMismatchError

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-9


@cached(cache=LRUCache(maxsize=64))
def _triu_pairs(node_count: int) -> tuple[np.ndarray, np.ndarray]:
    rows, cols = np.triu_indices(node_count, k=1)
    rows.setflags(write=False)
    cols.setflags(write=False)
    return rows, cols


@dataclass(frozen=True)
class EdgeIndexMap:
    node_count: int

    def __post_init__(self):
        if int(self.node_count) != self.node_count or self.node_count < 2:
            raise ValueError(f"node_count must be an integer >= 2, got {self.node_count}")

    @classmethod
    def from_edge_count(cls, edge_count: int) -> Optional["EdgeIndexMap"]:
        """Map with ``v(v-1)/2 == edge_count``, or None when ``edge_count`` is not triangular."""
        if edge_count < 1:
            return None
        v = (1 + math.isqrt(1 + 8 * edge_count)) // 2
        if v * (v - 1) // 2 != edge_count:
            return None
        return cls(v)

    @property
    def edge_count(self) -> int:
        return self.node_count * (self.node_count - 1) // 2

    @property
    def pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """Read-only ``(u, u')`` arrays, entry ``e`` giving the endpoints of edge ``e``."""
        return _triu_pairs(self.node_count)

    def index_of(self, u: int, u2: int) -> int:
        v = self.node_count
        if u == u2 or not (0 <= u < v and 0 <= u2 < v):
            raise ValueError(f"({u}, {u2}) is not an edge of a {v}-node graph")
        if u > u2:
            u, u2 = u2, u
        return u * v - u * (u + 1) // 2 + (u2 - u - 1)

    def pair_of(self, e: int) -> tuple[int, int]:
        if not 0 <= e < self.edge_count:
            raise IndexError(f"edge index {e} out of range [0, {self.edge_count})")
        rows, cols = self.pairs
        return int(rows[e]), int(cols[e])


def vectorize_adjacency(adjacency: np.ndarray, edge_map: EdgeIndexMap) -> np.ndarray:
    """
    Edge vector of a symmetric adjacency matrix; the diagonal is ignored.

    :raises DimensionMismatchError: If the matrix is not ``v x v``.
    :raises ValueError: If the matrix is asymmetric beyond 1e-9.
    """
    adjacency = np.asarray(adjacency, dtype=np.float64)
    v = edge_map.node_count
    if adjacency.shape != (v, v):
        raise DimensionMismatchError(
            f"adjacency shape {adjacency.shape} does not match a {v}-node edge map"
        )
    asymmetry = float(np.max(np.abs(adjacency - adjacency.T))) if v else 0.0
    if asymmetry > SYMMETRY_TOL:
        raise ValueError(f"adjacency is not symmetric (max |A - A^T| = {asymmetry:.3g})")

    rows, cols = edge_map.pairs
    return adjacency[rows, cols].copy()


def devectorize_edges(x: np.ndarray, edge_map: EdgeIndexMap) -> np.ndarray:
    """Symmetric ``v x v`` matrix with zero diagonal holding edge vector ``x``."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (edge_map.edge_count,):
        raise DimensionMismatchError(
            f"edge vector of length {x.shape} does not match d={edge_map.edge_count}"
        )
    v = edge_map.node_count
    rows, cols = edge_map.pairs
    out = np.zeros((v, v), dtype=np.float64)
    out[rows, cols] = x
    out[cols, rows] = x
    return out
