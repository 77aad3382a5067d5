"""Binary decomposition topology over node labels and edge distances against it.

Node labels ``0 .. n-1`` are laid out in a row and recursively split at the
midpoint ``x = lo + (hi - lo) // 2`` into ``[lo, x)`` and ``[x, hi)`` until a
segment is shorter than ``ts``.  Each split is an internal node labelled
``x``.  A node's internal path is the chain of split labels, from the root
down, whose segments contain it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, UndefinedMetricError

__all__ = [
    "Segment",
    "DecompositionTopology",
    "build_topology",
    "edge_distance",
    "max_edge_distance",
    "average_edge_distance",
]


@dataclass(frozen=True)
class Segment:
    lo: int
    hi: int
    split: int | None
    depth: int

    @property
    def nodes(self) -> range:
        return range(self.lo, self.hi)


class DecompositionTopology:
    """Split tree for ``n`` nodes with atomic-size threshold ``ts``.

    Attributes
    ----------
    splits : tuple of int
        Split labels in pre-order (root first, left before right).
    paths : tuple of tuple of int
        ``paths[u]`` is node ``u``'s internal path.
    ed : ndarray, shape (n, n)
        Edge distance of every node pair; ``-1`` on the diagonal.
    """

    def __init__(self, n: int, ts: int):
        if n < 1:
            raise ParameterError(f"n must be >= 1, got {n}")
        if ts < 2:
            raise ParameterError(f"ts must be >= 2, got {ts}")
        self.n = int(n)
        self.ts = int(ts)
        segments = []
        paths = [[] for _ in range(n)]
        stack = [(0, n, 0)]
        while stack:
            lo, hi, depth = stack.pop()
            if hi - lo < ts:
                segments.append(Segment(lo, hi, None, depth))
                continue
            x = lo + (hi - lo) // 2
            segments.append(Segment(lo, hi, x, depth))
            for u in range(lo, hi):
                paths[u].append(x)
            stack.append((x, hi, depth + 1))
            stack.append((lo, x, depth + 1))
        self.segments: tuple[Segment, ...] = tuple(segments)
        self.splits: tuple[int, ...] = tuple(s.split for s in segments if s.split is not None)
        self.paths: tuple[tuple[int, ...], ...] = tuple(tuple(p) for p in paths)
        self.ed = self._edge_distance_matrix()
        self.ed.setflags(write=False)

    def _edge_distance_matrix(self) -> np.ndarray:
        depth = max((len(p) for p in self.paths), default=0)
        if depth == 0:
            ed = np.zeros((self.n, self.n), dtype=np.int64)
        else:
            # pad with per-node sentinels so padding never matches across nodes
            table = np.empty((self.n, depth), dtype=np.int64)
            for u, p in enumerate(self.paths):
                table[u, :] = -(u + 2)
                table[u, :len(p)] = p
            match = np.ones((self.n, self.n), dtype=bool)
            shared = np.zeros((self.n, self.n), dtype=np.int64)
            for d in range(depth):
                match &= table[:, None, d] == table[None, :, d]
                shared += match
            ed = np.maximum(shared - 1, 0)
        np.fill_diagonal(ed, -1)
        return ed

    @property
    def max_edge_distance(self) -> int:
        return max(max((len(p) for p in self.paths), default=0) - 1, 0)

    def segments_at_depth(self, depth: int) -> list[Segment]:
        """Segments at ``depth`` (root = 0), left to right."""
        return sorted((s for s in self.segments if s.depth == depth), key=lambda s: s.lo)

    def __repr__(self):
        return f"DecompositionTopology(n={self.n}, ts={self.ts}, splits={len(self.splits)})"


def build_topology(n: int, ts: int = 4) -> DecompositionTopology:
    return DecompositionTopology(n, ts)


def edge_distance(t: DecompositionTopology, u: int, v: int) -> int:
    """Number of internal edges shared by the internal paths of ``u`` and ``v``.

    Returns ``-1`` for ``u == v``.
    """
    if not (0 <= u < t.n and 0 <= v < t.n):
        raise ParameterError(f"node pair ({u}, {v}) out of range for n={t.n}")
    return int(t.ed[u, v])


def max_edge_distance(t: DecompositionTopology) -> int:
    return t.max_edge_distance


def average_edge_distance(g, t: DecompositionTopology) -> float:
    """Mean edge distance over the edges of ``g`` (all weights 1)."""
    if g.n != t.n:
        raise ParameterError(f"graph has {g.n} nodes, topology {t.n}")
    if not g.edges:
        raise UndefinedMetricError("average edge distance of an edgeless graph")
    e = g.edge_array()
    return float(t.ed[e[:, 0], e[:, 1]].sum()) / len(g.edges)
