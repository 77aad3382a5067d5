"""Simple undirected graphs, configuration-model construction and edge switching."""
from __future__ import annotations

import hashlib
from collections import deque
from pathlib import Path

import numpy as np

from .degrees import DegreeList, validate_degree_list
from .errors import ConstructionError, InfeasibleError, ParameterError

__all__ = [
    "Graph",
    "is_graphical",
    "from_degree_list",
    "default_switch_attempts",
    "switch_randomize",
    "apply_switch",
    "is_connected",
    "write_edge_list",
    "read_edge_list",
]


def _canon(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph on nodes ``0 .. n-1``.

    Edges are stored as canonical ``(u, v)`` pairs with ``u < v`` in
    ascending order, so two graphs with the same edge set compare and
    serialize identically.
    """

    __slots__ = ("n", "edges", "adjacency", "_edge_set")

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise ParameterError("n must be >= 0")
        canon = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ParameterError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            e = _canon(u, v)
            if e in canon:
                raise ParameterError(f"duplicate edge {e}")
            canon.add(e)
        adj = [set() for _ in range(n)]
        for u, v in canon:
            adj[u].add(v)
            adj[v].add(u)
        self.n = int(n)
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(canon))
        self.adjacency: tuple[frozenset, ...] = tuple(frozenset(a) for a in adj)
        self._edge_set = frozenset(canon)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return _canon(u, v) in self._edge_set

    def edge_array(self) -> np.ndarray:
        return np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        if self.edges:
            e = self.edge_array()
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        return a

    def subgraph(self, nodes) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled ``0 .. k-1`` in ascending label order.

        Returns the subgraph and the original labels.
        """
        labels = sorted(set(int(u) for u in nodes))
        index = {u: i for i, u in enumerate(labels)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(labels), edges), labels

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def is_graphical(degrees) -> bool:
    """Erdős–Gallai test for a simple-graph realization."""
    d = sorted((int(x) for x in degrees), reverse=True)
    if any(x < 0 for x in d) or sum(d) % 2:
        return False
    n = len(d)
    prefix = 0
    for k in range(1, n + 1):
        prefix += d[k - 1]
        tail = sum(min(x, k) for x in d[k:])
        if prefix > k * (k - 1) + tail:
            return False
    return True


def _repair(stubs, adj, edges, i, j, rng, tries):
    """Consume stubs ``i``, ``j`` by rewiring an existing edge ``(x, y)``
    into ``(a, x), (b, y)``.  Degrees stay exact.  Returns False on failure."""
    a, b = stubs[i], stubs[j]
    for _ in range(tries):
        k = int(rng.integers(len(edges)))
        x, y = edges[k]
        if rng.random() < 0.5:
            x, y = y, x
        if a in (x, y) or b in (x, y) or x in adj[a] or y in adj[b]:
            continue
        adj[x].discard(y)
        adj[y].discard(x)
        adj[a].add(x)
        adj[x].add(a)
        adj[b].add(y)
        adj[y].add(b)
        edges[k] = (a, x)
        edges.append((b, y))
        for idx in sorted((i, j), reverse=True):
            stubs[idx] = stubs[-1]
            stubs.pop()
        return True
    return False


def _pair_stubs(degrees, rng, max_failures):
    """One attempt at stub matching.  Returns an edge list or None on a dead end."""
    stubs = [u for u, d in enumerate(degrees) for _ in range(d)]
    adj = [set() for _ in degrees]
    edges = []
    failures = 0
    while stubs:
        k = len(stubs)
        i = int(rng.integers(k))
        j = int(rng.integers(k - 1))
        if j >= i:
            j += 1
        a, b = stubs[i], stubs[j]
        if a != b and b not in adj[a]:
            adj[a].add(b)
            adj[b].add(a)
            edges.append((a, b))
            for idx in sorted((i, j), reverse=True):
                stubs[idx] = stubs[-1]
                stubs.pop()
            failures = 0
            continue
        failures += 1
        if failures > min(max_failures, 8 * k + 32):
            # dead end iff no two distinct remaining nodes are non-adjacent
            nodes = sorted(set(stubs))
            if not any(v not in adj[u] for x, u in enumerate(nodes) for v in nodes[x + 1:]):
                if not edges or not _repair(stubs, adj, edges, i, j, rng, 4 * len(edges)):
                    return None
            failures = 0
    return edges


def _pair_hub_first(degrees, rng):
    """Wire the node with most open stubs to stub-weighted random legal partners.

    Rarely dead-ends even for lists with a hub adjacent to most nodes.
    """
    residual = np.asarray(degrees, dtype=np.int64).copy()
    n = residual.size
    adj = [set() for _ in range(n)]
    edges = []
    while residual.any():
        top = np.flatnonzero(residual == residual.max())
        a = int(top[rng.integers(top.size)])
        weights = residual.astype(float)
        weights[a] = 0.0
        if adj[a]:
            weights[list(adj[a])] = 0.0
        total = weights.sum()
        if total <= 0:
            return None
        b = int(rng.choice(n, p=weights / total))
        adj[a].add(b)
        adj[b].add(a)
        edges.append((a, b))
        residual[a] -= 1
        residual[b] -= 1
    return edges


def _havel_hakimi(degrees, rng):
    """Havel-Hakimi with random tie-breaking; never fails on a graphical list."""
    residual = np.asarray(degrees, dtype=np.int64).copy()
    edges = []
    while residual.any():
        noise = rng.random(residual.size)
        order = np.lexsort((noise, -residual))
        a = int(order[0])
        need = int(residual[a])
        partners = order[1:need + 1]
        if need > partners.size or residual[partners].min() <= 0:
            return None
        residual[a] = 0
        residual[partners] -= 1
        edges.extend((a, int(b)) for b in partners)
    return edges


def from_degree_list(dl, seed=None, max_restarts: int = 100, uniform_attempts: int = 2) -> Graph:
    """Build a simple graph whose degree sequence is exactly ``dl``.

    Stubs are paired uniformly at random; pairs that would form a loop or
    a multi-edge are rejected and redrawn.  When the remaining stubs admit
    no legal pair, two of them are attached by rewiring a random existing
    edge; if no such edge is found the construction restarts with fresh
    randomness, at most ``max_restarts`` times.  After ``uniform_attempts``
    failed uniform passes, restarts switch to hub-first pairing, which
    copes with hubs adjacent to most of the graph; the final attempt is a
    randomized Havel-Hakimi construction.
    """
    degrees = list(dl.degrees) if isinstance(dl, DegreeList) else [int(d) for d in dl]
    if isinstance(dl, DegreeList):
        verdict = validate_degree_list(dl)
        if not verdict.ok:
            raise InfeasibleError("; ".join(verdict.violations))
    if not is_graphical(degrees):
        raise InfeasibleError("degree sequence is not graphical")
    rng = np.random.default_rng(seed)
    max_failures = 4 * max(1, sum(degrees))
    for attempt in range(max_restarts + 1):
        if attempt < uniform_attempts:
            edges = _pair_stubs(degrees, rng, max_failures)
        elif attempt < max_restarts:
            edges = _pair_hub_first(degrees, rng)
        else:
            edges = _havel_hakimi(degrees, rng)
        if edges is not None:
            return Graph(len(degrees), [_canon(u, v) for u, v in edges])
    raise ConstructionError(f"no simple realization found after {max_restarts} restarts")


def default_switch_attempts(n: int) -> int:
    """``floor(0.125 * N (N - 1) / 2)``: 2487 for N = 200."""
    return (n * (n - 1)) // 16


def apply_switch(edges: list, adj: list, i: int, j: int, new1, new2) -> None:
    """Replace ``edges[i]``, ``edges[j]`` by ``new1``, ``new2`` in place."""
    for idx in (i, j):
        u, v = edges[idx]
        adj[u].discard(v)
        adj[v].discard(u)
    for idx, (u, v) in ((i, new1), (j, new2)):
        edges[idx] = _canon(u, v)
        adj[u].add(v)
        adj[v].add(u)


def switch_randomize(g: Graph, attempts: int | None = None, seed=None) -> Graph:
    """Degree-preserving randomization by random edge switching.

    Each attempt picks two distinct edges ``(p, q)``, ``(r, s)`` and one of
    the patterns ``(p, s), (q, r)`` or ``(p, r), (q, s)``; the switch is
    skipped if it would create a loop or a multi-edge.
    """
    if attempts is None:
        attempts = default_switch_attempts(g.n)
    rng = np.random.default_rng(seed)
    edges = list(g.edges)
    adj = [set(a) for a in g.adjacency]
    m = len(edges)
    if m < 2:
        return g
    for _ in range(attempts):
        i = int(rng.integers(m))
        j = int(rng.integers(m - 1))
        if j >= i:
            j += 1
        (p, q), (r, s) = edges[i], edges[j]
        if rng.random() < 0.5:
            a, b = (p, s), (q, r)
        else:
            a, b = (p, r), (q, s)
        if a[0] == a[1] or b[0] == b[1] or a[1] in adj[a[0]] or b[1] in adj[b[0]]:
            continue
        if _canon(*a) == _canon(*b):
            continue
        apply_switch(edges, adj, i, j, a, b)
    return Graph(g.n, edges)


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == g.n


def write_edge_list(path, g: Graph) -> None:
    Path(path).write_text(g.to_text(), encoding="utf-8")


def read_edge_list(path) -> Graph:
    lines = [ln.split() for ln in Path(path).read_text(encoding="utf-8").splitlines() if ln.strip()]
    if not lines:
        raise ParameterError(f"{path}: empty edge-list file")
    n, m = int(lines[0][0]), int(lines[0][1])
    edges = [(int(u), int(v)) for u, v in lines[1:]]
    if len(edges) != m:
        raise ParameterError(f"{path}: header says M={m} but found {len(edges)} edges")
    return Graph(n, edges)
