"""Network statistics: two-way modularity Q, Q2, clustering spectrum, path and
centrality statistics, and genotype edge spans."""
from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path
from scipy.stats import spearmanr

from .errors import ParameterError, UndefinedMetricError
from .graph import Graph, is_connected
from .topology import DecompositionTopology, average_edge_distance

__all__ = [
    "modularity_q",
    "q_levels",
    "q2",
    "clustering_spectrum",
    "PathStats",
    "path_stats",
    "betweenness",
    "degree_centrality_correlation",
    "edge_span_histogram",
    "degree_ccdf",
    "spectrum_rank_correlation",
    "NetworkMetricsReport",
    "network_metrics",
]


def modularity_q(g: Graph, s) -> float:
    """Newman modularity ``s^T B s / 2m`` of the division ``s`` (entries +-1).

    Evaluated from the edge list without forming ``B``.
    """
    s = np.asarray(s, dtype=np.int64)
    if s.shape != (g.n,):
        raise ParameterError(f"division vector has length {s.size}, graph has {g.n} nodes")
    if not np.all(np.abs(s) == 1):
        raise ParameterError("division vector entries must be +1 or -1")
    m = g.m
    if m == 0:
        raise UndefinedMetricError("Q of an edgeless graph")
    e = g.edge_array()
    k = np.asarray(g.degrees(), dtype=np.int64)
    within = 2 * int(np.sum(s[e[:, 0]] * s[e[:, 1]]))
    ks = int(k @ s)
    return (within - ks * ks / (2 * m)) / (2 * m)


def _split_vector(lo, hi, x):
    s = np.full(hi - lo, -1, dtype=np.int64)
    s[: x - lo] = 1
    return s


def q_levels(g: Graph, t: DecompositionTopology, levels: int = 3) -> list[float | None]:
    """Q of the topology's prescribed divisions for the top ``levels`` levels.

    Level ``l`` contributes ``2 ** (l - 1)`` entries, left to right.  Each
    entry is Q of the module's induced subgraph, with +1 on the lower half
    of the module's split.  An entry is ``None`` when the module does not
    exist, is not split, or has no internal edges.
    """
    if g.n != t.n:
        raise ParameterError(f"graph has {g.n} nodes, topology {t.n}")
    out: list[float | None] = []
    by_lo = {}
    for seg in t.segments:
        by_lo.setdefault(seg.depth, {})[seg.lo] = seg
    frontier = [(0, t.n)]
    for depth in range(levels):
        nxt = []
        for span in frontier:
            seg = None if span is None else by_lo.get(depth, {}).get(span[0])
            if seg is None or seg.split is None:
                out.append(None)
                nxt.extend([None, None])
                continue
            sub, _ = g.subgraph(seg.nodes)
            out.append(modularity_q(sub, _split_vector(seg.lo, seg.hi, seg.split)) if sub.m else None)
            nxt.extend([(seg.lo, seg.split), (seg.split, seg.hi)])
        frontier = nxt
    return out


def q2(aed_random: float, aed_modular: float) -> float:
    """``1 - aed_random / aed_modular``; positive when the second graph is more modular."""
    if not (aed_random > 0 and aed_modular > 0):
        raise ParameterError("aed values must be positive")
    return 1.0 - aed_random / aed_modular


def _local_clustering(g: Graph) -> dict[int, float]:
    cc = {}
    for u, nbrs in enumerate(g.adjacency):
        k = len(nbrs)
        if k < 2:
            continue
        links = sum(len(nbrs & g.adjacency[v]) for v in nbrs) // 2
        cc[u] = 2 * links / (k * (k - 1))
    return cc


def clustering_spectrum(g: Graph) -> dict[int, float]:
    """Mean local clustering coefficient per degree; nodes of degree < 2 are skipped."""
    by_degree: dict[int, list[float]] = {}
    for u, c in _local_clustering(g).items():
        by_degree.setdefault(g.degree(u), []).append(c)
    return {k: float(np.mean(v)) for k, v in sorted(by_degree.items())}


def spectrum_rank_correlation(spectrum: dict[int, float]) -> float:
    """Spearman correlation between degree and C(k)."""
    if len(spectrum) < 2:
        raise UndefinedMetricError("need at least two degree classes")
    rho = spearmanr(list(spectrum), list(spectrum.values())).statistic
    if math.isnan(rho):
        raise UndefinedMetricError("constant clustering spectrum")
    return float(rho)


def _distance_matrix(g: Graph) -> np.ndarray:
    if g.m == 0:
        d = np.full((g.n, g.n), np.inf)
        np.fill_diagonal(d, 0.0)
        return d
    e = g.edge_array()
    a = csr_matrix((np.ones(2 * g.m), (np.r_[e[:, 0], e[:, 1]], np.r_[e[:, 1], e[:, 0]])),
                   shape=(g.n, g.n))
    return shortest_path(a, unweighted=True, directed=False)


@dataclass
class PathStats:
    avg_spl: float
    diameter: int
    hub: dict = field(default_factory=dict)
    largest_component_only: bool = False


def _mean_and_mode(values: np.ndarray):
    if values.size == 0:
        return None
    vals, counts = np.unique(values, return_counts=True)
    return float(values.mean()), int(vals[np.argmax(counts)])


def path_stats(g: Graph, hub_thresholds=()) -> PathStats:
    """Average and maximum shortest path length, plus SPL among hubs.

    For each threshold ``k`` the hub entry is ``(mean, mode)`` over pairs
    of nodes that both have degree >= k, or ``None`` when fewer than two
    such nodes exist.  A disconnected graph is measured on its largest
    component and flagged.
    """
    nodes = np.arange(g.n)
    flag = False
    if not is_connected(g):
        flag = True
        a = g.adjacency_matrix()
        _, labels = connected_components(csr_matrix(a), directed=False)
        big = np.argmax(np.bincount(labels))
        nodes = np.flatnonzero(labels == big)
        g, _ = g.subgraph(nodes)
    dist = _distance_matrix(g)
    iu = np.triu_indices(g.n, k=1)
    pair = dist[iu]
    if pair.size == 0:
        return PathStats(0.0, 0, {k: None for k in hub_thresholds}, flag)
    deg = np.asarray(g.degrees())
    hub = {}
    for k in sorted(hub_thresholds):
        mask = (deg[iu[0]] >= k) & (deg[iu[1]] >= k)
        hub[k] = _mean_and_mode(pair[mask])
    return PathStats(float(pair.mean()), int(pair.max()), hub, flag)


def betweenness(g: Graph) -> np.ndarray:
    """Raw (unnormalized) shortest-path betweenness, Brandes' accumulation.

    Each unordered pair contributes once.
    """
    n = g.n
    cb = np.zeros(n)
    adj = [sorted(a) for a in g.adjacency]
    for s in range(n):
        stack = []
        preds = [[] for _ in range(n)]
        sigma = [0] * n
        sigma[s] = 1
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = [0.0] * n
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                cb[w] += delta[w]
    return cb / 2.0


def degree_centrality_correlation(g: Graph) -> float:
    """Pearson correlation between node degree and betweenness."""
    deg = np.asarray(g.degrees(), dtype=float)
    cb = betweenness(g)
    if deg.std() == 0 or cb.std() == 0:
        raise UndefinedMetricError("degree or centrality has zero variance")
    return float(np.corrcoef(deg, cb)[0, 1])


def edge_span_histogram(g: Graph) -> dict[int, int]:
    """Count of edges by ``|u - v|``, the distance between the two loci on the genotype."""
    return dict(sorted(Counter(v - u for u, v in g.edges).items()))


def degree_ccdf(degrees) -> list[tuple[int, float]]:
    """``(x, Pr(X >= x))`` for each distinct degree ``x``, ascending."""
    d = np.asarray(getattr(degrees, "degrees", degrees))
    if d.size == 0:
        raise ParameterError("empty degree list")
    vals, counts = np.unique(d, return_counts=True)
    tail = np.cumsum(counts[::-1])[::-1]
    return [(int(x), float(c) / d.size) for x, c in zip(vals, tail)]


@dataclass
class NetworkMetricsReport:
    aed: float
    q2: float | None
    q_levels: list
    clustering_spectrum: dict
    avg_spl: float
    diameter: int
    hub_spl: dict
    degree_centrality_corr: float | None
    edge_span_histogram: dict
    connected: bool = True

    def to_dict(self) -> dict:
        d = asdict(self)
        d["clustering_spectrum"] = {str(k): v for k, v in self.clustering_spectrum.items()}
        d["hub_spl"] = {str(k): (None if v is None else list(v)) for k, v in self.hub_spl.items()}
        d["edge_span_histogram"] = {str(k): v for k, v in self.edge_span_histogram.items()}
        return d


DEFAULT_HUB_THRESHOLDS = (3, 6, 9, 12, 15, 20, 30)


def network_metrics(g: Graph, t: DecompositionTopology, aed_baseline: float | None = None,
                    hub_thresholds=DEFAULT_HUB_THRESHOLDS) -> NetworkMetricsReport:
    """All per-network statistics; ``q2`` is filled in when a baseline aed is given."""
    aed = average_edge_distance(g, t)
    ps = path_stats(g, hub_thresholds)
    try:
        corr = degree_centrality_correlation(g)
    except UndefinedMetricError:
        corr = None
    return NetworkMetricsReport(
        aed=aed,
        q2=None if aed_baseline is None else q2(aed_baseline, aed),
        q_levels=q_levels(g, t),
        clustering_spectrum=clustering_spectrum(g),
        avg_spl=ps.avg_spl,
        diameter=ps.diameter,
        hub_spl=ps.hub,
        degree_centrality_corr=corr,
        edge_span_histogram=edge_span_histogram(g),
        connected=not ps.largest_component_only,
    )
