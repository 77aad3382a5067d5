"""MAX-IFF test problems: every edge of a constraint graph is an iff constraint.

The fitness of a binary string is the number of edges whose two endpoints
hold equal values.  The all-zeros and all-ones strings are optimal with
fitness ``M``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .graph import Graph

__all__ = ["IffProblem", "Genotype", "fitness", "fitness_delta", "is_optimal"]


class IffProblem:
    """Equal-weight iff constraints over the edges of ``graph``."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.n = graph.n
        self.weights = (1.0,) * graph.m
        self.optimum = graph.m
        self.neighbors = tuple(tuple(sorted(a)) for a in graph.adjacency)
        self.degree = tuple(len(a) for a in self.neighbors)
        e = graph.edge_array()
        self._us = e[:, 0].copy()
        self._vs = e[:, 1].copy()

    @property
    def m(self) -> int:
        return self.optimum

    def full_fitness(self, bits) -> int:
        """Fitness of a bytes-like or array genotype by a pass over all edges."""
        b = np.frombuffer(bits, dtype=np.uint8) if isinstance(bits, (bytes, bytearray)) \
            else np.asarray(bits, dtype=np.uint8)
        return int(np.count_nonzero(b[self._us] == b[self._vs]))

    def __repr__(self):
        return f"IffProblem(n={self.n}, M={self.optimum})"


@dataclass
class Genotype:
    bits: bytearray
    fitness: int | None = field(default=None, compare=False)

    def __post_init__(self):
        self.bits = bytearray(int(b) for b in self.bits)
        if any(b > 1 for b in self.bits):
            raise ParameterError("genotype bits must be 0 or 1")

    @classmethod
    def from_string(cls, text: str) -> "Genotype":
        return cls(bytearray(int(c) for c in text))

    def __len__(self):
        return len(self.bits)

    def __str__(self):
        return "".join(str(b) for b in self.bits)


def _bits(s):
    return s.bits if isinstance(s, Genotype) else bytearray(int(b) for b in s)


def fitness(p: IffProblem, s) -> int:
    """Number of satisfied iff constraints."""
    bits = _bits(s)
    if len(bits) != p.n:
        raise ParameterError(f"genotype length {len(bits)} != problem size {p.n}")
    return p.full_fitness(bits)


def _flip_delta(bits: bytearray, loci, neighbors, degree) -> int:
    """Apply ``loci`` flips to ``bits`` in place and return the fitness change."""
    delta = 0
    get = bits.__getitem__
    for i in loci:
        ones = sum(map(get, neighbors[i]))
        equal = ones if bits[i] else degree[i] - ones
        delta += degree[i] - 2 * equal
        bits[i] ^= 1
    return delta


def fitness_delta(p: IffProblem, s, flips) -> int:
    """``F(s') - F(s)`` where ``s'`` is ``s`` with ``flips`` applied in order.

    Only edges incident to flipped loci are inspected; ``s`` is not modified.
    """
    bits = bytearray(_bits(s))
    if len(bits) != p.n:
        raise ParameterError(f"genotype length {len(bits)} != problem size {p.n}")
    flips = [int(i) for i in flips]
    if any(not 0 <= i < p.n for i in flips):
        raise ParameterError("flip locus out of range")
    return _flip_delta(bits, flips, p.neighbors, p.degree)


def is_optimal(p: IffProblem, f: int) -> bool:
    return f == p.optimum
