"""Hill climbers (RMHC, MMHC) and a steady-state GA on MAX-IFF problems.

All three stop as soon as an optimal genotype is evaluated or the
evaluation budget is spent.  Every generated genotype, including the
initial ones, costs one evaluation.
"""
from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ParameterError
from .iff import Genotype, IffProblem, _flip_delta

__all__ = [
    "SearchConfig",
    "RunRecord",
    "mutation_size_bound",
    "draw_mutation_size",
    "random_loci",
    "ring_loci",
    "two_point_crossover",
    "gcr",
    "rmhc",
    "mmhc",
    "ga",
    "ALGORITHMS",
    "run_algorithm",
]


@dataclass(frozen=True)
class SearchConfig:
    p_m: float = 0.0625
    p_x: float = 0.25
    population_size: int = 100
    budget: int = 250_000
    seed: int | None = None

    def __post_init__(self):
        if not 0 < self.p_m <= 1:
            raise ParameterError(f"p_m must be in (0, 1], got {self.p_m}")
        if not 0 <= self.p_x <= 1:
            raise ParameterError(f"p_x must be in [0, 1], got {self.p_x}")
        if self.population_size < 2:
            raise ParameterError("population_size must be >= 2")
        if self.budget <= 0:
            raise ParameterError("budget must be positive")


@dataclass
class RunRecord:
    algorithm: str
    success: bool
    evaluations_used: int
    best_fitness: int
    optimum: int
    end_gcr: float | None = None
    mutation_counts: list = field(default_factory=list)
    seed: int | None = None
    p_m: float | None = None
    # filled in by the experiment harness
    group: str | None = None
    instance: str | None = None
    variant: str | None = None
    run_index: int | None = None
    history: list | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("history")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunRecord":
        return cls(**{k: v for k, v in d.items() if k in cls.__dataclass_fields__})


def mutation_size_bound(p_m: float, n: int) -> int:
    """Largest mutation size, ``max(1, floor(p_m * n))``."""
    if p_m * n < 0:
        raise ParameterError("p_m * n must be non-negative")
    return max(1, math.floor(p_m * n + 1e-9))


def draw_mutation_size(p_m: float, n: int, rng: random.Random) -> int:
    """Uniform integer on ``[1, max(1, floor(p_m * n))]``."""
    return rng.randint(1, mutation_size_bound(p_m, n))


def random_loci(n: int, z: int, rng: random.Random) -> list[int]:
    """``z`` loci drawn uniformly with replacement."""
    return [rng.randrange(n) for _ in range(z)]


def ring_loci(n: int, z: int, start: int) -> list[int]:
    """``z`` consecutive loci from ``start``, wrapping around the ring."""
    return [(start + t) % n for t in range(z)]


def two_point_crossover(a, b, rng: random.Random, cuts=None):
    """Exchange the segment ``[c1, c2)`` between ``a`` and ``b``.

    Cut points are drawn uniformly on ``[0, N]`` and ordered, so equal
    cuts give clones and a cut at 0 or N gives one-point crossover.
    """
    a = a.bits if isinstance(a, Genotype) else a
    b = b.bits if isinstance(b, Genotype) else b
    if len(a) != len(b):
        raise ParameterError("parents differ in length")
    n = len(a)
    if cuts is None:
        cuts = (rng.randint(0, n), rng.randint(0, n))
    c1, c2 = sorted(cuts)
    o1 = a[:c1] + b[c1:c2] + a[c2:]
    o2 = b[:c1] + a[c1:c2] + b[c2:]
    return o1, o2


def gcr(population) -> float:
    """Fraction of loci at which every individual holds the same value."""
    rows = [p.bits if isinstance(p, Genotype) else p for p in population]
    if not rows:
        raise ParameterError("empty population")
    arr = np.asarray([np.frombuffer(bytes(r), dtype=np.uint8) for r in rows])
    if arr.shape[1] == 0:
        raise ParameterError("zero-length genotypes")
    return float(np.mean(np.all(arr == arr[0], axis=0)))


def _count_changed(counts: list, loci) -> None:
    if len(set(loci)) == len(loci):
        for i in loci:
            counts[i] += 1
        return
    for i, c in Counter(loci).items():
        if c % 2:
            counts[i] += 1


def _random_genotype(n: int, rng: random.Random) -> bytearray:
    return bytearray(rng.getrandbits(1) for _ in range(n))


def _hill_climb(p: IffProblem, cfg: SearchConfig, name: str, macro: bool, trace: bool) -> RunRecord:
    rng = random.Random(cfg.seed)
    n, target = p.n, p.optimum
    nbrs, deg = p.neighbors, p.degree
    zmax = mutation_size_bound(cfg.p_m, n)
    bits = _random_genotype(n, rng)
    f = p.full_fitness(bits)
    evals = 1
    counts = [0] * n
    history = [f] if trace else None
    while f < target and evals < cfg.budget:
        z = rng.randint(1, zmax)
        if macro:
            loci = ring_loci(n, z, rng.randrange(n))
        else:
            loci = [rng.randrange(n) for _ in range(z)]
        delta = _flip_delta(bits, loci, nbrs, deg)
        evals += 1
        if delta >= 0:
            f += delta
            _count_changed(counts, loci)
        else:
            for i in loci:
                bits[i] ^= 1
        if trace:
            history.append(f)
    return RunRecord(name, f == target, evals, f, target, None, counts, cfg.seed, cfg.p_m,
                     history=history)


def rmhc(p: IffProblem, cfg: SearchConfig, trace: bool = False) -> RunRecord:
    """Random-mutation hill climber: flip ``z`` loci drawn with replacement,
    keep the mutant if it is at least as fit."""
    return _hill_climb(p, cfg, "rmhc", macro=False, trace=trace)


def mmhc(p: IffProblem, cfg: SearchConfig, trace: bool = False) -> RunRecord:
    """Macro-mutation hill climber: flip ``z`` consecutive loci on the ring."""
    return _hill_climb(p, cfg, "mmhc", macro=True, trace=trace)


def ga(p: IffProblem, cfg: SearchConfig, trace: bool = False, population=None) -> RunRecord:
    """Steady-state GA with uniform random parent-pair selection.

    With probability ``p_x`` the pair undergoes two-point crossover; each
    offspring takes its own parent's slot only when strictly fitter than
    both parents.  Otherwise each parent is mutated as in RMHC and the
    mutant replaces it when not less fit.

    ``population`` optionally seeds the initial genotypes.  ``trace``
    records the population maximum after every evaluation.
    """
    rng = random.Random(cfg.seed)
    n, target, ps = p.n, p.optimum, cfg.population_size
    nbrs, deg = p.neighbors, p.degree
    zmax = mutation_size_bound(cfg.p_m, n)
    budget = cfg.budget
    counts = [0] * n
    history = [] if trace else None

    if population is None:
        pop = []
        for _ in range(ps):
            pop.append(_random_genotype(n, rng))
    else:
        pop = [bytearray(g.bits if isinstance(g, Genotype) else g) for g in population]
        if len(pop) != ps:
            raise ParameterError("seeded population size differs from population_size")
    fit = []
    evals = 0
    best = -1
    for g in pop:
        if evals >= budget:
            break
        fit.append(p.full_fitness(g))
        evals += 1
        best = max(best, fit[-1])
        if trace:
            history.append(best)
        if best == target:
            break
    done = best == target or evals >= budget

    while not done:
        i = rng.randrange(ps)
        j = rng.randrange(ps - 1)
        if j >= i:
            j += 1
        if rng.random() < cfg.p_x:
            o1, o2 = two_point_crossover(pop[i], pop[j], rng)
            bar = max(fit[i], fit[j])
            for slot, child in ((i, o1), (j, o2)):
                f = p.full_fitness(child)
                evals += 1
                if f > bar:
                    pop[slot], fit[slot] = child, f
                    best = max(best, f)
                if trace:
                    history.append(best)
                if best == target or evals >= budget:
                    done = True
                    break
        else:
            for slot in (i, j):
                bits = pop[slot]
                loci = [rng.randrange(n) for _ in range(rng.randint(1, zmax))]
                delta = _flip_delta(bits, loci, nbrs, deg)
                evals += 1
                if delta >= 0:
                    fit[slot] += delta
                    best = max(best, fit[slot])
                    _count_changed(counts, loci)
                else:
                    for k in loci:
                        bits[k] ^= 1
                if trace:
                    history.append(best)
                if best == target or evals >= budget:
                    done = True
                    break

    return RunRecord("ga", best == target, evals, best, target, gcr(pop), counts, cfg.seed, cfg.p_m,
                     history=history)


ALGORITHMS = {"rmhc": rmhc, "mmhc": mmhc, "ga": ga}


def run_algorithm(name: str, p: IffProblem, cfg: SearchConfig) -> RunRecord:
    try:
        algo = ALGORITHMS[name]
    except KeyError:
        raise ParameterError(f"unknown algorithm {name!r}; choose from {sorted(ALGORITHMS)}") from None
    return algo(p, cfg)
