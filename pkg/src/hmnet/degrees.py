"""Node degree lists (ndls) sampled from normal and power-law distributions.

A degree list assigns one degree to every node; index ``i`` is the degree
of node ``i``.  Lists keep the order in which the generator produced them.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InfeasibleError, ParameterError

logger = logging.getLogger(__name__)

__all__ = [
    "DegreeList",
    "Verdict",
    "powerlaw_transform",
    "sample_powerlaw_ndl",
    "sample_normal_ndl",
    "enforce_even_sum",
    "validate_degree_list",
    "write_ndl",
    "read_ndl",
    "summary_stats",
]

KINDS = ("normal", "powerlaw")


@dataclass(frozen=True)
class DegreeList:
    degrees: tuple[int, ...]
    kind: str
    params: dict = field(default_factory=dict)
    deg_min: int = 1
    seed: int | None = None

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def m(self) -> int:
        """Number of edges a realization of this list has."""
        return sum(self.degrees) // 2

    def as_array(self) -> np.ndarray:
        return np.asarray(self.degrees, dtype=np.int64)


@dataclass
class Verdict:
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _round_half_up(x):
    return np.floor(np.asarray(x, dtype=float) + 0.5).astype(np.int64)


def powerlaw_transform(r, gamma: float, deg_min: float):
    """Continuous power-law inverse CDF, ``deg_min * (1 - r) ** (-1 / (gamma - 1))``.

    ``r`` is uniform on [0, 1).  Works elementwise on arrays.
    """
    r = np.asarray(r, dtype=float)
    return deg_min * (1.0 - r) ** (-1.0 / (gamma - 1.0))


def _check_common(n, deg_min):
    if n < 2:
        raise ParameterError(f"n must be >= 2, got {n}")
    if deg_min < 1:
        raise ParameterError(f"deg_min must be >= 1, got {deg_min}")
    if deg_min > n - 1:
        raise ParameterError(f"deg_min={deg_min} cannot be realized on {n} nodes")


def sample_powerlaw_ndl(n: int, gamma: float, deg_min: int = 3, seed=None) -> DegreeList:
    """Sample a degree list whose values follow a continuous power law.

    Each raw value is ``powerlaw_transform(r, gamma, deg_min)`` rounded to
    the nearest integer; values above ``n - 1`` are redrawn.  Sum parity is
    repaired with :func:`enforce_even_sum`.
    """
    _check_common(n, deg_min)
    if not gamma > 1:
        raise ParameterError(f"gamma must be > 1, got {gamma}")
    rng = np.random.default_rng(seed)
    out = np.empty(n, dtype=np.int64)
    todo = np.arange(n)
    while todo.size:
        vals = _round_half_up(powerlaw_transform(rng.random(todo.size), gamma, deg_min))
        good = vals <= n - 1
        out[todo[good]] = vals[good]
        todo = todo[~good]
    degrees = enforce_even_sum(out, deg_min, n, rng)
    return DegreeList(tuple(int(d) for d in degrees), "powerlaw",
                      {"gamma": float(gamma)}, int(deg_min), seed)


def sample_normal_ndl(n: int, mean: float = 6.05, sd: float = 1.08, deg_min: int = 3,
                      seed=None) -> DegreeList:
    """Sample a degree list from a rounded normal distribution.

    Values are rounded to the nearest integer, clamped below at
    ``deg_min`` and redrawn when above ``n - 1``.
    """
    _check_common(n, deg_min)
    if not sd > 0:
        raise ParameterError(f"sd must be > 0, got {sd}")
    # chance that one draw rounds to at most n - 1; redrawing must terminate
    accept = 0.5 * (1.0 + math.erf((n - 0.5 - mean) / (sd * math.sqrt(2.0))))
    if accept < 1e-6:
        raise ParameterError(f"mean={mean}, sd={sd} almost never fits under n-1={n - 1}")
    rng = np.random.default_rng(seed)
    out = np.empty(n, dtype=np.int64)
    todo = np.arange(n)
    while todo.size:
        vals = np.maximum(_round_half_up(rng.normal(mean, sd, todo.size)), deg_min)
        good = vals <= n - 1
        out[todo[good]] = vals[good]
        todo = todo[~good]
    degrees = enforce_even_sum(out, deg_min, n, rng)
    return DegreeList(tuple(int(d) for d in degrees), "normal",
                      {"mean": float(mean), "sd": float(sd)}, int(deg_min), seed)


def enforce_even_sum(degrees, deg_min: int, n: int, rng=None) -> list[int]:
    """Return ``degrees`` with an even sum.

    An odd-sum list gets one uniformly chosen element below ``n - 1``
    incremented by one.  Even-sum input is returned unchanged.
    """
    degrees = [int(d) for d in degrees]
    if any(d < deg_min or d > n - 1 for d in degrees):
        raise ParameterError("degrees must lie in [deg_min, n - 1]")
    if sum(degrees) % 2 == 0:
        return degrees
    room = [i for i, d in enumerate(degrees) if d < n - 1]
    if not room:
        raise InfeasibleError("odd degree sum and every node already at n - 1")
    rng = np.random.default_rng(rng)
    degrees[room[int(rng.integers(len(room)))]] += 1
    return degrees


def validate_degree_list(dl: DegreeList) -> Verdict:
    """Check the well-formedness conditions of a degree list.

    Violations: odd sum, non-positive or non-integer entries, entries
    below ``deg_min``, entries above ``N - 1``, empty list.  A maximum
    degree above ``N / 4`` is only a warning.
    """
    v = Verdict()
    degrees = list(dl.degrees)
    n = len(degrees)
    if n == 0:
        v.violations.append("empty degree list")
        return v
    if any(not isinstance(d, (int, np.integer)) or isinstance(d, bool) for d in degrees):
        v.violations.append("non-integer degree")
        return v
    if sum(degrees) % 2:
        v.violations.append(f"odd degree sum {sum(degrees)}")
    if any(d < 1 for d in degrees):
        v.violations.append("non-positive degree")
    low = [i for i, d in enumerate(degrees) if d < dl.deg_min]
    if low:
        v.violations.append(f"{len(low)} degree(s) below deg_min={dl.deg_min}, first at node {low[0]}")
    high = [i for i, d in enumerate(degrees) if d > n - 1]
    if high:
        v.violations.append(f"{len(high)} degree(s) above N-1={n - 1}, first at node {high[0]}")
    if max(degrees) > n / 4:
        msg = f"max degree {max(degrees)} is not much smaller than N={n}"
        v.warnings.append(msg)
        logger.warning(msg)
    return v


def _format_params(dl: DegreeList) -> str:
    parts = [f"{k}:{v!r}" for k, v in dl.params.items()]
    parts.append(f"deg_min:{dl.deg_min}")
    return ",".join(parts)


def write_ndl(path, dl: DegreeList) -> None:
    """Write a degree list: one header line, then one degree per line."""
    header = f"# ndl n={dl.n} kind={dl.kind} param={_format_params(dl)} seed={dl.seed}"
    body = "\n".join(str(d) for d in dl.degrees)
    Path(path).write_text(header + "\n" + body + "\n", encoding="utf-8")


def read_ndl(path) -> DegreeList:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith("# ndl"):
        raise ParameterError(f"{path}: missing '# ndl' header")
    fields = dict(tok.split("=", 1) for tok in lines[0][len("# ndl"):].split())
    params = {}
    deg_min = 1
    for item in filter(None, fields.get("param", "").split(",")):
        key, val = item.split(":", 1)
        if key == "deg_min":
            deg_min = int(val)
        else:
            params[key] = float(val)
    seed = fields.get("seed", "None")
    seed = None if seed == "None" else int(seed)
    degrees = tuple(int(s) for s in lines[1:] if s.strip())
    if "n" in fields and int(fields["n"]) != len(degrees):
        raise ParameterError(f"{path}: header says n={fields['n']} but found {len(degrees)} degrees")
    return DegreeList(degrees, fields.get("kind", "normal"), params, deg_min, seed)


def summary_stats(degrees) -> dict:
    """min / max / mean / sample std / mode / median / M, as in a degree-list table."""
    d = np.asarray(degrees)
    vals, counts = np.unique(d, return_counts=True)
    return {
        "min": int(d.min()),
        "max": int(d.max()),
        "mean": float(d.mean()),
        "std": float(d.std(ddof=1)) if d.size > 1 else math.nan,
        "mode": int(vals[np.argmax(counts)]),
        "median": float(np.median(d)),
        "M": int(d.sum() // 2),
    }
