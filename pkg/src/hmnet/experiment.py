"""End-to-end pipeline and experiment orchestration.

ndl -> G_0 (stub matching) -> G_r (random switching) -> G_m (modularized),
then every algorithm/mutation-rate cell is run on the m0 (G_r) and m8 (G_m)
problem of every instance.  All randomness is derived from one base seed.
"""
from __future__ import annotations

import csv
import hashlib
import json
import logging
import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from .degrees import DegreeList, sample_normal_ndl, sample_powerlaw_ndl
from .errors import ParameterError, UndefinedMetricError
from .graph import Graph, default_switch_attempts, from_degree_list, is_connected, switch_randomize
from .iff import IffProblem
from .metrics import NetworkMetricsReport, network_metrics
from .modularize import ModularizeConfig, modularize_detailed
from .search import RunRecord, SearchConfig, run_algorithm
from .topology import average_edge_distance, build_topology

logger = logging.getLogger(__name__)

__all__ = [
    "derive_seed",
    "NdlSpec",
    "ExperimentPlan",
    "paper_plan",
    "Instance",
    "sample_ndl",
    "generate_instance",
    "confidence_interval_95",
    "aggregate",
    "ExperimentReport",
    "run_experiment",
    "write_report",
    "read_runs",
    "CSV_COLUMNS",
]

VARIANTS = ("m0", "m8")
CSV_COLUMNS = ["group", "variant", "algo", "pm", "successes", "total",
               "mean_evals_success", "ci_low", "ci_high", "mean_gcr"]


def derive_seed(*parts) -> int:
    """Stable 64-bit seed from any sequence of printable parts."""
    digest = hashlib.blake2b(repr(tuple(parts)).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


@dataclass(frozen=True)
class NdlSpec:
    """One degree list and the number of networks built from it."""

    label: str
    kind: str
    params: dict
    group: str | None = None
    deg_min: int = 3
    instances: int = 2

    def __post_init__(self):
        if self.kind not in ("normal", "powerlaw"):
            raise ParameterError(f"unknown ndl kind {self.kind!r}")
        if self.instances < 1:
            raise ParameterError("instances must be >= 1")

    @property
    def group_key(self) -> str:
        return self.group or self.label


@dataclass(frozen=True)
class ExperimentPlan:
    ndls: tuple
    n: int = 200
    ts: int = 4
    p_g: float = 0.8
    randomization_attempts: int | None = None
    algorithms: tuple = (("rmhc", 0.0625), ("mmhc", 0.0625), ("ga", 0.0625),
                         ("rmhc", 0.125), ("mmhc", 0.125), ("ga", 0.125))
    variants: tuple = VARIANTS
    p_x: float = 0.25
    population_size: int = 100
    runs_per_instance: int = 10
    budget: int = 250_000
    base_seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.runs_per_instance < 1:
            raise ParameterError("runs_per_instance must be >= 1")
        if not self.ndls:
            raise ParameterError("plan has no ndl specs")
        for v in self.variants:
            if v not in VARIANTS:
                raise ParameterError(f"unknown variant {v!r}")

    @property
    def attempts(self) -> int:
        if self.randomization_attempts is None:
            return default_switch_attempts(self.n)
        return self.randomization_attempts

    def scaled(self, scale: float) -> "ExperimentPlan":
        """Shrink node count and budget by ``scale``."""
        if not scale > 0:
            raise ParameterError("scale must be positive")
        return replace(self, n=max(2, round(self.n * scale)),
                       budget=max(1, round(self.budget * scale)),
                       randomization_attempts=None)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ndls"] = [asdict(s) for s in self.ndls]
        d["algorithms"] = [list(a) for a in self.algorithms]
        d["variants"] = list(self.variants)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentPlan":
        d = dict(d)
        if "ndls" in d:
            d["ndls"] = tuple(NdlSpec(**s) for s in d["ndls"])
        else:
            d["ndls"] = paper_plan().ndls
        if "algorithms" in d:
            d["algorithms"] = tuple((str(a), float(pm)) for a, pm in d["algorithms"])
        if "variants" in d:
            d["variants"] = tuple(d["variants"])
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ParameterError(f"unknown plan fields: {sorted(unknown)}")
        return cls(**d)


def paper_plan(**overrides) -> ExperimentPlan:
    """The full grid: ndls 1, 2, 9..14, two networks each, ten runs per network."""
    ndls = (
        NdlSpec("1", "normal", {"mean": 6.05, "sd": 1.08}, "1 + 2"),
        NdlSpec("2", "normal", {"mean": 6.05, "sd": 1.08}, "1 + 2"),
        NdlSpec("9", "powerlaw", {"gamma": 4.0}, "9 + 10"),
        NdlSpec("10", "powerlaw", {"gamma": 4.0}, "9 + 10"),
        NdlSpec("11", "powerlaw", {"gamma": 3.0}, "11 + 12"),
        NdlSpec("12", "powerlaw", {"gamma": 3.0}, "11 + 12"),
        NdlSpec("13", "powerlaw", {"gamma": 2.6}, "13 + 14"),
        NdlSpec("14", "powerlaw", {"gamma": 2.6}, "13 + 14"),
    )
    return ExperimentPlan(ndls=ndls, **overrides)


def sample_ndl(spec: NdlSpec, n: int, seed) -> DegreeList:
    if spec.kind == "normal":
        return sample_normal_ndl(n, spec.params.get("mean", 6.05), spec.params.get("sd", 1.08),
                                 spec.deg_min, seed)
    return sample_powerlaw_ndl(n, spec.params["gamma"], spec.deg_min, seed)


@dataclass
class Instance:
    instance_id: str
    group: str
    ndl: DegreeList
    g_r: Graph
    g_m: Graph
    metrics: dict
    metadata: dict

    def graph(self, variant: str) -> Graph:
        return self.g_r if variant == "m0" else self.g_m

    def problem(self, variant: str) -> IffProblem:
        return IffProblem(self.graph(variant))


def generate_instance(spec: NdlSpec, instance_seed: int, *, n: int = 200, ts: int = 4,
                      p_g: float = 0.8, attempts: int | None = None, ndl_seed=None,
                      instance_id: str | None = None, with_metrics: bool = True) -> Instance:
    """Build the m0 and m8 networks of one instance.

    ``ndl_seed`` fixes the degree list (shared by all instances of an ndl);
    it defaults to a seed derived from ``instance_seed``.
    """
    if ndl_seed is None:
        ndl_seed = derive_seed(instance_seed, "ndl")
    if attempts is None:
        attempts = default_switch_attempts(n)
    dl = sample_ndl(spec, n, ndl_seed)
    seeds = {
        "ndl": ndl_seed,
        "instance": instance_seed,
        "g0": derive_seed(instance_seed, "g0"),
        "gr": derive_seed(instance_seed, "gr"),
        "gm": derive_seed(instance_seed, "gm"),
    }
    g0 = from_degree_list(dl, seeds["g0"])
    g_r = switch_randomize(g0, attempts, seeds["gr"])
    t = build_topology(n, ts)
    mod = modularize_detailed(g_r, t, ModularizeConfig(p_g, seeds["gm"]))
    g_m = mod.graph
    instance_id = instance_id or f"{spec.label}/{instance_seed}"
    for name, g in (("m0", g_r), ("m8", g_m)):
        if not is_connected(g):
            logger.warning("instance %s: %s network is disconnected", instance_id, name)
    aed_r = average_edge_distance(g_r, t)
    metrics = {}
    if with_metrics:
        metrics = {
            "m0": network_metrics(g_r, t, aed_baseline=aed_r),
            "m8": network_metrics(g_m, t, aed_baseline=aed_r),
        }
    metadata = {
        "instance_id": instance_id,
        "ndl": spec.label,
        "group": spec.group_key,
        "kind": spec.kind,
        "params": dict(spec.params),
        "deg_min": spec.deg_min,
        "n": n,
        "ts": ts,
        "p_g": p_g,
        "randomization_attempts": attempts,
        "seeds": seeds,
        "M": g_r.m,
        "modularize_iterations": mod.iterations,
        "switches_applied": mod.switches_applied,
        "digest_m0": g_r.digest(),
        "digest_m8": g_m.digest(),
    }
    return Instance(instance_id, spec.group_key, dl, g_r, g_m, metrics, metadata)


def confidence_interval_95(samples) -> tuple[float, float]:
    """Normal-approximation interval ``mean +- 1.96 * sd / sqrt(n)``, sample sd."""
    xs = [float(x) for x in samples]
    if len(xs) < 2:
        raise UndefinedMetricError("a confidence interval needs at least two samples")
    mean = statistics.fmean(xs)
    half = 1.96 * statistics.stdev(xs) / math.sqrt(len(xs))
    return mean - half, mean + half


def _cell_key(r: RunRecord):
    return (r.group, r.variant, r.algorithm, r.p_m)


def aggregate(records, by: str = "group") -> list[dict]:
    """Summary rows per (group or instance, variant, algorithm, p_m)."""
    cells: dict = {}
    for r in records:
        name = r.group if by == "group" else r.instance
        cells.setdefault((name, r.variant, r.algorithm, r.p_m), []).append(r)
    rows = []
    for (name, variant, algo, pm), rs in sorted(cells.items(), key=lambda kv: tuple(map(str, kv[0]))):
        evals = [r.evaluations_used for r in rs if r.success]
        gcrs = [r.end_gcr for r in rs if r.end_gcr is not None]
        try:
            lo, hi = confidence_interval_95(evals)
        except UndefinedMetricError:
            lo = hi = None
        rows.append({
            "group": name,
            "variant": variant,
            "algo": algo,
            "pm": pm,
            "successes": len(evals),
            "total": len(rs),
            "mean_evals_success": statistics.fmean(evals) if evals else None,
            "ci_low": lo,
            "ci_high": hi,
            "mean_gcr": statistics.fmean(gcrs) if gcrs else None,
        })
    return rows


@dataclass
class ExperimentReport:
    plan: ExperimentPlan
    cells: list
    per_instance: list
    instances: dict
    records: list = field(repr=False, default_factory=list)

    def cell(self, group, variant, algo, pm) -> dict:
        for row in self.cells:
            if (row["group"], row["variant"], row["algo"], row["pm"]) == (group, variant, algo, pm):
                return row
        raise KeyError((group, variant, algo, pm))

    def to_dict(self) -> dict:
        return {
            "plan": self.plan.to_dict(),
            "ci_method": "normal approximation: mean +- 1.96 * sample_sd / sqrt(count), successful runs only",
            "cells": self.cells,
            "per_instance": self.per_instance,
            "instances": self.instances,
        }


def _run_task(task):
    graph, algo, cfg, labels = task
    rec = run_algorithm(algo, IffProblem(graph), cfg)
    for k, v in labels.items():
        setattr(rec, k, v)
    return rec


def _instance_summary(inst: Instance) -> dict:
    out = dict(inst.metadata)
    out["metrics"] = {k: (v.to_dict() if isinstance(v, NetworkMetricsReport) else v)
                      for k, v in inst.metrics.items()}
    return out


def build_instances(plan: ExperimentPlan, with_metrics: bool = True) -> list[Instance]:
    instances = []
    for spec in plan.ndls:
        ndl_seed = derive_seed(plan.base_seed, "ndl", spec.label)
        for k in range(spec.instances):
            iid = f"{spec.label}/{k}"
            inst = generate_instance(spec, derive_seed(plan.base_seed, "instance", iid), n=plan.n,
                                     ts=plan.ts, p_g=plan.p_g, attempts=plan.attempts,
                                     ndl_seed=ndl_seed, instance_id=iid, with_metrics=with_metrics)
            instances.append(inst)
    return instances


def run_experiment(plan: ExperimentPlan, with_metrics: bool = True) -> ExperimentReport:
    """Run every instance x variant x (algorithm, p_m) x run cell of ``plan``."""
    instances = build_instances(plan, with_metrics)
    tasks = []
    for inst in instances:
        for variant in plan.variants:
            graph = inst.graph(variant)
            for algo, pm in plan.algorithms:
                for run in range(plan.runs_per_instance):
                    seed = derive_seed(plan.base_seed, f"{inst.instance_id}/{variant}", f"{algo}@{pm}", run)
                    cfg = SearchConfig(p_m=pm, p_x=plan.p_x, population_size=plan.population_size,
                                       budget=plan.budget, seed=seed)
                    labels = {"group": inst.group, "instance": inst.instance_id,
                              "variant": variant, "run_index": run}
                    tasks.append((graph, algo, cfg, labels))
    logger.info("running %d searches on %d instances", len(tasks), len(instances))
    if plan.workers > 1:
        with ProcessPoolExecutor(plan.workers) as pool:
            records = list(pool.map(_run_task, tasks, chunksize=4))
    else:
        records = [_run_task(t) for t in tasks]
    records.sort(key=lambda r: (r.group, r.instance, r.variant, r.algorithm, r.p_m, r.run_index))
    return ExperimentReport(
        plan=plan,
        cells=aggregate(records, "group"),
        per_instance=aggregate(records, "instance"),
        instances={inst.instance_id: _instance_summary(inst) for inst in instances},
        records=records,
    )


def _write_csv(path: Path, rows) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        w.writeheader()
        for row in rows:
            w.writerow({k: ("" if row[k] is None else row[k]) for k in CSV_COLUMNS})


def write_report(report: ExperimentReport, out_dir) -> dict:
    """Write ``report.json``, ``runs.jsonl`` and ``summary.csv`` into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {"report": out / "report.json", "runs": out / "runs.jsonl", "summary": out / "summary.csv"}
    paths["report"].write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n",
                               encoding="utf-8")
    with paths["runs"].open("w", encoding="utf-8") as fh:
        for r in report.records:
            fh.write(json.dumps(r.to_dict(), sort_keys=True) + "\n")
    _write_csv(paths["summary"], report.cells)
    return paths


def read_runs(path) -> list[RunRecord]:
    with open(path, encoding="utf-8") as fh:
        return [RunRecord.from_dict(json.loads(line)) for line in fh if line.strip()]


def summarize_runs(runs_path, out_dir=None) -> list[dict]:
    """Recompute the group summary from a runs file; optionally write CSV/JSON."""
    records = read_runs(runs_path)
    rows = aggregate(records, "group")
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        _write_csv(out / "summary.csv", rows)
        (out / "summary.json").write_text(json.dumps(rows, indent=2) + "\n", encoding="utf-8")
    return rows
