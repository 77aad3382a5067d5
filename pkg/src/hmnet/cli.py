"""Command-line entry point: ``hmnet <subcommand> ...``."""
from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import sys
from pathlib import Path

from . import degrees, experiment, graph, metrics, search, topology
from .errors import HmnetError
from .iff import IffProblem
from .modularize import ModularizeConfig, modularize_detailed


def _gen_degrees(args):
    if args.kind == "powerlaw":
        if args.gamma is None:
            raise SystemExit("--gamma is required for --kind powerlaw")
        dl = degrees.sample_powerlaw_ndl(args.n, args.gamma, args.deg_min, args.seed)
    else:
        dl = degrees.sample_normal_ndl(args.n, args.mean, args.sd, args.deg_min, args.seed)
    degrees.write_ndl(args.out, dl)
    print(json.dumps(degrees.summary_stats(dl.degrees)))


def _gen_net(args):
    dl = degrees.read_ndl(args.ndl)
    seed = experiment.derive_seed(args.seed, "g0")
    g = graph.from_degree_list(dl, seed)
    if not args.no_randomize:
        attempts = args.attempts if args.attempts is not None else graph.default_switch_attempts(g.n)
        g = graph.switch_randomize(g, attempts, experiment.derive_seed(args.seed, "gr"))
    if not graph.is_connected(g):
        logging.warning("generated network is disconnected")
    graph.write_edge_list(args.out, g)


def _modularize(args):
    g = graph.read_edge_list(args.net)
    t = topology.build_topology(g.n, args.ts)
    res = modularize_detailed(g, t, ModularizeConfig(args.pg, args.seed))
    graph.write_edge_list(args.out, res.graph)
    before = topology.average_edge_distance(g, t)
    after = topology.average_edge_distance(res.graph, t)
    side = {
        "aed_before": before,
        "aed_after": after,
        "q2": metrics.q2(before, after) if before > 0 else None,
        "switches_applied": res.switches_applied,
        "iterations": res.iterations,
    }
    Path(str(args.out) + ".json").write_text(json.dumps(side, indent=2) + "\n", encoding="utf-8")
    print(json.dumps(side))


def _metrics(args):
    g = graph.read_edge_list(args.net)
    t = topology.build_topology(g.n, args.ts)
    baseline = None
    if args.baseline:
        baseline = topology.average_edge_distance(graph.read_edge_list(args.baseline), t)
    report = metrics.network_metrics(g, t, aed_baseline=baseline)
    print(json.dumps(report.to_dict(), indent=2))


def _run(args):
    p = IffProblem(graph.read_edge_list(args.net))
    cfg = search.SearchConfig(p_m=args.pm, p_x=args.px, population_size=args.ps,
                              budget=args.budget, seed=args.seed)
    print(json.dumps(search.run_algorithm(args.algo, p, cfg).to_dict()))


def _experiment(args):
    plan_dict = json.loads(Path(args.plan).read_text(encoding="utf-8")) if args.plan else {}
    plan = experiment.ExperimentPlan.from_dict(plan_dict)
    if args.scale is not None:
        plan = plan.scaled(args.scale)
    if args.workers is not None:
        plan = dataclasses.replace(plan, workers=args.workers)
    report = experiment.run_experiment(plan)
    paths = experiment.write_report(report, args.out)
    print(json.dumps({k: str(v) for k, v in paths.items()}))


def _report(args):
    rows = experiment.summarize_runs(args.runs, args.out)
    w = csv.DictWriter(sys.stdout, fieldnames=experiment.CSV_COLUMNS)
    w.writeheader()
    for row in rows:
        w.writerow({k: ("" if row[k] is None else row[k]) for k in experiment.CSV_COLUMNS})


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hmnet", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-degrees", help="sample a node degree list")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--kind", choices=degrees.KINDS, default="normal")
    p.add_argument("--gamma", type=float)
    p.add_argument("--mean", type=float, default=6.05)
    p.add_argument("--sd", type=float, default=1.08)
    p.add_argument("--deg-min", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_gen_degrees)

    p = sub.add_parser("gen-net", help="build a randomized network from a degree list")
    p.add_argument("--ndl", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attempts", type=int)
    p.add_argument("--no-randomize", action="store_true", help="write G_0 without edge switching")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_gen_net)

    p = sub.add_parser("modularize", help="modularize an edge list against the split topology")
    p.add_argument("--net", required=True)
    p.add_argument("--ts", type=int, default=4)
    p.add_argument("--pg", type=float, default=0.8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_modularize)

    p = sub.add_parser("metrics", help="network metrics as JSON")
    p.add_argument("--net", required=True)
    p.add_argument("--ts", type=int, default=4)
    p.add_argument("--baseline")
    p.set_defaults(func=_metrics)

    p = sub.add_parser("run", help="one search run on an edge-list problem")
    p.add_argument("--net", required=True)
    p.add_argument("--algo", choices=sorted(search.ALGORITHMS), required=True)
    p.add_argument("--pm", type=float, default=0.0625)
    p.add_argument("--px", type=float, default=0.25)
    p.add_argument("--ps", type=int, default=100)
    p.add_argument("--budget", type=int, default=250_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_run)

    p = sub.add_parser("experiment", help="run an experiment plan")
    p.add_argument("--plan", help="plan JSON; omitted fields take the paper-scale defaults")
    p.add_argument("--out", default="experiment-out")
    p.add_argument("--scale", type=float, help="shrink N and budget by this factor")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=_experiment)

    p = sub.add_parser("report", help="re-aggregate a runs.jsonl file")
    p.add_argument("--runs", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except HmnetError as exc:
        print(f"hmnet: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
