"""
A scaled-down experiment grid
=============================

Run one normal and one heavy-tailed degree list through the full
pipeline at a third of the usual size, then print the summary table.
The same plan can be written as JSON and passed to ``hmnet experiment``.
"""

import json
import logging
import tempfile

from hmnet import ExperimentPlan, NdlSpec, run_experiment, write_report

logging.disable(logging.WARNING)

plan = ExperimentPlan(
    ndls=(NdlSpec("normal", "normal", {"mean": 6.05, "sd": 1.08}),
          NdlSpec("pl2.6", "powerlaw", {"gamma": 2.6})),
    algorithms=(("rmhc", 0.0625), ("ga", 0.0625)),
    runs_per_instance=3,
).scaled(0.32)
print(json.dumps({k: v for k, v in plan.to_dict().items() if k != "ndls"}))

report = run_experiment(plan)
for row in report.cells:
    mean = "-" if row["mean_evals_success"] is None else f"{row['mean_evals_success']:.0f}"
    gcr = "-" if row["mean_gcr"] is None else f"{row['mean_gcr']:.3f}"
    print(f"{row['group']:7s} {row['variant']} {row['algo']:4s} {row['successes']}/{row['total']}"
          f"  mean evals {mean}  gcr {gcr}")

out = tempfile.mkdtemp(prefix="hmnet-")
print("written:", write_report(report, out))
