"""
Hill climbing and a GA on random and modular MAX-IFF problems
=============================================================

Each edge of a network is an iff constraint between two bits.  On a
random network a bit-flip hill climber solves the problem easily; once
the network is modular it tends to get stuck with modules disagreeing,
while crossover can recombine them.
"""

import logging

from hmnet import NdlSpec, SearchConfig, generate_instance, run_algorithm

logging.disable(logging.WARNING)

# a reduced size keeps this demo under a minute
inst = generate_instance(NdlSpec("normal", "normal", {"mean": 6.05, "sd": 1.08}), instance_seed=11,
                         n=100, with_metrics=False)

for variant in ("m0", "m8"):
    p = inst.problem(variant)
    for algo in ("rmhc", "ga"):
        wins = 0
        for run in range(5):
            rec = run_algorithm(algo, p, SearchConfig(budget=60_000, seed=run))
            wins += rec.success
        print(f"{variant} {algo:4s}: {wins}/5 runs reached fitness {p.m}")
