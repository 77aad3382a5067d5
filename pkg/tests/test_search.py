import random
from collections import Counter

import pytest

from hmnet import search as search_mod
from hmnet.errors import ParameterError
from hmnet.graph import Graph, from_degree_list, switch_randomize
from hmnet.iff import IffProblem
from hmnet.search import (
    RunRecord,
    SearchConfig,
    draw_mutation_size,
    ga,
    gcr,
    mmhc,
    mutation_size_bound,
    random_loci,
    ring_loci,
    rmhc,
    run_algorithm,
    two_point_crossover,
)

TRIANGLE = IffProblem(Graph(3, [(0, 1), (1, 2), (0, 2)]))


@pytest.fixture(scope="module")
def mid_problem():
    g = from_degree_list([4] * 60, seed=1)
    return IffProblem(switch_randomize(g, seed=1))


def test_mutation_size_bounds():
    assert mutation_size_bound(0.0625, 200) == 12
    assert mutation_size_bound(0.125, 200) == 25
    assert mutation_size_bound(0.0625, 8) == 1


def test_mutation_size_is_uniform():
    rng = random.Random(3)
    draws = Counter(draw_mutation_size(0.0625, 200, rng) for _ in range(24_000))
    assert set(draws) == set(range(1, 13))
    assert all(1700 <= c <= 2300 for c in draws.values())
    assert {draw_mutation_size(0.0625, 8, rng) for _ in range(50)} == {1}


def test_loci_helpers():
    assert ring_loci(10, 2, 9) == [9, 0]
    assert ring_loci(5, 5, 3) == [3, 4, 0, 1, 2]
    loci = random_loci(7, 100, random.Random(0))
    assert len(loci) == 100 and all(0 <= i < 7 for i in loci)


def test_crossover_by_hand():
    a, b = bytearray(8), bytearray(b"\x01" * 8)
    o1, o2 = two_point_crossover(a, b, None, cuts=(2, 5))
    assert "".join(map(str, o1)) == "00111000"
    assert "".join(map(str, o2)) == "11000111"
    assert two_point_crossover(a, b, None, cuts=(3, 3)) == (a, b)
    assert two_point_crossover(a, b, None, cuts=(0, 8)) == (b, a)
    with pytest.raises(ParameterError):
        two_point_crossover(a, bytearray(3), None, cuts=(0, 1))


def test_crossover_cuts_cover_both_ends():
    rng = random.Random(0)
    a, b = bytearray(4), bytearray(b"\x01" * 4)
    seen = {bytes(two_point_crossover(a, b, rng)[0]) for _ in range(2000)}
    # every contiguous block of ones, plus the all-zero clone
    assert len(seen) == 1 + 4 * 5 // 2


def test_gcr_cases():
    assert gcr([bytearray(b"\x01\x00")] * 5) == 1.0
    assert gcr([bytearray(b"\x00\x00"), bytearray(b"\x00\x01")]) == 0.5
    assert gcr([bytearray(b"\x01\x00\x01")]) == 1.0
    with pytest.raises(ParameterError):
        gcr([])


def test_config_validation():
    for bad in (dict(p_m=0), dict(p_x=1.5), dict(population_size=1), dict(budget=0)):
        with pytest.raises(ParameterError):
            SearchConfig(**bad)
    with pytest.raises(ParameterError):
        run_algorithm("sa", TRIANGLE, SearchConfig())


@pytest.mark.parametrize("algo", [rmhc, mmhc, ga])
def test_triangle_always_solved(algo):
    for seed in range(20):
        rec = algo(TRIANGLE, SearchConfig(budget=10_000, seed=seed))
        assert rec.success and rec.best_fitness == 3


@pytest.mark.parametrize("algo", [rmhc, mmhc, ga])
def test_budget_accounting_and_monotone_best(algo, mid_problem):
    rec = algo(mid_problem, SearchConfig(budget=700, seed=2), trace=True)
    assert not rec.success
    assert rec.evaluations_used == 700 == len(rec.history)
    assert all(b >= a for a, b in zip(rec.history, rec.history[1:]))
    assert rec.history[-1] == rec.best_fitness


@pytest.mark.parametrize("algo", [rmhc, mmhc, ga])
def test_budget_of_one_is_initial_evaluation(algo, mid_problem):
    rec = algo(mid_problem, SearchConfig(budget=1, seed=0))
    assert rec.evaluations_used == 1


def test_success_stops_immediately():
    for seed in range(10):
        rec = rmhc(TRIANGLE, SearchConfig(budget=10_000, seed=seed), trace=True)
        assert rec.history.index(3) == len(rec.history) - 1 == rec.evaluations_used - 1


def test_seeded_optimal_population():
    pop = [bytearray(3)] * 4
    rec = ga(TRIANGLE, SearchConfig(population_size=4, seed=0), population=pop)
    assert rec.success and rec.evaluations_used == 1 and rec.end_gcr == 1.0


def test_neutral_mutants_are_accepted():
    # loci 2..5 carry no constraint, so flipping them is always neutral
    p = IffProblem(Graph(6, [(0, 1)]))
    accepted = 0
    for seed in range(20):
        for algo in (rmhc, mmhc):
            rec = algo(p, SearchConfig(p_m=0.5, budget=50, seed=seed))
            accepted += sum(rec.mutation_counts[2:])
    assert accepted > 0
    pop = [bytearray([0, 1, 0, 0, 0, 0]), bytearray([1, 0, 1, 1, 1, 1])]
    rec = ga(p, SearchConfig(p_m=0.5, p_x=0.0, population_size=2, budget=40, seed=1), population=pop)
    assert sum(rec.mutation_counts[2:]) > 0


def test_worse_mutants_rejected(mid_problem):
    # large mutations from a decent genotype are mostly harmful
    for algo in (rmhc, mmhc):
        rec = algo(mid_problem, SearchConfig(p_m=0.5, budget=2000, seed=4), trace=True)
        steps = list(zip(rec.history, rec.history[1:]))
        assert all(b >= a for a, b in steps)
        assert sum(a == b for a, b in steps) > len(steps) // 2


def test_equal_crossover_offspring_not_inserted(monkeypatch):
    # path 0-1-2-3; both parents and the first child have fitness 2
    p = IffProblem(Graph(4, [(0, 1), (1, 2), (2, 3)]))
    a, b = bytearray([0, 0, 0, 1]), bytearray([0, 1, 1, 1])
    child = bytearray([1, 0, 0, 0])
    monkeypatch.setattr(search_mod, "two_point_crossover", lambda x, y, rng: (bytearray(child), bytearray(b)))
    cfg = SearchConfig(p_x=1.0, population_size=2, budget=4, seed=0)
    rec = ga(p, cfg, population=[a, b])
    assert rec.evaluations_used == 4 and not rec.success
    assert rec.end_gcr == 0.5  # unchanged population


def test_fitter_crossover_offspring_inserted(monkeypatch):
    p = IffProblem(Graph(4, [(0, 1), (1, 2), (2, 3)]))
    a, b = bytearray([0, 0, 0, 1]), bytearray([0, 1, 1, 1])
    monkeypatch.setattr(search_mod, "two_point_crossover",
                        lambda x, y, rng: (bytearray([0, 0, 0, 0]), bytearray(y)))
    rec = ga(p, SearchConfig(p_x=1.0, population_size=2, budget=4, seed=0), population=[a, b])
    assert rec.success and rec.evaluations_used == 3


def test_determinism(mid_problem):
    for algo in ("rmhc", "mmhc", "ga"):
        cfg = SearchConfig(budget=3000, seed=11)
        assert run_algorithm(algo, mid_problem, cfg) == run_algorithm(algo, mid_problem, cfg)


def test_record_roundtrip(mid_problem):
    rec = ga(mid_problem, SearchConfig(budget=500, seed=1), trace=True)
    d = rec.to_dict()
    assert "history" not in d
    back = RunRecord.from_dict(d)
    assert back.to_dict() == d
    assert rec.success == (rec.best_fitness == rec.optimum)
