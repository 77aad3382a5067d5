import logging

import pytest

from hmnet.experiment import NdlSpec, derive_seed, generate_instance
from hmnet.graph import Graph
from hmnet.topology import build_topology

N1_EDGES = [(0, 1), (0, 2), (0, 3), (0, 4), (4, 6), (4, 5), (4, 7)]
N2_EDGES = [(0, 1), (0, 2), (0, 4), (2, 3), (4, 5), (4, 6), (6, 7)]

NORMAL_SPEC = NdlSpec("normal", "normal", {"mean": 6.05, "sd": 1.08})
PL26_SPEC = NdlSpec("pl2.6", "powerlaw", {"gamma": 2.6})

PIPELINE_BASE_SEED = 2009
PIPELINE_SEEDS = 5


@pytest.fixture
def n1():
    return Graph(8, N1_EDGES)


@pytest.fixture
def n2():
    return Graph(8, N2_EDGES)


@pytest.fixture(scope="session")
def t8():
    return build_topology(8, 2)


@pytest.fixture(scope="session")
def t20():
    return build_topology(20, 4)


@pytest.fixture(scope="session")
def t200():
    return build_topology(200, 4)


def _pipelines(spec):
    logging.getLogger("hmnet").setLevel(logging.ERROR)
    out = []
    for k in range(PIPELINE_SEEDS):
        seed = derive_seed(PIPELINE_BASE_SEED, spec.label, k)
        out.append(generate_instance(spec, seed, n=200, instance_id=f"{spec.label}/{k}"))
    return out


@pytest.fixture(scope="session")
def normal_pipelines():
    """Five N=200 normal-ndl instances with metrics (m0 and m8)."""
    return _pipelines(NORMAL_SPEC)


@pytest.fixture(scope="session")
def pl26_pipelines():
    """Five N=200 gamma=2.6 instances with metrics (m0 and m8)."""
    return _pipelines(PL26_SPEC)


# acceptance bookkeeping: one summary line per criterion at the end of the run
_ACCEPTANCE: dict = {}


@pytest.fixture
def acceptance():
    def record(criterion: int, part: str, passed: bool, detail: str = ""):
        _ACCEPTANCE.setdefault(criterion, {})[part] = (bool(passed), detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE):
        parts = dict(_ACCEPTANCE[crit])
        verdict = parts.pop("verdict", None)
        ok = verdict[0] if verdict else all(p for p, _ in parts.values())
        detail = "; ".join(f"{k}={'ok' if p else 'FAIL'}" + (f" ({d})" if d else "")
                           for k, (p, d) in sorted(parts.items()))
        terminalreporter.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}  {detail}")
