import re
from pathlib import Path

import numpy as np
import pytest

from ando_dilation.pairs import METHODS, generate_commuting_pair

DATA = Path(__file__).parent / "data"

CRITERIA = {
    1: "defect identities",
    2: "S construction",
    3: "isometry and commutation",
    4: "dilation identity",
    5: "minimality",
    6: "negative controls",
    7: "single-contraction baseline",
    8: "normed-space layer",
    9: "norm-axiom checker",
    10: "reproducibility",
}

_outcomes: dict[int, list[tuple[str, str]]] = {}


def make_fixture_set(count: int, norm_kind: str = "2", offset: int = 0):
    """Deterministic strict pairs cycling n through 1..8 and every generator method."""
    pairs = []
    for i in range(count):
        r = np.random.default_rng(1000 + offset + i).uniform(0.3, 0.95, size=2)
        pairs.append(
            generate_commuting_pair(
                offset + i,
                1 + i % 8,
                method=METHODS[i % len(METHODS)],
                target_norms=(float(r[0]), float(r[1])),
                norm_kind=norm_kind,
            )
        )
    return pairs


@pytest.fixture(scope="session")
def fixture_pairs():
    return make_fixture_set(100)


@pytest.fixture(scope="session")
def lp_fixture_pairs():
    return make_fixture_set(50, norm_kind="lp", offset=500)


@pytest.fixture(scope="session")
def data_dir():
    return DATA


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes.setdefault(int(m.group(1)), []).append((m.group(2), report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k, name in CRITERIA.items():
        parts = _outcomes.get(k)
        if parts is None:
            continue
        failed = [p for p, o in parts if o != "passed"]
        status = "PASS" if not failed else "FAIL"
        note = f"  (failing: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"criterion {k:2d} {name:28s} {status}{note}")
