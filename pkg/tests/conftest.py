from __future__ import annotations

import os
from itertools import permutations

import pytest

from psca.core import PermArray

SLOW = os.environ.get("PSCA_SLOW") == "1"


def pytest_collection_modifyitems(config, items):
    if SLOW:
        return
    skip = pytest.mark.skip(reason="long-running; set PSCA_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def checkpoint_dir(tmp_path_factory):
    """Shared catalogue checkpoints so repeated levels are built once per run."""
    return tmp_path_factory.mktemp("catalogues")


def naive_counts(x: PermArray, t: int) -> dict[tuple[int, ...], int]:
    """Coverage by direct scan of every sequence against every row."""
    out = {}
    for s in permutations(range(x.v), t):
        n = 0
        for row in x.rows:
            pos = [row.index(a) for a in s]
            if all(a < b for a, b in zip(pos, pos[1:])):
                n += 1
        out[s] = n
    return out


def naive_is_psca(x: PermArray, t: int) -> tuple[bool, int | None]:
    counts = set(naive_counts(x, t).values())
    if len(counts) == 1:
        return True, counts.pop()
    return False, None


# -- acceptance report ---------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}
_OUTCOMES: dict[int, str] = {}


def record(n: int, detail: str) -> None:
    """Attach a one-line summary to acceptance criterion ``n``."""
    ACCEPTANCE[n] = detail


def _criterion(nodeid: str) -> int | None:
    if "test_acceptance.py::test_criterion_" not in nodeid:
        return None
    return int(nodeid.split("test_criterion_")[1][:2])


def pytest_runtest_logreport(report):
    n = _criterion(report.nodeid)
    if n is None or report.when != "call" and not (report.when == "setup" and report.skipped):
        return
    if hasattr(report, "wasxfail") or report.failed:
        outcome = "FAIL"
    elif report.skipped:
        outcome = "SKIP"
    else:
        outcome = "PASS"
    # several tests may share a criterion; any failure wins
    if _OUTCOMES.get(n) != "FAIL":
        _OUTCOMES[n] = outcome


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_OUTCOMES):
        terminalreporter.write_line(f"criterion {n:2d}: {_OUTCOMES[n]}  {ACCEPTANCE.get(n, '')}")
