import os

import pytest

from tropglue.checks import corner_example, twisted_example
from tropglue.enumeration import count_nd, generic_config

SEEDS = range(5)


@pytest.fixture(scope="session")
def corner():
    return corner_example()


@pytest.fixture(scope="session")
def twisted():
    return twisted_example()


@pytest.fixture(scope="session")
def plane_runs():
    """{(d, seed): (config, count, curves)} for d <= 3 and five seeds."""
    runs = {}
    for d in (1, 2, 3):
        for s in SEEDS:
            cs = []
            n = count_nd(d, s, curves_out=cs)
            runs[d, s] = (generic_config(3 * d - 1, s), n, cs)
    return runs


def stretch_enabled():
    return os.environ.get("TROPGLUE_STRETCH", "") not in ("", "0")


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "skipped", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" not in nodeid or getattr(rep, "when", "call") not in ("call", "setup"):
                continue
            if outcome == "passed" and rep.when != "call":
                continue
            name = nodeid.split("::")[-1]
            lines.append((name, {"passed": "PASS", "failed": "FAIL", "error": "FAIL"}.get(outcome, "SKIP")))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, tag in sorted(lines):
            terminalreporter.write_line(f"{tag}  {name}")
