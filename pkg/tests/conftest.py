import time

import numpy as np
import pytest

from rebalance.core import Dataset

ACCEPTANCE_LINES = []
SUITE_BUDGET_S = 60.0
_START = time.perf_counter()


def record(criterion, description, passed, detail="", echo=True):
    line = f"[{'PASS' if passed else 'FAIL'}] AC{criterion}: {description}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    if echo:
        print(line)
    return passed


def make_f1():
    """1-D fixture: minority P at 0.0, 1.0; majority N at 0.4, 2.0, 3.0, 4.0."""
    return Dataset([0.0, 1.0, 0.4, 2.0, 3.0, 4.0], ["P", "P", "N", "N", "N", "N"])


@pytest.fixture
def f1():
    return make_f1()


def random_dataset(rng, n_min, n_maj, n_features, sep=1.0, decimals=None):
    """Two overlapping Gaussian blobs, labels 'a' (first) and 'b', rows shuffled."""
    X = np.vstack([
        rng.normal(-sep / 2, 1.0, size=(n_min, n_features)),
        rng.normal(sep / 2, 1.0, size=(n_maj, n_features)),
    ])
    if decimals is not None:
        X = np.round(X, decimals)
    y = np.array(["a"] * n_min + ["b"] * n_maj)
    perm = rng.permutation(len(y))
    return Dataset(X[perm], y[perm])


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - _START
    collected = session.testscollected
    # budget applies to full-suite runs only
    if collected >= 100:
        ok = elapsed < SUITE_BUDGET_S
        record(10, "full test suite runtime < 60 s", ok, f"{elapsed:.1f} s", echo=False)
        if not ok and session.exitstatus == 0:
            session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
