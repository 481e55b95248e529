import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from weakchan.linalg import random_density  # noqa: E402

# I(X; X+Z) for equiprobable +-1 letters and sigma = 1, from scipy quadrature
# and a 10^6-node trapezoid (tests/oracles.py); the two agree to 1e-15.
BPSK_MI = 0.485944154133


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_ginibre_states(rng, count, dmax=6, dmin=1):
    out = []
    for _ in range(count):
        d = int(rng.integers(dmin, dmax + 1))
        out.append(random_density(d, rng))
    return out


def random_unitary(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_spec_eigenvalues(rng, d, lo=-10.0, hi=10.0, min_gap=0.1):
    while True:
        x = np.sort(rng.uniform(lo, hi, d))
        if d == 1 or np.min(np.diff(x)) >= min_gap:
            return x


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
