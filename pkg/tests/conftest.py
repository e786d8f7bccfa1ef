import sys

import numpy as np
import pytest
from hypothesis import strategies as st


def random_state(rng, d, real=False):
    """Haar-random pure state on C^d x C^d as a flat vector."""
    v = rng.normal(size=d * d)
    if not real:
        v = v + 1j * rng.normal(size=d * d)
    return v / np.linalg.norm(v)


def random_product(rng, d):
    u = rng.normal(size=d) + 1j * rng.normal(size=d)
    w = rng.normal(size=d) + 1j * rng.normal(size=d)
    v = np.kron(u / np.linalg.norm(u), w / np.linalg.norm(w))
    return v / np.linalg.norm(v)


def random_unitary(rng, d):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(rng, d):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return 0.5 * (z + z.conj().T)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def complex_vectors(n):
    """Hypothesis strategy for non-zero complex vectors of length n, normalised."""
    part = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)
    return (
        st.lists(st.tuples(part, part), min_size=n, max_size=n)
        .map(lambda xs: np.array([a + 1j * b for a, b in xs]))
        .filter(lambda v: np.linalg.norm(v) > 1e-3)
        .map(lambda v: v / np.linalg.norm(v))
    )


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
