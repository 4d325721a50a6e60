import os

import pytest
from hypothesis import HealthCheck, settings

from grcodes.ambient import Kind, make_ambient
from grcodes.galois_ring import make_ring

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def naive_mul(f, g, n, q, wrap):
    """Schoolbook product of integer coefficient lists in Z_q[x]/(x^n - wrap)."""
    out = [0] * n
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            k = i + j
            sign = wrap ** (k // n)
            out[k % n] = (out[k % n] + sign * a * b) % q
    return out


def naive_pow(f, e, n, q, wrap):
    out = [1] + [0] * (n - 1)
    for _ in range(e):
        out = naive_mul(out, f, n, q, wrap)
    return out


@pytest.fixture
def z9():
    return make_ambient(make_ring(3, 2, 1), 1, Kind.NEGACYCLIC)


@pytest.fixture
def z9_27():
    return make_ambient(make_ring(3, 2, 1), 3, Kind.NEGACYCLIC)


@pytest.fixture
def z4_cyc2():
    return make_ambient(make_ring(2, 2, 1), 1, Kind.CYCLIC)


@pytest.fixture
def z4_cyc4():
    return make_ambient(make_ring(2, 2, 1), 2, Kind.CYCLIC)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:  # pragma: no cover
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
