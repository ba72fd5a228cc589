import itertools
import math
import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=15, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def oracle_density(H, masses, weight):
    """Independent reference: sum over all atom assignments, weight(tuple)."""
    total = Fraction(0)
    m = len(masses)
    for phi in itertools.product(range(m), repeat=H.n):
        term = math.prod((Fraction(masses[a]) for a in phi), start=Fraction(1))
        if term == 0:
            continue
        for e in H.edges:
            term *= weight(tuple(phi[v] for v in e))
            if term == 0:
                break
        total += term
    return total


def oracle_kappa(H):
    """Count edge subsets with no degree-one vertex, by size (index 0 unused)."""
    out = [0] * (H.e + 1)
    for mask in range(1, 1 << H.e):
        deg = [0] * H.n
        size = 0
        for i in range(H.e):
            if mask >> i & 1:
                size += 1
                for v in H.edges[i]:
                    deg[v] += 1
        if 1 not in deg:
            out[size] += 1
    return out[1:]


def brute_isomorphic(A, B):
    if (A.r, A.n, A.e) != (B.r, B.n, B.e):
        return False
    target = set(B.edges)
    for perm in itertools.permutations(range(A.n)):
        if all(tuple(sorted(perm[v] for v in e)) in target for e in A.edges):
            return True
    return False


@pytest.fixture
def frac():
    return Fraction


ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        status, title = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}")
