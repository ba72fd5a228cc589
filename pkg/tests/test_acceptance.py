"""Acceptance gate.

Each test is one criterion. A PASS/FAIL line per criterion is printed in the
terminal summary (see ``pytest_terminal_summary`` in conftest).
"""
import functools
import itertools
import json
import math
import random
from fractions import Fraction as F

import mpmath
import pytest

from hypersido import common as C
from hypersido import density as D
from hypersido import kappa as K
from hypersido import witness as W
from hypersido.hypergraph import (
    Hypergraph,
    levi_graph,
    make_grid,
    make_half_octahedron,
    make_loose_triangle,
    make_single_edge,
    make_tight_cycle,
    make_tight_cycle_minus_edge,
)

from conftest import ACCEPTANCE_RESULTS, oracle_density, oracle_kappa


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                ACCEPTANCE_RESULTS[number] = ("FAIL", title)
                raise
            ACCEPTANCE_RESULTS[number] = ("PASS", title)

        return inner

    return wrap


def poly(terms):
    """Coefficient tuple kappa_1..kappa_E from {degree: coefficient}."""
    top = max(terms)
    return tuple(terms.get(i, 0) for i in range(1, top + 1))


@criterion(1, "census closed forms match brute force")
def test_c01_closed_forms():
    for k in (2, 3, 4):
        assert K.kappa_closed_c3k(k) == K.kappa_poly_bruteforce(make_tight_cycle(3 * k, 3))
        for index in range(3 * k):
            H = make_tight_cycle_minus_edge(3 * k, 3, index)
            assert K.kappa_closed_c3k_minus_e(k) == K.kappa_poly_bruteforce(H)
    for r in (3, 5):
        assert K.kappa_closed_c2r(r) == K.kappa_poly_bruteforce(make_tight_cycle(2 * r, r))


@criterion(2, "C6 and C9-e polynomials and their values at -2/3")
def test_c02_known_polynomials():
    c6 = K.kappa_poly_bruteforce(make_tight_cycle(6, 3))
    c9e = K.kappa_poly_bruteforce(make_tight_cycle_minus_edge(9, 3))
    assert c6.coefficients == poly({4: 3, 5: 6, 6: 1})
    assert c9e.coefficients == poly({6: 1, 7: 4, 8: 1})
    assert tuple(oracle_kappa(make_tight_cycle(6, 3))) == c6.coefficients
    x = F(-2, 3)
    assert K.eval_poly(c6, x) == F(-80, 729) == 3 * x**4 + 6 * x**5 + x**6
    assert K.eval_poly(c9e, x) == F(-704, 6561) == x**6 + 4 * x**7 + x**8


@criterion(3, "probe points give negative values")
def test_c03_probe_points():
    for k in range(3, 9):
        assert K.eval_poly(K.kappa_tight_cycle_dp(3 * k, 3), F(-30, k**3 + k**2)) < 0
    for k in range(4, 9):
        P = K.kappa_tight_cycle_dp(3 * k, 3, [0])
        assert K.eval_poly(P, F(-300, 7 * (k**3 - k))) < 0
    for r in range(3, 16, 2):
        assert K.eval_poly(K.kappa_closed_c2r(r), F(-2, r)) < 0
    for r in range(17, 22, 2):
        assert K.eval_poly(K.kappa_closed_c2r(r), F(-1, r)) < 0


@criterion(4, "scan finds a negative point for every odd r, k >= 2, kr <= 30")
def test_c04_scan():
    rows = W.scan_tight_cycles(30)
    expected = {(r, k) for r in range(3, 31, 2) for k in range(2, 31) if k * r <= 30}
    assert {(row.r, row.k) for row in rows} == expected
    for row in rows:
        assert row.point is not None and -1 < row.point < 0
        P = K.kappa_tight_cycle_dp(row.k * row.r, row.r)
        assert K.eval_poly(P, row.point) == row.value < 0


@criterion(5, "end-to-end certificates re-verify from JSON")
def test_c05_certificates():
    targets = [
        make_tight_cycle(6, 3),
        make_tight_cycle(9, 3),
        make_tight_cycle_minus_edge(9, 3),
        make_tight_cycle(12, 3),
        make_tight_cycle(10, 5),
    ]
    for H in targets:
        cert = W.auto_witness_tight_cycle(H, max_halvings=60)
        assert cert.verdict == "not_sidorenko" and cert.margin > 0
        again = W.verify_certificate(json.loads(json.dumps(cert.to_dict())))
        assert again.margin == cert.margin and again.verdict == "not_sidorenko"


@criterion(6, "linear-girth witness on the loose triangle")
def test_c06_linear_girth():
    H = make_loose_triangle()
    assert H.n == 6
    for c in (F(1, 3), F(1, 6), F(1, 12)):
        f = W.linear_girth_kernel(3, c)
        assert len(f.masses) == 2
        t = oracle_density(H, f.masses, f.weight)  # 2**6 = 64 assignments
        assert t == D.t_density(H, f) == 1 - c**3
        cert = W.certify_non_sidorenko(H, f)
        assert cert.margin == c**3 and cert.verdict == "not_sidorenko"


@criterion(7, "deletion exponent for the loose triangle")
def test_c07_deletion():
    rep = W.deletion_bound(make_loose_triangle(), W.linear_girth_kernel(3, F(1, 3)))
    mpmath.mp.dps = 40
    c_ref = mpmath.log(mpmath.mpf(27) / 26) / mpmath.log(2)
    exp_ref = mpmath.mpf(3) / 2 + c_ref / 2
    assert mpmath.nstr(mpmath.mpf(rep.c_prime), 10) == mpmath.nstr(c_ref, 10)
    assert mpmath.nstr(mpmath.mpf(rep.improved_exponent), 10) == mpmath.nstr(exp_ref, 10)
    assert rep.baseline_exponent == 1.5 < rep.improved_exponent


def _random_kernel(rng, r, m, rng_name="signed_unit"):
    masses = [F(rng.randint(1, 4)) for _ in range(m)]
    total = sum(masses)
    masses = [w / total for w in masses]
    weights = {s: F(rng.randint(-6, 6), 6) for s in itertools.combinations_with_replacement(range(m), r)}
    return D.SymmetricKernel(r, masses, weights, rng_name)


def _random_hypergraph(rng, r, n, e):
    pool = list(itertools.combinations(range(n), r))
    return Hypergraph.from_edges(r, n, rng.sample(pool, min(e, len(pool))))


@criterion(8, "algebraic identity suite over randomized exact fixtures")
def test_c08_identities():
    rng = random.Random(20240601)
    fixtures = 0
    for _ in range(10):
        r = rng.choice([2, 3])
        H = _random_hypergraph(rng, r, rng.randint(r + 1, 5), rng.randint(1, 5))
        f, g = _random_kernel(rng, r, 2), _random_kernel(rng, r, 2)
        assert D.t_density(H, D.tensor_product(f, g)) == D.t_density(H, f) * D.t_density(H, g)
        fixtures += 1
    for _ in range(10):
        r = rng.choice([2, 3])
        H = _random_hypergraph(rng, r, rng.randint(r + 1, 5), rng.randint(1, 5))
        f = _random_kernel(rng, r, 2)
        assert D.t_density(H, D.blow_up(f, rng.randint(2, 3))) == D.t_density(H, f)
        fixtures += 1
    for _ in range(10):
        r = rng.choice([2, 3])
        H = _random_hypergraph(rng, r, rng.randint(r + 1, 6), rng.randint(1, 7))
        f = _random_kernel(rng, r, rng.randint(1, 2))
        rep = C.common_deficit(H, f, F(1, rng.randint(1, 3)))
        assert rep.deficit == 2 * rep.even_sum
        fixtures += 1
    for _ in range(10):
        ml, mr = rng.randint(1, 3), rng.randint(1, 2)
        f = D.BipartiteKernel.create(
            [F(1, ml)] * ml, [F(1, mr)] * mr, [[F(rng.randint(-4, 4), 4) for _ in range(mr)] for _ in range(ml)]
        )
        H = _random_hypergraph(rng, 3, rng.randint(4, 6), rng.randint(1, 4))
        L = levi_graph(H)
        lhs = D.t_density(H, C.levi_transfer(f, 3))
        # independent: sum over assignments of L's vertices, left on vertex atoms, right on edge atoms
        rhs = F(0)
        for xs in itertools.product(range(ml), repeat=H.n):
            for ys in itertools.product(range(mr), repeat=H.e):
                term = F(1, ml**H.n * mr**H.e)
                for j, edge in enumerate(H.edges):
                    for v in edge:
                        term *= f.matrix[xs[v]][ys[j]]
                rhs += term
        assert lhs == rhs == C.levi_density(H, f)
        assert L.n == H.n + H.e
        fixtures += 1
    for _ in range(10):
        r = 3
        H = _random_hypergraph(rng, r, rng.randint(4, 6), rng.randint(1, 5))
        f = C.zero_averaging_lift(_random_kernel(rng, r, 2))
        assert D.is_zero_averaging(f)
        for size in range(1, H.e + 1):
            for S in itertools.combinations(range(H.e), size):
                G = H.subgraph(S)
                if any(d == 1 for d in G.degrees()):
                    assert D.t_density(G, f) == 0
        fixtures += 1
    for _ in range(10):
        r = rng.choice([2, 3])
        ell = rng.randint(r + 1, 7)
        skip = rng.sample(range(ell), rng.randint(0, 2))
        H = make_tight_cycle(ell, r)
        H = H.subgraph([i for i in range(H.e) if i not in skip])
        f = _random_kernel(rng, r, 2)
        values = {D.t_density(H, f, s) for s in ("bruteforce", "variable_elimination", "band_dp")}
        assert values == {oracle_density(H, f.masses, f.weight)}
        fixtures += 1
    assert fixtures >= 50


@criterion(9, "bad-subset count complements the census")
def test_c09_bad_complement():
    for r in (3, 4, 5):
        census = oracle_kappa(make_tight_cycle(2 * r, r))
        for m in range(4, 2 * r + 1):
            assert K.count_bad_subsets(r, m) + census[m - 1] == math.comb(2 * r, m)


@criterion(10, "W-random estimate of a single edge at constant 1/2 (statistical)")
def test_c10_statistical():
    H = make_single_edge(3)
    half = D.SymmetricKernel.constant(3, F(1, 2))
    for seed in (2024, 2025):  # second seed only used after a failure
        est = D.estimate_density(H, half, 100, 50, seed)
        if abs(est.mean - 0.5) <= 5 * est.stderr:
            break
    else:
        pytest.fail(f"estimate {est.mean} +- {est.stderr} outside 5 standard errors twice")


@criterion(11, "structure facts for the half-octahedron and the grid")
def test_c11_structure():
    L = levi_graph(make_half_octahedron())
    assert (L.n, L.e) == (10, 12)
    G3 = make_grid(3)
    P = K.kappa_poly_bruteforce(G3)
    assert P.coefficients == (0, 0, 0, 0, 0, 1)
    assert tuple(oracle_kappa(G3)) == P.coefficients
    cl = C.classify_even_subgraphs(G3)
    assert cl.two_m == 6 and len(cl.candidates) == 1
    assert cl.candidates[0].edges == tuple(range(G3.e)) and cl.candidates[0].two_connected
