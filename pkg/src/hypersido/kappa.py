"""Census polynomials P_H(x) = sum_m kappa_m(H) x^m.

kappa_m(H) is the number of m-edge subsets of E(H) such that no vertex of H
has degree exactly one in the chosen subset (degree zero is fine).  Three
independent routes are provided: subset enumeration, closed forms for the
tight-cycle families, and a cyclic transfer-matrix DP for edge subsets of a
tight cycle.  Everything here is exact integer / rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import InvalidInput, ResourceLimit
from .rational import to_fraction
from .hypergraph import Hypergraph

BRUTEFORCE_MAX_EDGES = 34
DP_MAX_WORK = 2 * 10**9  # ell^2 r^4 steps: about a minute at the limit


@dataclass(frozen=True)
class KappaPolynomial:
    """Coefficients kappa_1..kappa_E; ``coefficients[i]`` is kappa_{i+1}."""

    coefficients: tuple[int, ...]

    @classmethod
    def from_full(cls, full: Sequence[int]) -> "KappaPolynomial":
        """From a list indexed by edge count including the m = 0 slot."""
        if full and full[0] not in (0, 1):
            raise InvalidInput("constant slot must be the empty subgraph count")
        return cls(tuple(int(c) for c in full[1:]))

    def __getitem__(self, m: int) -> int:
        if m < 1 or m > len(self.coefficients):
            return 0
        return self.coefficients[m - 1]

    @property
    def degree_bound(self) -> int:
        return len(self.coefficients)

    def as_strings(self) -> list[str]:
        return [str(c) for c in self.coefficients]

    def __call__(self, x) -> Fraction:
        return eval_poly(self, x)


def _binom(a: int, b: int) -> int:
    # C(a, b) = 0 outside 0 <= b <= a
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


# ---------------------------------------------------------------- brute force


def _check_budget(H: Hypergraph):
    if H.e > BRUTEFORCE_MAX_EDGES:
        raise ResourceLimit(
            f"subset enumeration over {H.e} edges exceeds the {BRUTEFORCE_MAX_EDGES}-edge budget"
        )


def _census(H: Hypergraph) -> list[int]:
    """counts[m] for m = 0..E, by depth-first subset enumeration.

    Edges are processed in order; a vertex is final once its last incident
    edge has been decided, and the branch is cut as soon as a final vertex
    has degree one.
    """
    _check_budget(H)
    E = H.e
    last_use = [-1] * H.n
    for j, e in enumerate(H.edges):
        for v in e:
            last_use[v] = j
    finalised = [[] for _ in range(E)]
    for v, j in enumerate(last_use):
        if j >= 0:
            finalised[j].append(v)
    deg = [0] * H.n
    counts = [0] * (E + 1)

    def rec(j, size):
        if j == E:
            counts[size] += 1
            return
        # skip edge j
        if all(deg[v] != 1 for v in finalised[j]):
            rec(j + 1, size)
        # take edge j
        e = H.edges[j]
        for v in e:
            deg[v] += 1
        if all(deg[v] != 1 for v in finalised[j]):
            rec(j + 1, size + 1)
        for v in e:
            deg[v] -= 1

    rec(0, 0)
    return counts


def kappa_poly_bruteforce(H: Hypergraph) -> KappaPolynomial:
    return KappaPolynomial.from_full(_census(H))


def kappa_bruteforce(H: Hypergraph, m: int) -> int:
    if not 0 < m <= H.e:
        raise InvalidInput(f"m must satisfy 0 < m <= e(H) = {H.e}")
    _check_budget(H)
    total = 0
    for S in _combinations_without_degree_one(H, m):
        total += 1
    return total


def _combinations_without_degree_one(H: Hypergraph, m: int) -> Iterable[tuple[int, ...]]:
    from itertools import combinations

    for S in combinations(range(H.e), m):
        deg = [0] * H.n
        for j in S:
            for v in H.edges[j]:
                deg[v] += 1
        if 1 not in deg:
            yield S


def degree_one_free_subsets(H: Hypergraph, m: int) -> list[tuple[int, ...]]:
    """All m-edge subsets (as edge-index tuples) with no degree-one vertex."""
    _check_budget(H)
    return list(_combinations_without_degree_one(H, m))


# ---------------------------------------------------------------- closed forms


def kappa_closed_c3k(k: int) -> KappaPolynomial:
    """Census of the tight 3-uniform cycle on 3k vertices."""
    if k < 2:
        raise InvalidInput("k must be >= 2")
    full = [0] * (3 * k + 1)
    for i in range(k + 1):
        num = 3 * k * comb(k + 2 * i, 3 * i)
        assert num % (k + 2 * i) == 0
        full[2 * k + i] = num // (k + 2 * i)
    return KappaPolynomial.from_full(full)


def kappa_closed_c3k_minus_e(k: int) -> KappaPolynomial:
    if k < 2:
        raise InvalidInput("k must be >= 2")
    full = [0] * (3 * k)
    for i in range(k):
        full[2 * k + i] = comb(k + 2 * i - 1, 3 * i)
    return KappaPolynomial.from_full(full)


def kappa_closed_c2r(r: int) -> KappaPolynomial:
    if r < 3:
        raise InvalidInput("r must be >= 3")
    full = [0] * (2 * r + 1)
    for i in range(4, 2 * r + 1):
        full[i] = comb(2 * r, i) - 2 * r * (i - 2) * _binom(r, i - 1)
    return KappaPolynomial.from_full(full)


def bad_subset_formula(r: int, m: int) -> int:
    return 2 * r * (m - 2) * _binom(r, m - 1)


def count_bad_subsets(r: int, m: int) -> int:
    """Enumerate m-subsets of Z_{2r} having at least one bad element.

    With the subset cyclically ordered as x_0 < ... < x_{m-1}, element x_i
    is good when (x_{i+1} - x_{i-1}) mod 2r lies in {2, ..., r}.
    """
    from itertools import combinations

    if r < 3:
        raise InvalidInput("r must be >= 3")
    if not 4 <= m <= 2 * r:
        raise InvalidInput(f"m must satisfy 4 <= m <= 2r = {2 * r}")
    n = 2 * r
    total = 0
    for A in combinations(range(n), m):
        for i in range(m):
            gap = (A[(i + 1) % m] - A[i - 1]) % n
            if not 2 <= gap <= r:
                total += 1
                break
    return total


# ---------------------------------------------------------------- tight-cycle DP


def kappa_tight_cycle_dp(ell: int, r: int, skip_edges: Iterable[int] = ()) -> KappaPolynomial:
    """Census of an edge subset of the tight cycle C_ell^(r) by transfer matrix.

    Edge i covers vertices i..i+r-1 (mod ell), so vertex v sees exactly the
    window of edges v-r+1..v.  A chosen set has a degree-one vertex iff some
    cyclic window of r consecutive edge positions holds exactly one chosen
    edge.  Scanning positions 0..ell-1, the state is the pair of ages of the
    two most recently chosen edges, capped at r ("out of window"); the window
    ending at v holds exactly one edge iff age1 < r <= age2.  The cycle is
    closed by guessing the state before position 0 and requiring the state
    after position ell-1 to equal it, which pins the guess uniquely.
    """
    if r < 2 or ell < r + 1:
        raise InvalidInput("need r >= 2 and ell >= r+1")
    if ell * ell * r**4 > DP_MAX_WORK:
        raise ResourceLimit(f"tight-cycle DP on C_{ell}^({r}) exceeds the work budget {DP_MAX_WORK}")
    skip = set(skip_edges)
    if any(not 0 <= j < ell for j in skip):
        raise InvalidInput("skip_edges must lie in [0, ell)")
    cap = r
    states = [(a, b) for a in range(cap + 1) for b in range(a + 1, cap + 1)] + [(cap, cap)]
    total = [0] * (ell + 1)
    for init in states:
        # table: state -> list of counts indexed by number of chosen edges
        table = {init: [1] + [0] * ell}
        for pos in range(ell):
            nxt = {}
            for (a1, a2), poly in table.items():
                options = [(min(a1 + 1, cap), min(a2 + 1, cap), 0)]
                if pos not in skip:
                    options.append((0, min(a1 + 1, cap), 1))
                for b1, b2, add in options:
                    if b1 < r <= b2:
                        continue
                    key = (b1, b2)
                    acc = nxt.get(key)
                    if acc is None:
                        acc = nxt[key] = [0] * (ell + 1)
                    if add:
                        for m in range(ell):
                            if poly[m]:
                                acc[m + 1] += poly[m]
                    else:
                        for m in range(ell + 1):
                            if poly[m]:
                                acc[m] += poly[m]
            table = nxt
        final = table.get(init)
        if final:
            for m in range(ell + 1):
                total[m] += final[m]
    # only positions kept are edges of the subgraph; drop degree slots beyond e(H)
    E = ell - len(skip)
    if any(total[m] for m in range(E + 1, ell + 1)):
        raise AssertionError("DP produced subsets larger than the edge set")
    return KappaPolynomial.from_full(total[: E + 1])


def tight_cycle_layout(H: Hypergraph) -> tuple[int, int, frozenset[int]] | None:
    """Detect H as an edge subset of C_n^(r) in natural vertex order.

    Returns (ell, r, skipped window indices) or None.
    """
    if H.n < H.r + 1:
        return None
    ell, r = H.n, H.r
    index = {}
    for i in range(ell):
        index[tuple(sorted((i + j) % ell for j in range(r)))] = i
    present = set()
    for e in H.edges:
        if e not in index:
            return None
        present.add(index[e])
    return ell, r, frozenset(set(range(ell)) - present)


def kappa_poly(H: Hypergraph) -> KappaPolynomial:
    """Census by the fastest applicable exact route."""
    layout = tight_cycle_layout(H)
    if layout is not None and layout[0] ** 2 * layout[1] ** 4 <= DP_MAX_WORK:
        ell, r, skip = layout
        return kappa_tight_cycle_dp(ell, r, skip)
    return kappa_poly_bruteforce(H)


# ---------------------------------------------------------------- evaluation


def eval_poly(P: KappaPolynomial, x) -> Fraction:
    """Exact Horner evaluation (the polynomial has no constant term)."""
    x = to_fraction(x)
    acc = Fraction(0)
    for c in reversed(P.coefficients):
        acc = (acc + c) * x
    return acc


@dataclass(frozen=True)
class NegativityCertificate:
    point: Fraction
    value: Fraction
    provenance: str

    def __post_init__(self):
        if not self.value < 0 or not -1 <= self.point <= 0:
            raise InvalidInput("certificate needs value < 0 at a point of [-1, 0]")


def probe_catalogue(ell: int, r: int, minus_edge: bool = False) -> list[tuple[Fraction, str]]:
    """Probe points from the tight-cycle non-Sidorenko arguments, filtered to (-1, 0).

    Only the probes that belong to the given family are returned:
    C_3k^(3) uses -2/3 (k = 2) and -30/(k^3+k^2) (k >= 3); C_3k^(3) - e uses
    -2/3 (k = 3) and -300/(7(k^3-k)) (k >= 4); C_2r^(r) uses -2/r for r <= 16
    and -1/r beyond.
    """
    probes = []
    if r == 3 and ell % 3 == 0:
        k = ell // 3
        if not minus_edge:
            if k == 2:
                probes.append((Fraction(-2, 3), "c3k:k=2"))
            if k >= 3:
                probes.append((Fraction(-30, k**3 + k**2), "c3k:-30/(k^3+k^2)"))
        else:
            if k == 3:
                probes.append((Fraction(-2, 3), "c3k-e:k=3"))
            if k >= 4:
                probes.append((Fraction(-300, 7 * (k**3 - k)), "c3k-e:-300/(7(k^3-k))"))
    if ell == 2 * r and r % 2 == 1 and not minus_edge:
        if r <= 16:
            probes.append((Fraction(-2, r), "c2r:-2/r"))
        else:
            probes.append((Fraction(-1, r), "c2r:-1/r"))
    out, seen = [], set()
    for x, tag in probes:
        if -1 < x < 0 and x not in seen:
            seen.add(x)
            out.append((x, tag))
    return out


def find_negative_point(
    P: KappaPolynomial,
    probes: Sequence = (),
    grid_n: int = 1000,
) -> NegativityCertificate | None:
    """First point among the probes, then the grid -j/grid_n (j = 1..grid_n),
    where P is exactly negative.  ``None`` is not a proof of non-negativity.
    """
    if grid_n < 1:
        raise InvalidInput("grid_n must be >= 1")
    for i, p in enumerate(probes):
        x, tag = p if isinstance(p, tuple) else (p, f"probe[{i}]")
        x = Fraction(x)
        if -1 <= x <= 0:
            val = eval_poly(P, x)
            if val < 0:
                return NegativityCertificate(x, val, tag)
    for j in range(1, grid_n + 1):
        x = Fraction(-j, grid_n)
        val = eval_poly(P, x)
        if val < 0:
            return NegativityCertificate(x, val, f"grid:{j}/{grid_n}")
    return None


def best_negative_point(
    P: KappaPolynomial, probes: Sequence = (), grid_n: int = 1000
) -> NegativityCertificate | None:
    """Most negative probe; the grid is consulted only when no probe is negative."""
    best = None
    for i, p in enumerate(probes):
        x, tag = p if isinstance(p, tuple) else (p, f"probe[{i}]")
        x = Fraction(x)
        if -1 <= x <= 0:
            val = eval_poly(P, x)
            if val < 0 and (best is None or val < best.value):
                best = NegativityCertificate(x, val, tag)
    if best is not None:
        return best
    for j in range(1, grid_n + 1):
        x = Fraction(-j, grid_n)
        val = eval_poly(P, x)
        if val < 0 and (best is None or val < best.value):
            best = NegativityCertificate(x, val, f"grid:{j}/{grid_n}")
    return best


def term_ratio_c3k(k: int, i: int) -> Fraction:
    """Consecutive-term ratio bound quantity used for the C_3k^(3) probe."""
    return Fraction((k + 2 * i + 1) * (k + 2 * i) * (k - i), (3 * i + 3) * (3 * i + 2) * (3 * i + 1))


def term_ratio_c3k_minus_e(k: int, i: int) -> Fraction:
    return Fraction(
        (k + 2 * i + 1) * (k + 2 * i) * (k - i - 1), (3 * i + 3) * (3 * i + 2) * (3 * i + 1)
    )


def tight_cycle_kappa(ell: int, r: int, minus_edge: bool = False) -> KappaPolynomial:
    return kappa_tight_cycle_dp(ell, r, {0} if minus_edge else ())


__all__ = [
    "KappaPolynomial",
    "NegativityCertificate",
    "kappa_bruteforce",
    "kappa_poly_bruteforce",
    "kappa_closed_c3k",
    "kappa_closed_c3k_minus_e",
    "kappa_closed_c2r",
    "count_bad_subsets",
    "bad_subset_formula",
    "kappa_tight_cycle_dp",
    "kappa_poly",
    "tight_cycle_layout",
    "eval_poly",
    "find_negative_point",
    "best_negative_point",
    "probe_catalogue",
]
