"""Commonness: even-subgraph expansion, non-positivity witnesses, Levi transfer.

Writing W = (1 + f)/2 turns commonness of H into the statement that
t_H(1+f) + t_H(1-f) - 2 >= 0 for every symmetric f with values in [-1, 1],
and expanding the products gives twice the sum of t_G(f) over the non-empty
edge subsets G of H with an even number of edges.  This module only ever
certifies failures; a search that finds nothing is reported as inconclusive.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import rational
from .density import (
    BipartiteKernel,
    SymmetricKernel,
    TensorKernel,
    contract,
    is_zero_averaging,
    signed_pair,
    t_bipartite,
    t_density,
)
from .errors import Inconclusive, InvalidInput, ResourceLimit
from .hypergraph import Hypergraph, are_isomorphic, has_degree_one_vertex, is_two_connected, levi_graph
from .kappa import degree_one_free_subsets

EVEN_SUM_MAX_EDGES = 20
CLASSIFY_MAX_EDGES = 24
MAX_HALVINGS = 60


@dataclass
class CommonnessReport:
    deficit: Fraction
    even_sum: Fraction | None
    scale: Fraction
    verdict: str
    notice: str = ""

    def to_dict(self) -> dict:
        return {
            "deficit": rational.fmt(self.deficit),
            "even_sum": None if self.even_sum is None else rational.fmt(self.even_sum),
            "scale": rational.fmt(self.scale),
            "verdict": self.verdict,
            "notice": self.notice,
        }


def _check_signed_unit(f: SymmetricKernel):
    if any(not -1 <= w <= 1 for _, w in f.items()):
        raise InvalidInput("f must take values in [-1, 1]")


def scale_kernel(f: SymmetricKernel, eps) -> SymmetricKernel:
    eps = rational.to_fraction(eps)
    return f.map_weights(lambda w: eps * w, "unrestricted")


def even_subgraph_sum(H: Hypergraph, f: SymmetricKernel, skip_degree_one: bool = False) -> Fraction:
    """Sum of t_G(f) over non-empty edge subsets G of H with e(G) even.

    With ``skip_degree_one`` the subsets having a degree-one vertex are left
    out, which is only valid when f is zero-averaging.
    """
    if H.e > EVEN_SUM_MAX_EDGES:
        raise ResourceLimit(f"even-subgraph expansion over 2^{H.e} subsets")
    total = Fraction(0)
    cache: dict[tuple, Fraction] = {}
    for size in range(2, H.e + 1, 2):
        for S in itertools.combinations(range(H.e), size):
            G = H.subgraph(S)
            if skip_degree_one and has_degree_one_vertex(G):
                continue
            key = G.support().edges
            if key not in cache:
                cache[key] = t_density(G.support(), f)
            total += cache[key]
    return total


def common_deficit(H: Hypergraph, f: SymmetricKernel, scale=1) -> CommonnessReport:
    """t_H(1+f) + t_H(1-f) - 2 for the kernel ``scale * f``, exactly."""
    scale = rational.to_fraction(scale)
    g = f if scale == 1 else scale_kernel(f, scale)
    _check_signed_unit(g)
    plus, minus = signed_pair(g, 1)
    deficit = t_density(H, plus) + t_density(H, minus) - 2
    even, notice = None, ""
    if H.e <= EVEN_SUM_MAX_EDGES:
        even = even_subgraph_sum(H, g)
        if deficit != 2 * even:
            raise AssertionError("deficit and even-subgraph expansion disagree")
    else:
        notice = f"even-subgraph cross-check skipped (e(H) = {H.e} > {EVEN_SUM_MAX_EDGES})"
    verdict = "not_common" if deficit < 0 else "inconclusive"
    return CommonnessReport(deficit, even, scale, verdict, notice)


# ---------------------------------------------------------------- classification


@dataclass
class EvenCandidate:
    edges: tuple[int, ...]
    two_connected: bool
    iso_class: int | None = None
    negativity_witness: str | None = None

    def to_dict(self) -> dict:
        return {
            "edges": list(self.edges),
            "two_connected": self.two_connected,
            "iso_class": self.iso_class,
            "negativity_witness": self.negativity_witness,
        }


@dataclass
class EvenSubgraphClassification:
    two_m: int | None
    candidates: list[EvenCandidate]
    smaller_even_sizes_all_degenerate: bool

    def to_dict(self) -> dict:
        return {
            "2m": self.two_m,
            "candidates": [c.to_dict() for c in self.candidates],
            "smaller_even_sizes_all_degenerate": self.smaller_even_sizes_all_degenerate,
        }


def classify_even_subgraphs(H: Hypergraph) -> EvenSubgraphClassification:
    """Smallest even size 2m carrying a subgraph with no degree-one vertex.

    Every such 2m-edge subgraph is listed (by edge-index set) with its
    2-connectivity.  For v(H) <= 12 candidates are also grouped into
    isomorphism classes.
    """
    if H.e > CLASSIFY_MAX_EDGES:
        raise ResourceLimit(f"classification needs e(H) <= {CLASSIFY_MAX_EDGES}")
    for size in range(2, H.e + 1, 2):
        subsets = degree_one_free_subsets(H, size)
        if not subsets:
            continue
        cands = [EvenCandidate(S, is_two_connected(H.subgraph(S))) for S in subsets]
        if H.n <= 12:
            reps: list[Hypergraph] = []
            for c in cands:
                G = H.subgraph(c.edges).support()
                for i, R in enumerate(reps):
                    if are_isomorphic(G, R):
                        c.iso_class = i
                        break
                else:
                    c.iso_class = len(reps)
                    reps.append(G)
        return EvenSubgraphClassification(size, cands, True)
    return EvenSubgraphClassification(None, [], True)


# ---------------------------------------------------------------- Levi transfer


def levi_transfer(f, r: int) -> SymmetricKernel:
    """h(x_1..x_r) = sum_y mass(y) prod_i f(x_i, y).

    ``f`` is a BipartiteKernel or a symmetric 2-variable kernel (read with
    both coordinates on the same space).  Then t_H(h) = t_{L(H)}(f) for every
    r-graph H, with H's vertices on the left and its edges on the right.
    """
    if isinstance(f, SymmetricKernel):
        f = BipartiteKernel.from_symmetric(f)
    if not isinstance(f, BipartiteKernel):
        raise InvalidInput("levi_transfer needs a 2-variable kernel")
    if r < 2:
        raise InvalidInput("r must be >= 2")
    M = f.matrix

    def weight(*xs):
        return sum(
            (my * math.prod((M[x][y] for x in xs), start=Fraction(1)) for y, my in enumerate(f.right_masses)),
            Fraction(0),
        )

    return SymmetricKernel.from_function(r, f.left_masses, weight)


def levi_density(H: Hypergraph, f) -> Fraction:
    """t_{L(H)}(f) with H's vertices on the left side."""
    if isinstance(f, SymmetricKernel):
        f = BipartiteKernel.from_symmetric(f)
    return t_bipartite(levi_graph(H), f, set(range(H.n)))


def is_zero_averaging_left(f: BipartiteKernel) -> bool:
    """sum_x mass(x) f(x, y) = 0 for every right atom y."""
    return all(
        sum((mx * f.matrix[x][y] for x, mx in enumerate(f.left_masses)), Fraction(0)) == 0
        for y in range(len(f.right_masses))
    )


def parity_kernel(r: int) -> SymmetricKernel:
    """x_1 x_2 ... x_r on {+1, -1} with uniform masses (zero-averaging)."""
    return SymmetricKernel.from_function(
        r, [Fraction(1, 2)] * 2, lambda *a: Fraction((-1) ** sum(a)), "signed_unit"
    )


def zero_averaging_lift(f: SymmetricKernel) -> SymmetricKernel:
    """f tensor parity: zero-averaging, and t_G is unchanged whenever every
    vertex of G has even degree (odd-degree vertices make it vanish)."""
    return TensorKernel([f, parity_kernel(f.r)])


# ---------------------------------------------------------------- negativity search


def _float_density(G: Hypergraph, tensor: np.ndarray, masses: np.ndarray) -> float:
    value = contract([masses] * G.n, [(e, tensor) for e in G.edges])
    return 1.0 if value is None else float(value)


def _symmetrise(params: np.ndarray, keys, m: int, r: int) -> np.ndarray:
    T = np.zeros((m,) * r)
    for p, key in zip(params, keys):
        for perm in set(itertools.permutations(key)):
            T[perm] = p
    return T


def _project_zero_avg(T: np.ndarray, masses: np.ndarray) -> np.ndarray:
    """Apply (I - 1 mass^T) along every axis; keeps symmetry."""
    out = T
    for ax in range(T.ndim):
        mean = np.tensordot(out, masses, axes=([ax], [0]))
        out = out - np.expand_dims(mean, ax)
    return out


def _exact_candidate(params, keys, m, r, zero_averaging, denominator) -> SymmetricKernel | None:
    masses = [Fraction(1, m)] * m
    q = {key: Fraction(float(p)).limit_denominator(denominator) for key, p in zip(keys, params)}
    if zero_averaging:
        full = np.empty((m,) * r, dtype=object)
        for idx in itertools.product(range(m), repeat=r):
            full[idx] = q[tuple(sorted(idx))]
        mass_vec = np.array(masses, dtype=object)
        full = _project_zero_avg(full, mass_vec)
        q = {key: full[key] for key in keys}
    top = max(abs(v) for v in q.values())
    if top == 0:
        return None
    if top > 1:
        q = {k: v / top for k, v in q.items()}
    return SymmetricKernel(r, masses, q, "signed_unit")


@dataclass
class NegativityWitness:
    kernel: SymmetricKernel
    value: Fraction
    restart: int

    def to_dict(self) -> dict:
        return {"kernel": self.kernel.to_dict(), "t": rational.fmt(self.value), "restart": self.restart}


def negativity_search(G: Hypergraph, atom_count: int, iterations: int, seed: int,
                      restarts: int = 8, zero_averaging: bool = False,
                      denominator: int = 2**16) -> NegativityWitness | None:
    """Look for a symmetric kernel f in [-1, 1] with t_G(f) < 0.

    Random restarts followed by coordinate descent on the weights of a
    uniform-mass kernel with ``atom_count`` atoms, in floating point.  A
    candidate with negative value is rounded to denominators <= 2^16 and
    re-checked exactly; only exactly negative witnesses are returned.  With
    ``zero_averaging`` the weights are projected onto zero-averaging kernels
    (in exact arithmetic for the final check).
    """
    if not 2 <= atom_count <= 4:
        raise InvalidInput("atom_count must lie in [2, 4]")
    m, r = atom_count, G.r
    keys = list(itertools.combinations_with_replacement(range(m), r))
    masses = np.full(m, 1.0 / m)
    grid = np.linspace(-1.0, 1.0, 21)
    seqs = np.random.SeedSequence(seed).spawn(restarts)

    def objective(params):
        T = _symmetrise(params, keys, m, r)
        if zero_averaging:
            T = _project_zero_avg(T, masses)
            top = np.abs(T).max()
            if top < 1e-12:
                return 0.0
            T = T / max(top, 1.0)
        return _float_density(G, T, masses)

    for restart, ss in enumerate(seqs):
        rng = np.random.Generator(np.random.PCG64(ss))
        params = rng.uniform(-1, 1, len(keys))
        best = objective(params)
        for _ in range(iterations):
            improved = False
            for i in rng.permutation(len(keys)):
                old = params[i]
                trial_vals = np.concatenate([grid, [np.clip(old + rng.normal(0, 0.1), -1, 1)]])
                scores = []
                for val in trial_vals:
                    params[i] = val
                    scores.append(objective(params))
                j = int(np.argmin(scores))
                if scores[j] < best - 1e-15:
                    best, params[i], improved = scores[j], trial_vals[j], True
                else:
                    params[i] = old
            if best < 0 and not improved:
                break
        if best < 0:
            cand = _exact_candidate(params, keys, m, r, zero_averaging, denominator)
            if cand is not None:
                value = t_density(G, cand)
                if value < 0:
                    return NegativityWitness(cand, value, restart)
    return None


# ---------------------------------------------------------------- combining witnesses


def _tensor_all(kernels: Sequence[SymmetricKernel]) -> SymmetricKernel:
    return kernels[0] if len(kernels) == 1 else TensorKernel(list(kernels))


def _t(G: Hypergraph, f: SymmetricKernel) -> Fraction:
    return t_density(G, f)


def combine_negativity_witnesses(Gs: Sequence[Hypergraph], fs: Sequence[SymmetricKernel],
                                 f0: SymmetricKernel | None = None) -> SymmetricKernel:
    """One kernel f with t_{G_i}(f) < 0 for all i, built from per-graph witnesses.

    ``fs[j]`` must satisfy t_{G_i}(f_j) < 0 for i != j and t_{G_j}(f_j) != 0.
    If some f_j is negative on its own G_j it is returned.  Otherwise, for an
    even count the tensor product of all f_j works; for an odd count ``f0``
    (negative on the disjoint union of the G_i) is combined with the f_j of
    the graphs where f0 is positive.
    """
    k = len(Gs)
    if k == 0 or len(fs) != k:
        raise InvalidInput("need one witness per graph")
    table = [[_t(G, f) for G in Gs] for f in fs]
    for j in range(k):
        for i in range(k):
            if i != j and not table[j][i] < 0:
                raise InvalidInput(f"witness {j} is not negative on graph {i}")
        if table[j][j] == 0:
            raise InvalidInput(f"witness {j} vanishes on its own graph; perturb it first")
    for j in range(k):
        if table[j][j] < 0:
            return _verified(Gs, fs[j])
    if k % 2 == 0:
        return _verified(Gs, _tensor_all(fs))
    if f0 is None:
        raise Inconclusive("odd_case_requires_union_witness", "supply f0 negative on the disjoint union")
    signs = [_t(G, f0) for G in Gs]
    if any(s == 0 for s in signs) or math.prod(1 if s > 0 else -1 for s in signs) > 0:
        raise InvalidInput("f0 is not negative on the disjoint union")
    positive = [i for i, s in enumerate(signs) if s > 0]
    if not positive:
        return _verified(Gs, f0)
    return _verified(Gs, _tensor_all([f0] + [fs[i] for i in positive]))


def _verified(Gs, f) -> SymmetricKernel:
    for i, G in enumerate(Gs):
        if not _t(G, f) < 0:
            raise InvalidInput(f"combined witness fails on graph {i}")
    return f


# ---------------------------------------------------------------- non-commonness


def check_noncommon(H: Hypergraph, f: SymmetricKernel, classification: EvenSubgraphClassification | None = None,
                    max_halvings: int = MAX_HALVINGS) -> CommonnessReport:
    """Certify non-commonness of H from a zero-averaging f negative on the
    smallest even degree-one-free subgraphs.

    S = sum of t_G(f) over those candidates must be negative; then the even
    sum at eps*f behaves like eps^(2m) S and eps is halved from 1/2 until the
    exact deficit is negative.
    """
    if classification is None:
        classification = classify_even_subgraphs(H)
    if classification.two_m is None or not classification.candidates:
        raise InvalidInput("H has no even subgraph without degree-one vertices")
    if not (H.r == 2 or H.r % 2 == 1):
        raise InvalidInput("the criterion needs r odd or r = 2")
    if not classification.smaller_even_sizes_all_degenerate:
        raise InvalidInput("classification hypotheses not established")
    if not is_zero_averaging(f):
        raise InvalidInput("f must be zero-averaging")
    _check_signed_unit(f)
    S = sum((t_density(H.subgraph(c.edges).support(), f) for c in classification.candidates), Fraction(0))
    if not S < 0:
        raise Inconclusive("leading_term_nonnegative", f"S = {S}")
    eps = Fraction(1, 2)
    for _ in range(max_halvings + 1):
        report = common_deficit(H, f, eps) if H.e <= 12 else _deficit_only(H, f, eps)
        if report.deficit < 0:
            report.verdict = "not_common"
            report.notice = (report.notice + f" leading sum S = {rational.fmt(S)}").strip()
            return report
        eps /= 2
    raise Inconclusive("epsilon_search_exhausted", f"no negative deficit after {max_halvings} halvings")


def _deficit_only(H, f, eps) -> CommonnessReport:
    g = scale_kernel(f, eps)
    plus, minus = signed_pair(g, 1)
    deficit = t_density(H, plus) + t_density(H, minus) - 2
    return CommonnessReport(deficit, None, eps, "not_common" if deficit < 0 else "inconclusive",
                            "even-subgraph cross-check skipped for speed")
