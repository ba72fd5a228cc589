"""Finite symmetric kernels and exact homomorphism densities.

A kernel lives on a finite atom space with rational masses summing to one;
its weights are indexed by sorted r-multisets of atoms.  Densities

    t_H(W) = sum over maps phi: V(H) -> atoms of
             prod_v mass(phi(v)) * prod_{e in E(H)} W(phi(e))

are computed exactly.  Three strategies are available: plain enumeration
(the oracle), variable elimination over the factor graph of H, and a banded
transfer-matrix DP for edge subsets of a tight cycle.  The fast paths clear
denominators first and run on Python integers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import prod
from typing import Callable, Mapping, Sequence

import numpy as np

from . import rational
from .errors import InvalidInput, ResourceLimit
from .hypergraph import Hypergraph
from .kappa import tight_cycle_layout

RANGES = ("nonnegative", "signed_unit", "unrestricted")

BRUTEFORCE_OPS_BUDGET = 10**9
FACTOR_SIZE_CAP = 10**7
MATERIALISE_CAP = 200_000
TENSOR_POWER_ATOM_CAP = 4096


def _in_range(value: Fraction, rng: str) -> bool:
    if rng == "nonnegative":
        return value >= 0
    if rng == "signed_unit":
        return -1 <= value <= 1
    return True


def _multisets(m: int, r: int):
    return itertools.combinations_with_replacement(range(m), r)


class SymmetricKernel:
    """Symmetric weight function on r-multisets of a finite atom space.

    ``weights`` maps sorted atom tuples to rationals; omitted multisets are 0.
    """

    def __init__(
        self,
        r: int,
        masses: Sequence,
        weights: Mapping[tuple, object],
        range: str = "unrestricted",
    ):
        if r < 1:
            raise InvalidInput("kernel arity must be >= 1")
        if range not in RANGES:
            raise InvalidInput(f"range must be one of {RANGES}")
        masses = tuple(rational.to_fraction(x) for x in masses)
        if not masses:
            raise InvalidInput("kernel needs at least one atom")
        if any(x <= 0 for x in masses):
            raise InvalidInput("atom masses must be positive")
        if sum(masses) != 1:
            raise InvalidInput(f"atom masses sum to {sum(masses)}, not 1")
        m = len(masses)
        table = {}
        for key, val in weights.items():
            key = tuple(sorted(int(a) for a in key))
            if len(key) != r or key[0] < 0 or key[-1] >= m:
                raise InvalidInput(f"bad weight key {key} for arity {r} on {m} atoms")
            val = rational.to_fraction(val)
            if key in table and table[key] != val:
                raise InvalidInput(f"conflicting weights for {key}")
            if val != 0:
                table[key] = val
        self.r = r
        self.masses = masses
        self.range = range
        self._table = table
        if range != "unrestricted":
            for key in _multisets(m, r):
                if not _in_range(self.weight(key), range):
                    raise InvalidInput(f"weight at {key} violates declared range {range}")

    # -- construction helpers

    @classmethod
    def from_function(cls, r, masses, fn: Callable, range="unrestricted") -> "SymmetricKernel":
        m = len(masses)
        return cls(r, masses, {key: fn(*key) for key in _multisets(m, r)}, range)

    @classmethod
    def constant(cls, r: int, value, range=None) -> "SymmetricKernel":
        value = rational.to_fraction(value)
        if range is None:
            range = "signed_unit" if -1 <= value <= 1 else ("nonnegative" if value >= 0 else "unrestricted")
        return cls(r, [1], {(0,) * r: value}, range)

    @classmethod
    def uniform(cls, r, m, weights, range="unrestricted") -> "SymmetricKernel":
        return cls(r, [Fraction(1, m)] * m, weights, range)

    # -- access

    @property
    def atom_count(self) -> int:
        return len(self.masses)

    def weight(self, atoms) -> Fraction:
        return self._table.get(tuple(sorted(atoms)), Fraction(0))

    def __call__(self, *atoms) -> Fraction:
        return self.weight(atoms)

    def items(self):
        """All (multiset, weight) pairs, zeros included, in lexicographic order."""
        for key in _multisets(self.atom_count, self.r):
            yield key, self.weight(key)

    @cached_property
    def dense(self) -> np.ndarray:
        """Full r-dimensional object array of Fractions."""
        m = self.atom_count
        if m**self.r > FACTOR_SIZE_CAP:
            raise ResourceLimit(f"dense kernel would have {m}^{self.r} entries")
        arr = np.empty((m,) * self.r, dtype=object)
        arr[...] = Fraction(0)
        for key, val in self._table.items():
            for perm in set(itertools.permutations(key)):
                arr[perm] = val
        return arr

    def scaled_dense(self) -> tuple[np.ndarray, int]:
        """Integer array N and denominator D with dense == N / D."""
        D = rational.common_denominator(self._table.values())
        N = np.empty((self.atom_count,) * self.r, dtype=object)
        for idx, v in np.ndenumerate(self.dense):
            N[idx] = v.numerator * (D // v.denominator)
        return N, D

    def materialise(self) -> "SymmetricKernel":
        return self

    def map_weights(self, fn: Callable[[Fraction], Fraction], range="unrestricted") -> "SymmetricKernel":
        return SymmetricKernel(self.r, self.masses, {k: fn(v) for k, v in self.items()}, range)

    def __eq__(self, other):
        if not isinstance(other, SymmetricKernel):
            return NotImplemented
        a, b = self.materialise(), other.materialise()
        return (a.r, a.masses, a._table) == (b.r, b.masses, b._table)

    def __hash__(self):
        return hash((self.r, self.masses))

    def __repr__(self):
        return f"SymmetricKernel(r={self.r}, atoms={self.atom_count}, range={self.range!r})"

    # -- serialisation

    def to_dict(self) -> dict:
        k = self.materialise()
        return {
            "r": k.r,
            "atoms": [{"mass": rational.fmt(x)} for x in k.masses],
            "weights": [
                {"atoms": list(key), "value": rational.fmt(val)}
                for key, val in sorted(k._table.items())
            ],
            "range": k.range,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SymmetricKernel":
        try:
            r = data["r"]
            masses = [rational.parse(a["mass"]) for a in data["atoms"]]
            weights = {tuple(w["atoms"]): rational.parse(w["value"]) for w in data.get("weights", [])}
            rng = data.get("range", "unrestricted")
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"kernel record malformed: {exc}") from exc
        return cls(r, masses, weights, rng)


def _product_range(ranges) -> str:
    ranges = set(ranges)
    if ranges <= {"nonnegative"}:
        return "nonnegative"
    if ranges <= {"signed_unit"}:
        return "signed_unit"
    return "unrestricted"


class TensorKernel(SymmetricKernel):
    """Lazy tensor product of kernels of equal arity.

    Product atom (a_1, ..., a_k) is numbered in mixed radix with the last
    factor varying fastest.
    """

    def __init__(self, factors: Sequence[SymmetricKernel]):
        if not factors:
            raise InvalidInput("tensor product of nothing")
        r = factors[0].r
        if any(f.r != r for f in factors):
            raise InvalidInput("arity mismatch in tensor product")
        flat = []
        for f in factors:
            flat.extend(f.factors if isinstance(f, TensorKernel) else [f])
        self.factors = tuple(flat)
        self.r = r
        self.radices = tuple(f.atom_count for f in self.factors)
        self.range = _product_range(f.range for f in self.factors)
        masses = [Fraction(1)]
        for f in self.factors:
            masses = [a * b for a in masses for b in f.masses]
        self.masses = tuple(masses)
        self._table = None

    def _split(self, atom: int) -> list[int]:
        digits = []
        for base in reversed(self.radices):
            atom, d = divmod(atom, base)
            digits.append(d)
        return digits[::-1]

    def weight(self, atoms) -> Fraction:
        parts = [self._split(a) for a in atoms]
        return prod(
            (f.weight([p[i] for p in parts]) for i, f in enumerate(self.factors)),
            start=Fraction(1),
        )

    def items(self):
        for key in _multisets(self.atom_count, self.r):
            yield key, self.weight(key)

    @cached_property
    def dense(self) -> np.ndarray:
        if self.atom_count**self.r > FACTOR_SIZE_CAP:
            raise ResourceLimit(f"dense kernel would have {self.atom_count}^{self.r} entries")
        arr = self.factors[0].dense
        for f in self.factors[1:]:
            ma, mb, r = arr.shape[0], f.atom_count, self.r
            outer = np.multiply.outer(arr, f.dense)
            order = [ax for i in range(r) for ax in (i, r + i)]
            arr = outer.transpose(order).reshape((ma * mb,) * r)
        return arr

    def scaled_dense(self) -> tuple[np.ndarray, int]:
        N, D = self.factors[0].scaled_dense()
        for f in self.factors[1:]:
            Nf, Df = f.scaled_dense()
            ma, mb, r = N.shape[0], Nf.shape[0], self.r
            outer = np.multiply.outer(N, Nf)
            order = [ax for i in range(r) for ax in (i, r + i)]
            N, D = outer.transpose(order).reshape((ma * mb,) * r), D * Df
        return N, D

    def materialise(self) -> SymmetricKernel:
        if sum(1 for _ in _multisets(self.atom_count, self.r)) > MATERIALISE_CAP:
            raise ResourceLimit("tensor product too large to tabulate")
        return SymmetricKernel(self.r, self.masses, dict(self.items()), self.range)

    def __repr__(self):
        return f"TensorKernel(r={self.r}, radices={self.radices})"


# ---------------------------------------------------------------- operations


def tensor_product(A: SymmetricKernel, B: SymmetricKernel) -> SymmetricKernel:
    if A.r != B.r:
        raise InvalidInput(f"arity mismatch: {A.r} vs {B.r}")
    return TensorKernel([A, B])


def tensor_power(A: SymmetricKernel, N: int) -> SymmetricKernel:
    if N < 1:
        raise InvalidInput("tensor power needs N >= 1")
    if A.atom_count**N > TENSOR_POWER_ATOM_CAP:
        raise ResourceLimit(f"{A.atom_count}^{N} atoms exceeds {TENSOR_POWER_ATOM_CAP}")
    if N == 1:
        return A
    return TensorKernel([A] * N)


def blow_up(A: SymmetricKernel, t: int) -> SymmetricKernel:
    """Split every atom into ``t`` equal-mass copies."""
    if t < 1:
        raise InvalidInput("blow-up factor must be >= 1")
    if t == 1:
        return A
    masses = [x / t for x in A.masses for _ in range(t)]
    return SymmetricKernel.from_function(
        A.r, masses, lambda *atoms: A.weight([a // t for a in atoms]), A.range
    )


def is_zero_averaging(A: SymmetricKernel) -> bool:
    """Averaging out the last coordinate gives zero for every other choice."""
    m = A.atom_count
    for head in _multisets(m, A.r - 1):
        if sum(A.masses[a] * A.weight(head + (a,)) for a in range(m)) != 0:
            return False
    return True


def signed_pair(A: SymmetricKernel, shift) -> tuple[SymmetricKernel, SymmetricKernel]:
    """The kernels shift + A and shift - A."""
    shift = rational.to_fraction(shift)
    return A.map_weights(lambda w: shift + w), A.map_weights(lambda w: shift - w)


# ---------------------------------------------------------------- evaluation core


def contract(domains: Sequence[np.ndarray], factors: Sequence[tuple[tuple[int, ...], np.ndarray]],
             cap: int | None = None):
    """Sum over all joint assignments of prod(domain weights) * prod(factors).

    ``domains[v]`` is the weight vector of variable v; each factor is a pair
    (scope, array) whose axes follow the scope order.  Variables are
    eliminated greedily by minimum fill-in (ties: smallest new factor, then
    lowest index).  Works for any numpy dtype, including object arrays of
    Python ints.
    """
    cap = FACTOR_SIZE_CAP if cap is None else cap
    nvar = len(domains)
    live = [(tuple(s), a) for s, a in factors]
    for s, a in live:
        if len(set(s)) != len(s):
            raise InvalidInput("factor scope repeats a variable")
    remaining = set(range(nvar))
    scalar = None

    def mul(x, y):
        return y if x is None else x * y

    while remaining:
        nbrs = {v: set() for v in remaining}
        for s, _ in live:
            for v in s:
                nbrs[v].update(s)
        best = None
        for v in sorted(remaining):
            nb = nbrs[v] - {v}
            fill = sum(1 for a, b in itertools.combinations(sorted(nb), 2) if b not in nbrs[a])
            size = prod(len(domains[u]) for u in nb | {v})
            key = (fill, size, v)
            if best is None or key < best:
                best = key
        _, size, v = best
        if size > cap:
            raise ResourceLimit(
                f"variable elimination needs an intermediate factor of {size} entries (cap {cap})"
            )
        touching = [(s, a) for s, a in live if v in s]
        live = [(s, a) for s, a in live if v not in s]
        scope = tuple(sorted(set().union(*[set(s) for s, _ in touching]) | {v}))
        pos = {u: i for i, u in enumerate(scope)}
        joint = None
        for s, a in touching:
            order = sorted(range(len(s)), key=lambda i: pos[s[i]])
            arr = np.transpose(a, order)
            shape = [1] * len(scope)
            for i in order:
                shape[pos[s[i]]] = a.shape[i]
            joint = mul(joint, arr.reshape(shape))
        dshape = [1] * len(scope)
        dshape[pos[v]] = len(domains[v])
        weighted = domains[v].reshape(dshape)
        joint = weighted if joint is None else joint * weighted
        joint = np.broadcast_to(joint, tuple(len(domains[u]) for u in scope))
        reduced = joint.sum(axis=pos[v])
        new_scope = tuple(u for u in scope if u != v)
        if new_scope:
            live.append((new_scope, np.asarray(reduced)))
        else:
            scalar = mul(scalar, reduced[()] if isinstance(reduced, np.ndarray) else reduced)
        remaining.discard(v)
    for _, a in live:
        scalar = mul(scalar, a[()] if isinstance(a, np.ndarray) else a)
    return scalar


def _scaled_masses(masses) -> tuple[np.ndarray, int]:
    D = rational.common_denominator(masses)
    return np.array([x.numerator * (D // x.denominator) for x in masses], dtype=object), D


def _check_arity(H: Hypergraph, W: SymmetricKernel):
    if H.r != W.r:
        raise InvalidInput(f"kernel arity {W.r} does not match uniformity {H.r}")


def t_bruteforce(H: Hypergraph, W: SymmetricKernel) -> Fraction:
    """Enumerate every atom assignment with exact Fractions (the oracle)."""
    _check_arity(H, W)
    m = W.atom_count
    ops = m**H.n * (H.e + H.n + 1)
    if ops > BRUTEFORCE_OPS_BUDGET:
        raise ResourceLimit(f"brute force needs ~{ops} weighted operations (|atoms|^v(H) too large)")
    total = Fraction(0)
    for phi in itertools.product(range(m), repeat=H.n):
        term = Fraction(1)
        for v in phi:
            term *= W.masses[v]
        for e in H.edges:
            if term == 0:
                break
            term *= W.weight([phi[v] for v in e])
        total += term
    return total


def t_variable_elimination(H: Hypergraph, W: SymmetricKernel, cap: int | None = None) -> Fraction:
    _check_arity(H, W)
    N, Dw = W.scaled_dense()
    M, Dm = _scaled_masses(W.masses)
    value = contract([M] * H.n, [(e, N) for e in H.edges], cap)
    if value is None:
        value = 1
    return Fraction(int(value), Dw**H.e * Dm**H.n)


def t_band_dp(H: Hypergraph, W: SymmetricKernel, layout=None, cap: int | None = None) -> Fraction:
    """Transfer-matrix evaluation for an edge subset of C_ell^(r).

    Vertices are swept in cyclic order carrying the atoms of the last r-1
    vertices, together with the atoms of the first r-1 ("seed") vertices so
    the wrap-around edges can be closed at the end.  Absent edges contribute
    no factor.
    """
    _check_arity(H, W)
    cap = FACTOR_SIZE_CAP if cap is None else cap
    if layout is None:
        layout = tight_cycle_layout(H)
    if layout is None:
        raise InvalidInput("band_dp requires an edge subset of a tight cycle in natural order")
    ell, r, skip = layout
    m = W.atom_count
    w = r - 1
    if m ** (2 * w) > cap:
        raise ResourceLimit(f"band DP state has {m}^{2 * w} entries (cap {cap})")
    N, Dw = W.scaled_dense()
    M, Dm = _scaled_masses(W.masses)
    S = m**w
    # state[seed, x_{v-r+1}, ..., x_{v-1}]
    state = np.zeros((S,) + (m,) * w, dtype=object)
    for s, seed in enumerate(itertools.product(range(m), repeat=w)):
        state[(s,) + seed] = prod((M[a] for a in seed), start=1)
    for v in range(w, ell):
        edge = v - w
        expanded = state[..., None]
        if edge not in skip:
            expanded = expanded * N
        else:
            expanded = np.broadcast_to(expanded, state.shape + (m,))
        state = expanded.sum(axis=1) * M
    # close the wrap-around edges ell-r+1..ell-1 using window and seed atoms
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    if 2 * w > len(letters):
        raise ResourceLimit("uniformity too large for band DP closure")
    seed_lab = {u: letters[u] for u in range(w)}
    win_lab = {ell - w + i: letters[w + i] for i in range(w)}
    operands, subs = [state.reshape((m,) * w + (m,) * w)], [
        "".join(seed_lab[u] for u in range(w)) + "".join(win_lab[ell - w + i] for i in range(w))
    ]
    for i in range(ell - w, ell):
        if i in skip:
            continue
        verts = [(i + j) % ell for j in range(r)]
        subs.append("".join(win_lab[u] if u in win_lab else seed_lab[u] for u in verts))
        operands.append(N)
    value = np.einsum(",".join(subs) + "->", *operands)
    return Fraction(int(value), Dw ** (ell - len(skip)) * Dm**ell)


STRATEGIES = ("bruteforce", "variable_elimination", "band_dp", "auto")


def t_density(H: Hypergraph, W: SymmetricKernel, strategy: str = "auto") -> Fraction:
    """Exact homomorphism density of H in W."""
    if strategy == "bruteforce":
        return t_bruteforce(H, W)
    if strategy == "variable_elimination":
        return t_variable_elimination(H, W)
    if strategy == "band_dp":
        return t_band_dp(H, W)
    if strategy != "auto":
        raise InvalidInput(f"unknown strategy {strategy!r}")
    _check_arity(H, W)
    layout = tight_cycle_layout(H)
    if layout is not None and W.atom_count ** (2 * (H.r - 1)) <= FACTOR_SIZE_CAP:
        return t_band_dp(H, W, layout)
    try:
        return t_variable_elimination(H, W)
    except ResourceLimit:
        return t_bruteforce(H, W)


def edge_density(W: SymmetricKernel) -> Fraction:
    """t_{K_r}(W), the mass-weighted mean weight."""
    m = W.atom_count
    total = Fraction(0)
    for key in itertools.product(range(m), repeat=W.r):
        total += prod((W.masses[a] for a in key), start=Fraction(1)) * W.weight(key)
    return total


# ---------------------------------------------------------------- bipartite kernels


@dataclass(frozen=True)
class BipartiteKernel:
    """Two-variable kernel f(x, y) with x in a left and y in a right atom space."""

    left_masses: tuple[Fraction, ...]
    right_masses: tuple[Fraction, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        for ms in (self.left_masses, self.right_masses):
            if sum(ms) != 1 or any(x <= 0 for x in ms):
                raise InvalidInput("bipartite kernel masses must be positive and sum to 1")
        if len(self.matrix) != len(self.left_masses) or any(
            len(row) != len(self.right_masses) for row in self.matrix
        ):
            raise InvalidInput("matrix shape does not match the atom spaces")

    @classmethod
    def create(cls, left_masses, right_masses, matrix) -> "BipartiteKernel":
        conv = rational.to_fraction
        return cls(
            tuple(conv(x) for x in left_masses),
            tuple(conv(x) for x in right_masses),
            tuple(tuple(conv(x) for x in row) for row in matrix),
        )

    @classmethod
    def from_symmetric(cls, f: SymmetricKernel) -> "BipartiteKernel":
        if f.r != 2:
            raise InvalidInput("only 2-variable kernels can be read as bipartite")
        m = f.atom_count
        return cls(f.masses, f.masses, tuple(tuple(f.weight((i, j)) for j in range(m)) for i in range(m)))

    def to_dict(self) -> dict:
        return {
            "left_masses": [rational.fmt(x) for x in self.left_masses],
            "right_masses": [rational.fmt(x) for x in self.right_masses],
            "matrix": [[rational.fmt(x) for x in row] for row in self.matrix],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BipartiteKernel":
        p = rational.parse
        return cls.create(
            [p(x) for x in data["left_masses"]],
            [p(x) for x in data["right_masses"]],
            [[p(x) for x in row] for row in data["matrix"]],
        )


def t_bipartite(G: Hypergraph, f: BipartiteKernel, left: set[int], strategy: str = "auto") -> Fraction:
    """Density of a bipartite 2-graph G whose ``left`` vertices map to f's left space."""
    if G.r != 2:
        raise InvalidInput("t_bipartite needs a 2-graph")
    for a, b in G.edges:
        if (a in left) == (b in left):
            raise InvalidInput(f"edge {(a, b)} does not cross the bipartition")
    if strategy == "bruteforce":
        spaces = [f.left_masses if v in left else f.right_masses for v in range(G.n)]
        total = Fraction(0)
        for phi in itertools.product(*[range(len(s)) for s in spaces]):
            term = prod((spaces[v][phi[v]] for v in range(G.n)), start=Fraction(1))
            for a, b in G.edges:
                if a not in left:
                    a, b = b, a
                term *= f.matrix[phi[a]][phi[b]]
            total += term
        return total
    ML, DL = _scaled_masses(f.left_masses)
    MR, DR = _scaled_masses(f.right_masses)
    Dw = rational.common_denominator(x for row in f.matrix for x in row)
    Nw = np.array([[x.numerator * (Dw // x.denominator) for x in row] for row in f.matrix], dtype=object)
    factors = []
    for a, b in G.edges:
        factors.append(((a, b), Nw) if a in left else ((a, b), Nw.T))
    domains = [ML if v in left else MR for v in range(G.n)]
    value = contract(domains, factors)
    nleft = sum(1 for v in range(G.n) if v in left)
    if value is None:
        value = 1
    return Fraction(int(value), Dw**G.e * DL**nleft * DR ** (G.n - nleft))


# ---------------------------------------------------------------- W-random hypergraphs


def _check_probability_kernel(W: SymmetricKernel):
    for key, val in W.items():
        if not 0 <= val <= 1:
            raise InvalidInput(f"weight {val} at {key} is not a probability")


def sample_hypergraph(W: SymmetricKernel, n: int, seed) -> Hypergraph:
    """W-random r-graph on n vertices.

    Each vertex draws an atom by mass, then every r-subset becomes an edge
    independently with probability W at its atoms.  Uses numpy's PCG64 so a
    given seed reproduces the same hypergraph on every platform.
    """
    _check_probability_kernel(W)
    if n < W.r:
        raise InvalidInput("need n >= r")
    rng = np.random.Generator(np.random.PCG64(seed))
    return _sample(W, n, rng)


def _sample(W: SymmetricKernel, n: int, rng: np.random.Generator) -> Hypergraph:
    p = np.array([float(x) for x in W.masses])
    atoms = rng.choice(W.atom_count, size=n, p=p / p.sum())
    probs = np.array(W.dense, dtype=float)
    tuples = _subsets(n, W.r)
    edge_p = probs[tuple(atoms[tuples[:, i]] for i in range(W.r))]
    keep = rng.random(len(tuples)) < edge_p
    return Hypergraph(W.r, n, tuple(map(tuple, tuples[keep].tolist())))


@lru_cache(maxsize=8)
def _subsets(n: int, r: int) -> np.ndarray:
    out = np.array(list(itertools.combinations(range(n), r)), dtype=np.int64).reshape(-1, r)
    out.flags.writeable = False
    return out


def _adjacency(G: Hypergraph, dtype) -> np.ndarray:
    A = np.zeros((G.n,) * G.r, dtype=dtype)
    if G.e:
        E = np.array(G.edges, dtype=np.int64)
        for perm in itertools.permutations(range(G.r)):
            A[tuple(E[:, i] for i in perm)] = 1
    return A


def hom_density_in_graph(H: Hypergraph, G: Hypergraph) -> float:
    """Floating-point t_H(G) for a hypergraph G (uniform vertex weights)."""
    if H.r != G.r:
        raise InvalidInput("uniformity mismatch")
    n = G.n
    A = _adjacency(G, float)
    dom = np.full(n, 1.0 / n)
    value = contract([dom] * H.n, [(e, A) for e in H.edges])
    return 1.0 if value is None else float(value)


INJECTIVE_PARTITION_CAP = 50_000


def _edge_safe_partitions(H: Hypergraph):
    """Set partitions of V(H) (as block labels) in which no edge has two
    vertices in the same block; other partitions give zero homomorphisms."""
    clash = [set() for _ in range(H.n)]
    for e in H.edges:
        for u in e:
            clash[u].update(w for w in e if w != u)
    label = [0] * H.n
    blocks: list[list[int]] = []
    count = 0

    def rec(v):
        nonlocal count
        if v == H.n:
            count += 1
            if count > INJECTIVE_PARTITION_CAP:
                raise ResourceLimit("too many vertex partitions for the injective density")
            yield list(label), [len(b) for b in blocks]
            return
        for b, members in enumerate(blocks):
            if not clash[v].intersection(members):
                label[v] = b
                members.append(v)
                yield from rec(v + 1)
                members.pop()
        label[v] = len(blocks)
        blocks.append([v])
        yield from rec(v + 1)
        blocks.pop()

    yield from rec(0)


def injective_density_in_graph(H: Hypergraph, G: Hypergraph) -> float:
    """inj(H, G) / (n)_{v(H)}: the density over injective vertex maps.

    For a W-random G its expectation is exactly t_H(W), unlike t_H(G) which
    carries an O(1/n) deficit from maps that identify vertices.  Computed by
    Moebius inversion over the partitions of V(H).
    """
    if H.r != G.r:
        raise InvalidInput("uniformity mismatch")
    n = G.n
    if n < H.n:
        raise InvalidInput("G has fewer vertices than H")
    A = _adjacency(G, float)
    ones = np.ones(n)
    total = 0.0
    for label, sizes in _edge_safe_partitions(H):
        mu = math.prod((-1) ** (s - 1) * math.factorial(s - 1) for s in sizes)
        edges = [tuple(label[v] for v in e) for e in H.edges]
        value = contract([ones] * len(sizes), [(e, A) for e in edges])
        total += mu * (n ** len(sizes) if value is None else float(value))
    return total / math.perm(n, H.n)


def exact_density_in_graph(H: Hypergraph, G: Hypergraph) -> Fraction:
    """Exact t_H(G) = hom(H, G) / v(G)^v(H)."""
    if H.r != G.r:
        raise InvalidInput("uniformity mismatch")
    n = G.n
    A = _adjacency(G, object)
    dom = np.ones(n, dtype=object)
    value = contract([dom] * H.n, [(e, A) for e in H.edges])
    return Fraction(1 if value is None else int(value), n**H.n)


@dataclass(frozen=True)
class DensityEstimate:
    mean: float
    stderr: float
    trials: int
    samples: tuple[float, ...] = field(repr=False)


def estimate_density(H: Hypergraph, W: SymmetricKernel, n: int, trials: int, seed,
                     injective: bool = True) -> DensityEstimate:
    """Monte-Carlo mean over independent W-random samples G_n.

    By default each sample contributes its injective density, an unbiased
    estimate of t_H(W).  With ``injective=False`` it contributes t_H(G_n)
    itself, which converges to the same limit but sits O(1/n) low because
    maps sending two vertices of an edge to one vertex never hit an edge.
    Trial i uses the generator seeded with (seed, i), so results do not
    depend on scheduling.
    """
    _check_arity(H, W)
    _check_probability_kernel(W)
    if trials < 2:
        raise InvalidInput("need at least two trials for a standard error")
    values = []
    for i in range(trials):
        rng = np.random.Generator(np.random.PCG64([int(seed), i]))
        G = _sample(W, n, rng)
        values.append(injective_density_in_graph(H, G) if injective else hom_density_in_graph(H, G))
    arr = np.array(values)
    return DensityEstimate(float(arr.mean()), float(arr.std(ddof=1) / np.sqrt(trials)), trials, tuple(values))
