"""Counterexample kernels, exact non-Sidorenko certificates and the
extremal-number exponent gained from them.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from . import rational
from . import density
from .density import (
    SymmetricKernel,
    edge_density,
    exact_density_in_graph,
    sample_hypergraph,
    t_density,
)
from .errors import Inconclusive, InvalidInput, ResourceLimit
from .hypergraph import Hypergraph, make_tight_cycle
from .kappa import (
    NegativityCertificate,
    best_negative_point,
    eval_poly,
    find_negative_point,
    kappa_tight_cycle_dp,
    probe_catalogue,
    tight_cycle_layout,
)

MAX_HALVINGS = 60


# ---------------------------------------------------------------- kernels


def _sign(atom: int) -> int:
    # atom 0 is +1, atom 1 is -1
    return 1 - 2 * atom


def linear_girth_kernel(r: int, c) -> SymmetricKernel:
    """Weight 1 - c * sum_{i<j} x_i x_j on {+1, -1}^r with uniform masses."""
    return s_parity_kernel(r, 2, c)


def s_parity_kernel(r: int, s: int, c) -> SymmetricKernel:
    """Weight 1 - c * (sum of all degree-s monomials in x_1..x_r), x_i = +-1."""
    c = rational.to_fraction(c)
    if r < 2 or not 2 <= s <= r:
        raise InvalidInput("need 2 <= s <= r")
    if not 0 < c <= Fraction(1, comb(r, s)):
        raise InvalidInput(f"c must lie in (0, 1/C({r},{s})]")

    def weight(*atoms):
        xs = [_sign(a) for a in atoms]
        return 1 - c * sum(math.prod(sub) for sub in combinations(xs, s))

    return SymmetricKernel.from_function(r, [Fraction(1, 2)] * 2, weight, "nonnegative")


@dataclass(frozen=True)
class AtomFunction:
    """A one-variable function on a finite atom space."""

    values: tuple[Fraction, ...]
    masses: tuple[Fraction, ...]

    def moment(self, d: int) -> Fraction:
        return sum((m * v**d for v, m in zip(self.values, self.masses)), Fraction(0))

    @property
    def mean(self) -> Fraction:
        return self.moment(1)


def feps_atoms(eps) -> AtomFunction:
    """Value eps with mass 1/(1+eps) and value -1 with mass eps/(1+eps)."""
    eps = rational.to_fraction(eps)
    if not 0 < eps < 1:
        raise InvalidInput("eps must lie in (0, 1)")
    return AtomFunction((eps, Fraction(-1)), (1 / (1 + eps), eps / (1 + eps)))


def g_kernel(r: int, eps) -> SymmetricKernel:
    """Product kernel prod_i f_eps(x_i); zero-averaging by construction."""
    f = feps_atoms(eps)
    return SymmetricKernel.from_function(
        r, f.masses, lambda *a: math.prod((f.values[i] for i in a), start=Fraction(1)), "signed_unit"
    )


def h_kernel(r: int, eps, c) -> SymmetricKernel:
    """1 + c * g_eps: weight 1 + c (-1)^j eps^(r-j) with j copies of the -1 atom."""
    c = rational.to_fraction(c)
    if not 0 < c <= 1:
        raise InvalidInput("c must lie in (0, 1]")
    f = feps_atoms(eps)
    W = SymmetricKernel.from_function(
        r, f.masses, lambda *a: 1 + c * math.prod((f.values[i] for i in a), start=Fraction(1))
    )
    # nonnegativity is checked on the actual weights, not inferred from c
    return SymmetricKernel(r, W.masses, dict(W.items()), "nonnegative")


def kernel_from_descriptor(desc: dict) -> SymmetricKernel:
    family = desc.get("family")
    if family is None:
        return SymmetricKernel.from_dict(desc)
    p = rational.parse
    if family == "h":
        return h_kernel(desc["r"], p(desc["eps"]), p(desc["c"]))
    if family == "g":
        return g_kernel(desc["r"], p(desc["eps"]))
    if family == "linear-girth":
        return linear_girth_kernel(desc["r"], p(desc["c"]))
    if family == "s-parity":
        return s_parity_kernel(desc["r"], desc["s"], p(desc["c"]))
    if family == "constant":
        return SymmetricKernel.constant(desc["r"], p(desc["value"]))
    raise InvalidInput(f"unknown kernel family {family!r}")


# ---------------------------------------------------------------- certificates


@dataclass
class SidorenkoCertificate:
    H: Hypergraph
    kernel: dict
    t_H: Fraction
    edge_density: Fraction
    rhs: Fraction
    margin: Fraction
    verdict: str
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "H": self.H.to_dict(),
            "kernel": self.kernel,
            "t_H": rational.fmt(self.t_H),
            "edge_density": rational.fmt(self.edge_density),
            "rhs": rational.fmt(self.rhs),
            "margin": rational.fmt(self.margin),
            "verdict": self.verdict,
        }
        out.update(self.extra)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "SidorenkoCertificate":
        known = {"H", "kernel", "t_H", "edge_density", "rhs", "margin", "verdict"}
        try:
            return cls(
                Hypergraph.from_dict(data["H"]),
                data["kernel"],
                rational.parse(data["t_H"]),
                rational.parse(data["edge_density"]),
                rational.parse(data["rhs"]),
                rational.parse(data["margin"]),
                data["verdict"],
                {k: v for k, v in data.items() if k not in known},
            )
        except KeyError as exc:
            raise InvalidInput(f"certificate missing field {exc}") from exc


def certify_non_sidorenko(H: Hypergraph, W: SymmetricKernel, descriptor: dict | None = None,
                          strategy: str = "auto") -> SidorenkoCertificate:
    """Compare t_H(W) with t_{K_r}(W)^e(H) exactly."""
    if H.r != W.r:
        raise InvalidInput("kernel arity does not match the hypergraph")
    if any(w < 0 for _, w in W.items()):
        raise InvalidInput("certificates need a nonnegative kernel")
    lhs = t_density(H, W, strategy)
    alpha = edge_density(W)
    rhs = alpha**H.e
    margin = rhs - lhs
    verdict = "not_sidorenko" if margin > 0 else "inconclusive_witness"
    return SidorenkoCertificate(H, descriptor or W.to_dict(), lhs, alpha, rhs, margin, verdict)


def verify_certificate(data: dict) -> SidorenkoCertificate:
    """Recompute a serialised certificate from its hypergraph and kernel."""
    stored = SidorenkoCertificate.from_dict(data)
    fresh = certify_non_sidorenko(stored.H, kernel_from_descriptor(stored.kernel), stored.kernel)
    for name in ("t_H", "edge_density", "rhs", "margin", "verdict"):
        if getattr(fresh, name) != getattr(stored, name):
            raise InvalidInput(f"certificate field {name} does not re-verify")
    return fresh


def _family_catalogue(layout) -> list:
    ell, r, skip = layout
    if not skip:
        return probe_catalogue(ell, r)
    if len(skip) == 1:
        return probe_catalogue(ell, r, minus_edge=True)
    return []


def auto_witness_tight_cycle(H: Hypergraph, grid_n: int = 1000,
                             max_halvings: int = MAX_HALVINGS) -> SidorenkoCertificate:
    """Certify that an edge subset of an odd-uniformity tight cycle is not Sidorenko.

    Picks c from the most negative probe of P_H (grid fallback), then tries
    h_{eps,c} with eps = 1/2, 1/4, ... until the exact margin is positive.
    """
    layout = tight_cycle_layout(H)
    if layout is None:
        raise InvalidInput("H must be an edge subset of a tight cycle in natural vertex order")
    ell, r, skip = layout
    if r % 2 == 0:
        raise InvalidInput("the census criterion needs odd uniformity")
    P = kappa_tight_cycle_dp(ell, r, skip)
    point = best_negative_point(P, _family_catalogue(layout), grid_n)
    if point is None:
        raise Inconclusive("criterion_inconclusive", "no negative point of P_H found on the probe grid")
    c = -point.point
    if 2 ** (2 * (r - 1)) > density.FACTOR_SIZE_CAP:
        raise ResourceLimit(f"band DP for r={r} exceeds the state budget")
    eps = Fraction(1, 2)
    for halvings in range(max_halvings + 1):
        desc = {"family": "h", "r": r, "eps": rational.fmt(eps), "c": rational.fmt(c)}
        cert = certify_non_sidorenko(H, h_kernel(r, eps, c), desc, strategy="band_dp")
        if cert.verdict == "not_sidorenko":
            cert.extra = {
                "c": rational.fmt(c),
                "eps": rational.fmt(eps),
                "halvings": halvings,
                "negative_point": rational.fmt(point.point),
                "P_value": rational.fmt(point.value),
                "probe": point.provenance,
            }
            return cert
        eps /= 2
    raise Inconclusive("epsilon_search_exhausted", f"no certificate after {max_halvings} halvings")


# ---------------------------------------------------------------- deletion bound


def _log(q: Fraction) -> float:
    q = Fraction(q)
    if q <= 0:
        raise InvalidInput("logarithm of a non-positive number")
    return math.log(q.numerator) - math.log(q.denominator)


@dataclass
class DeletionBoundReport:
    r: int
    e_H: int
    v_H: int
    v_G: int
    alpha0: Fraction
    beta0: Fraction
    c_prime: float
    c_prime_expr: str
    c: float
    baseline_exponent: float
    improved_exponent: float
    size_condition_met: bool
    blowup_factor: int
    verdict: str
    p_relation: str = "(p*alpha)^(e(H)-1) = n^(r + c' - v(H)) / (2 * r!)"
    gamma_note: str = "gamma > 0 is an absolute constant from the deletion argument; not computed"

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "e_H": self.e_H,
            "v_H": self.v_H,
            "v_G": self.v_G,
            "alpha0": rational.fmt(self.alpha0),
            "beta0": rational.fmt(self.beta0),
            "c_prime": repr(self.c_prime),
            "c_prime_expr": self.c_prime_expr,
            "c": repr(self.c),
            "baseline_exponent": repr(self.baseline_exponent),
            "improved_exponent": repr(self.improved_exponent),
            "size_condition_met": self.size_condition_met,
            "blowup_factor": self.blowup_factor,
            "verdict": self.verdict,
            "p_relation": self.p_relation,
            "gamma_note": self.gamma_note,
        }


def deletion_exponents(r: int, e_H: int, v_H: int, v_G: int, alpha0, beta0) -> DeletionBoundReport:
    """Exponent gain from a graph G with t_{K_r}(G) = alpha0 and t_H(G) = beta0.

    c' = (e(H) log alpha0 - log beta0) / log v(G) and the lower-bound exponent
    becomes r - (v(H) - r)/(e(H) - 1) + c'/(e(H) - 1).
    """
    alpha0, beta0 = rational.to_fraction(alpha0), rational.to_fraction(beta0)
    if e_H < 2:
        raise InvalidInput("need e(H) >= 2")
    if v_G < 2:
        raise InvalidInput("need v(G) >= 2")
    if alpha0 <= 0 or beta0 <= 0:
        raise InvalidInput("alpha0 and beta0 must be positive")
    ratio = alpha0**e_H / beta0
    if ratio == 1:
        c_prime = 0.0
    else:
        c_prime = _log(ratio) / math.log(v_G)
    baseline = r - (v_H - r) / (e_H - 1)
    gain = c_prime / (e_H - 1)
    threshold = Fraction(1, v_G ** (v_H - r)) if v_H >= r else Fraction(v_G ** (r - v_H))
    met = beta0 / alpha0 >= threshold
    # densities are blow-up invariant while v(G) grows, so a t-fold blow-up
    # meets the condition once (t v(G))^(v(H)-r) >= alpha0/beta0
    t = 1
    if not met:
        while Fraction((t * v_G) ** (v_H - r)) < alpha0 / beta0:
            t += 1
    expr = (
        f"({e_H}*log({rational.fmt(alpha0)}) - log({rational.fmt(beta0)})) / log({v_G})"
    )
    return DeletionBoundReport(
        r=r, e_H=e_H, v_H=v_H, v_G=v_G, alpha0=alpha0, beta0=beta0,
        c_prime=c_prime, c_prime_expr=expr, c=gain,
        baseline_exponent=baseline, improved_exponent=baseline + gain,
        size_condition_met=met, blowup_factor=t,
        verdict="gain" if ratio > 1 else "no_gain",
    )


def deletion_bound(H: Hypergraph, G, sample_n: int | None = None, seed=None) -> DeletionBoundReport:
    """Deletion-method exponent from a concrete host G.

    G may be a hypergraph or a kernel.  A kernel is used directly as a
    weighted graph on its atoms unless ``sample_n`` is given, in which case a
    W-random hypergraph on ``sample_n`` vertices is drawn with ``seed``.
    """
    if isinstance(G, SymmetricKernel):
        if sample_n is not None:
            if seed is None:
                raise InvalidInput("sampling a host graph needs a seed")
            G = sample_hypergraph(G, sample_n, seed)
        else:
            if G.r != H.r:
                raise InvalidInput("arity mismatch")
            return deletion_exponents(H.r, H.e, H.n, G.atom_count, edge_density(G), t_density(H, G))
    if G.r != H.r:
        raise InvalidInput("uniformity mismatch")
    alpha0 = Fraction(factorial(G.r) * G.e, G.n**G.r)
    beta0 = exact_density_in_graph(H, G)
    return deletion_exponents(H.r, H.e, H.n, G.n, alpha0, beta0)


# ---------------------------------------------------------------- scan


@dataclass
class ScanRow:
    k: int
    r: int
    point: Fraction | None
    value: Fraction | None
    provenance: str
    certificate: str

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "r": self.r,
            "x": None if self.point is None else rational.fmt(self.point),
            "P_x": None if self.value is None else rational.fmt(self.value),
            "probe": self.provenance,
            "certificate": self.certificate,
        }


def _scan_row(args) -> ScanRow:
    k, r, certify, grid_n = args
    ell = k * r
    P = kappa_tight_cycle_dp(ell, r)
    cert: NegativityCertificate | None = find_negative_point(P, probe_catalogue(ell, r), grid_n)
    status = "not_requested"
    if certify:
        if cert is None:
            status = "criterion_inconclusive"
        else:
            try:
                auto_witness_tight_cycle(make_tight_cycle(ell, r), grid_n)
                status = "certified"
            except Inconclusive as exc:
                status = exc.reason
            except ResourceLimit:
                status = "resource_limit"
    if cert is None:
        return ScanRow(k, r, None, None, "none", status)
    return ScanRow(k, r, cert.point, cert.value, cert.provenance, status)


def scan_tight_cycles(max_vertices: int, certify: bool = False, grid_n: int = 1000,
                      workers: int = 1) -> list[ScanRow]:
    """Negativity of P for C_kr^(r), odd r >= 3, k >= 2, kr <= max_vertices."""
    if max_vertices > 42:
        raise InvalidInput("scan supports max_vertices <= 42")
    jobs = [
        (k, r, certify, grid_n)
        for r in range(3, max_vertices // 2 + 1, 2)
        for k in range(2, max_vertices // r + 1)
    ]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(_scan_row, jobs))
    return [_scan_row(j) for j in jobs]


def girth_expansion(H: Hypergraph, make_kernel, degree: int) -> list[Fraction]:
    """Coefficients of the polynomial c -> t_H(make_kernel(c)).

    The density is a polynomial in c of degree at most ``degree``; it is
    recovered exactly by Lagrange interpolation at c = 1/(d+2), d = 0..degree.
    """
    xs = [Fraction(1, d + 2) * Fraction(1, 100) for d in range(degree + 1)]
    ys = [t_density(H, make_kernel(x)) for x in xs]
    coeffs = [Fraction(0)] * (degree + 1)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xj * basis[d + 1]
            denom *= xi - xj
        for d in range(degree + 1):
            coeffs[d] += yi * basis[d] / denom
    return coeffs
