"""Uniform hypergraphs and the named families used throughout the package.

A hypergraph is stored canonically: vertices are the integers ``0..n-1``
(isolated vertices allowed), every edge is a strictly increasing tuple of
``r`` vertices and the edge list is sorted without duplicates.  Subgraphs are
always taken on the parent vertex set, so deleting edges never renumbers
vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .errors import InvalidInput


@dataclass(frozen=True)
class Hypergraph:
    r: int
    n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.r < 2:
            raise InvalidInput(f"uniformity must be >= 2, got {self.r}")
        if self.n < 0:
            raise InvalidInput("vertex count must be non-negative")
        prev = None
        for e in self.edges:
            if len(e) != self.r:
                raise InvalidInput(f"edge {e} does not have {self.r} vertices")
            if any(e[i] >= e[i + 1] for i in range(len(e) - 1)):
                raise InvalidInput(f"edge {e} is not strictly increasing")
            if e[0] < 0 or e[-1] >= self.n:
                raise InvalidInput(f"edge {e} has a vertex outside [0, {self.n})")
            if prev is not None and e <= prev:
                raise InvalidInput("edge list must be sorted and duplicate-free")
            prev = e

    @classmethod
    def from_edges(cls, r: int, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        """Build a hypergraph from edges in any order; duplicates are rejected."""
        canon = [tuple(sorted(int(v) for v in e)) for e in edges]
        for e in canon:
            if len(set(e)) != len(e):
                raise InvalidInput(f"edge {e} has a repeated vertex")
        if len(set(canon)) != len(canon):
            raise InvalidInput("duplicate edge")
        return cls(r, n, tuple(sorted(canon)))

    @property
    def e(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def subgraph(self, edge_indices: Iterable[int]) -> "Hypergraph":
        """Edge-subset subgraph on the full vertex set."""
        idx = sorted(set(edge_indices))
        return Hypergraph(self.r, self.n, tuple(self.edges[i] for i in idx))

    def support(self) -> "Hypergraph":
        """Drop isolated vertices, relabelling the rest in increasing order."""
        used = sorted({v for e in self.edges for v in e})
        relabel = {v: i for i, v in enumerate(used)}
        return Hypergraph.from_edges(
            self.r, len(used), ([relabel[v] for v in e] for e in self.edges)
        )

    def to_dict(self) -> dict:
        return {"r": self.r, "n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> "Hypergraph":
        try:
            r, n, edges = data["r"], data["n"], data["edges"]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"hypergraph record missing field: {exc}") from exc
        if not all(isinstance(x, int) for x in (r, n)):
            raise InvalidInput("r and n must be integers")
        return cls(r, n, tuple(tuple(e) for e in edges))


# ---------------------------------------------------------------- families


def make_tight_cycle(ell: int, r: int) -> Hypergraph:
    """Tight cycle on ``ell`` vertices: edge i is {i, i+1, ..., i+r-1} mod ell."""
    if r < 2:
        raise InvalidInput("r must be >= 2")
    if ell <= r:
        raise InvalidInput(f"tight cycle needs ell >= r+1 (got ell={ell}, r={r})")
    return Hypergraph.from_edges(r, ell, ([(i + j) % ell for j in range(r)] for i in range(ell)))


def tight_cycle_edge(ell: int, r: int, i: int) -> tuple[int, ...]:
    return tuple(sorted((i + j) % ell for j in range(r)))


def make_tight_cycle_minus_edge(ell: int, r: int, index: int = 0) -> Hypergraph:
    """Tight cycle with the window starting at ``index`` deleted."""
    H = make_tight_cycle(ell, r)
    return remove_edge(H, H.edges.index(tight_cycle_edge(ell, r, index)))


def make_loose_cycle(g: int, r: int) -> Hypergraph:
    """Loose cycle with ``g`` edges: consecutive edges share one vertex."""
    if g < 3:
        raise InvalidInput("a loose cycle needs at least 3 edges")
    if r < 2:
        raise InvalidInput("r must be >= 2")
    n = g * (r - 1)
    edges = [[(i * (r - 1) + j) % n for j in range(r)] for i in range(g)]
    return Hypergraph.from_edges(r, n, edges)


def make_loose_triangle(r: int = 3) -> Hypergraph:
    return make_loose_cycle(3, r)


def make_grid(r: int) -> Hypergraph:
    """The r x r grid: vertices are grid points, edges the 2r rows and columns."""
    if r < 2:
        raise InvalidInput("grid needs r >= 2")
    rows = [[i * r + j for j in range(r)] for i in range(r)]
    cols = [[i * r + j for i in range(r)] for j in range(r)]
    return Hypergraph.from_edges(r, r * r, rows + cols)


def make_half_octahedron() -> Hypergraph:
    # {1,3,5}, {1,4,6}, {2,3,6}, {2,4,5} shifted to 0-indexing
    return Hypergraph.from_edges(3, 6, [(0, 2, 4), (0, 3, 5), (1, 2, 5), (1, 3, 4)])


def make_single_edge(r: int) -> Hypergraph:
    return Hypergraph.from_edges(r, r, [range(r)])


def remove_edge(H: Hypergraph, index: int) -> Hypergraph:
    if not 0 <= index < H.e:
        raise InvalidInput(f"edge index {index} out of range [0, {H.e})")
    return Hypergraph(H.r, H.n, H.edges[:index] + H.edges[index + 1:])


def add_edge(H: Hypergraph, edge: Sequence[int]) -> Hypergraph:
    return Hypergraph.from_edges(H.r, H.n, list(H.edges) + [edge])


def disjoint_union(parts: Sequence[Hypergraph]) -> Hypergraph:
    if not parts:
        raise InvalidInput("disjoint_union needs at least one part")
    r = parts[0].r
    if any(p.r != r for p in parts):
        raise InvalidInput("mixed uniformity in disjoint_union")
    edges, offset = [], 0
    for p in parts:
        edges.extend([v + offset for v in e] for e in p.edges)
        offset += p.n
    return Hypergraph.from_edges(r, offset, edges)


def levi_graph(H: Hypergraph) -> Hypergraph:
    """Bipartite incidence graph; vertex v stays v, edge j becomes vertex n + j."""
    edges = [(v, H.n + j) for j, e in enumerate(H.edges) for v in e]
    return Hypergraph.from_edges(2, H.n + H.e, edges)


def skeleton(H: Hypergraph, s: int) -> Hypergraph:
    """Replace every r-edge by all of its s-subsets (deduplicated)."""
    if not 2 <= s <= H.r:
        raise InvalidInput(f"skeleton needs 2 <= s <= r, got s={s}")
    edges = {sub for e in H.edges for sub in combinations(e, s)}
    return Hypergraph(s, H.n, tuple(sorted(edges)))


# ---------------------------------------------------------------- predicates


def is_linear(H: Hypergraph) -> bool:
    seen = set()
    for e in H.edges:
        for pair in combinations(e, 2):
            if pair in seen:
                return False
            seen.add(pair)
    return True


def has_degree_one_vertex(H: Hypergraph) -> bool:
    return 1 in H.degrees()


def levi_nx(H: Hypergraph) -> nx.Graph:
    """Levi graph as a networkx graph with a ``side`` node attribute."""
    G = nx.Graph()
    G.add_nodes_from(range(H.n), side=0)
    G.add_nodes_from(range(H.n, H.n + H.e), side=1)
    G.add_edges_from((v, H.n + j) for j, e in enumerate(H.edges) for v in e)
    return G


def is_two_connected(H: Hypergraph) -> bool:
    """2-connectivity of the edge support (isolated vertices are ignored).

    For r >= 3 this is tested on the Levi graph, which is 2-connected exactly
    when no single vertex or edge removal disconnects the hypergraph.
    """
    if H.e == 0:
        return False
    S = H.support()
    if S.r == 2:
        G = nx.Graph(list(S.edges))
    else:
        G = levi_nx(S)
    return G.number_of_nodes() >= 2 and nx.is_biconnected(G)


def are_isomorphic(A: Hypergraph, B: Hypergraph) -> bool:
    if (A.r, A.n, A.e) != (B.r, B.n, B.e) or sorted(A.degrees()) != sorted(B.degrees()):
        return False
    match = nx.algorithms.isomorphism.categorical_node_match("side", None)
    return nx.is_isomorphic(levi_nx(A), levi_nx(B), node_match=match)


# ---------------------------------------------------------------- girth


@dataclass(frozen=True)
class GirthReport:
    girth: int
    shortest_cycle_count: int
    all_shortest_loose: bool


def _shortest_cycles(adj: list[list[int]], length: int) -> list[list[int]]:
    """All simple cycles of the given length, each listed once (min vertex first)."""
    found = []
    for s in range(len(adj)):
        path = [s]
        on_path = {s}

        def extend(u):
            if len(path) == length:
                if s in adj[u] and path[1] < path[-1]:
                    found.append(list(path))
                return
            for w in adj[u]:
                if w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    path.pop()
                    on_path.discard(w)

        extend(s)
    return found


def _levi_girth(adj: list[list[int]]) -> int | None:
    best = None
    for s in range(len(adj)):
        dist, parent = {s: 0}, {s: -1}
        queue = [s]
        for u in queue:
            for w in adj[u]:
                if w not in dist:
                    dist[w], parent[w] = dist[u] + 1, u
                    queue.append(w)
                elif parent[u] != w:
                    L = dist[u] + dist[w] + 1
                    if best is None or L < best:
                        best = L
    return best


def berge_girth(H: Hypergraph) -> GirthReport:
    """Shortest Berge cycle length and the number of shortest cycles.

    A Berge cycle with g edges is a 2g-cycle in the Levi graph, so the
    search runs there.  ``all_shortest_loose`` is False when some shortest
    cycle has non-consecutive edges meeting, i.e. the Berge and loose notions
    disagree at minimum length.
    """
    if not is_linear(H):
        raise InvalidInput("berge_girth requires a linear hypergraph")
    L = levi_graph(H)
    adj = [[] for _ in range(L.n)]
    for a, b in L.edges:
        adj[a].append(b)
        adj[b].append(a)
    girth2 = _levi_girth(adj)
    if girth2 is None:
        raise InvalidInput("hypergraph has no cycle")
    cycles = _shortest_cycles(adj, girth2)
    g = girth2 // 2
    loose = True
    for cyc in cycles:
        edge_ids = [x - H.n for x in cyc if x >= H.n]
        sets = [set(H.edges[j]) for j in edge_ids]
        for i in range(g):
            for j in range(i + 1, g):
                inter = len(sets[i] & sets[j])
                consecutive = j == i + 1 or (i == 0 and j == g - 1)
                if inter != (1 if consecutive else 0):
                    loose = False
    return GirthReport(g, len(cycles), loose)


# ---------------------------------------------------------------- catalog


FAMILIES = {
    "tight-cycle": {
        "params": {"ell": "int >= r+1", "r": "int >= 2"},
        "build": lambda p: make_tight_cycle(p["ell"], p["r"]),
        "minimal": {"ell": 3, "r": 2},
    },
    "tight-cycle-minus-edge": {
        "params": {"ell": "int >= r+1", "r": "int >= 2", "index": "int, default 0"},
        "build": lambda p: make_tight_cycle_minus_edge(p["ell"], p["r"], p.get("index", 0)),
        "minimal": {"ell": 3, "r": 2},
    },
    "loose-cycle": {
        "params": {"g": "int >= 3", "r": "int >= 2"},
        "build": lambda p: make_loose_cycle(p["g"], p["r"]),
        "minimal": {"g": 3, "r": 2},
    },
    "loose-triangle": {
        "params": {"r": "int >= 2, default 3"},
        "build": lambda p: make_loose_triangle(p.get("r", 3)),
        "minimal": {"r": 2},
    },
    "grid": {
        "params": {"r": "int >= 2"},
        "build": lambda p: make_grid(p["r"]),
        "minimal": {"r": 2},
    },
    "half-octahedron": {
        "params": {},
        "build": lambda p: make_half_octahedron(),
        "minimal": {},
    },
    "single-edge": {
        "params": {"r": "int >= 2"},
        "build": lambda p: make_single_edge(p["r"]),
        "minimal": {"r": 2},
    },
    "levi-of": {
        "params": {"of": "family spec {family, params}"},
        "build": lambda p: levi_graph(build_family(p["of"]["family"], p["of"].get("params", {}))),
        "minimal": {"of": {"family": "half-octahedron", "params": {}}},
    },
    "disjoint-union": {
        "params": {"parts": "list of family specs {family, params}"},
        "build": lambda p: disjoint_union(
            [build_family(q["family"], q.get("params", {})) for q in p["parts"]]
        ),
        "minimal": {"parts": [{"family": "single-edge", "params": {"r": 2}}]},
    },
}


def build_family(name: str, params: dict) -> Hypergraph:
    if name not in FAMILIES:
        raise InvalidInput(f"unknown family {name!r}")
    try:
        return FAMILIES[name]["build"](params)
    except KeyError as exc:
        raise InvalidInput(f"family {name!r} missing parameter {exc}") from exc


def catalog() -> list[dict]:
    return [
        {"family": name, "params": spec["params"], "minimal": spec["minimal"]}
        for name, spec in sorted(FAMILIES.items())
    ]
