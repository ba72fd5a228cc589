import pytest
from hypothesis import given, strategies as st

from hypersido.errors import InvalidInput
from hypersido.hypergraph import (
    FAMILIES,
    Hypergraph,
    add_edge,
    are_isomorphic,
    berge_girth,
    build_family,
    catalog,
    disjoint_union,
    has_degree_one_vertex,
    is_linear,
    is_two_connected,
    levi_graph,
    make_grid,
    make_half_octahedron,
    make_loose_cycle,
    make_loose_triangle,
    make_single_edge,
    make_tight_cycle,
    make_tight_cycle_minus_edge,
    remove_edge,
    skeleton,
)

from conftest import brute_isomorphic


def _random_hypergraph(draw, max_n=7):
    r = draw(st.integers(2, 3))
    n = draw(st.integers(r, max_n))
    import itertools

    pool = list(itertools.combinations(range(n), r))
    chosen = draw(st.sets(st.sampled_from(pool), max_size=min(8, len(pool))))
    return Hypergraph.from_edges(r, n, chosen)


hypergraphs = st.composite(_random_hypergraph)


class TestConstruction:
    def test_tight_cycle_6_3(self):
        H = make_tight_cycle(6, 3)
        assert H.n == 6
        assert set(H.edges) == {(0, 1, 2), (1, 2, 3), (2, 3, 4), (3, 4, 5), (0, 4, 5), (0, 1, 5)}

    def test_tight_cycle_4_3_is_complete(self):
        H = make_tight_cycle(4, 3)
        assert H.edges == ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))

    @pytest.mark.parametrize("ell,r", [(3, 3), (2, 3), (5, 5)])
    def test_tight_cycle_degenerate(self, ell, r):
        with pytest.raises(InvalidInput):
            make_tight_cycle(ell, r)

    def test_loose_triangle(self):
        H = make_loose_cycle(3, 3)
        assert H.n == 6
        assert set(H.edges) == {(0, 1, 2), (2, 3, 4), (0, 4, 5)}

    def test_loose_triangle_graph(self):
        assert make_loose_cycle(3, 2).edges == ((0, 1), (0, 2), (1, 2))

    def test_loose_cycle_4_3(self):
        H = make_loose_cycle(4, 3)
        assert (H.n, H.e) == (8, 4)
        assert is_linear(H)
        for a in H.edges:
            meets = sorted(len(set(a) & set(b)) for b in H.edges if b != a)
            assert meets == [0, 1, 1]

    def test_loose_cycle_rejects_short(self):
        with pytest.raises(InvalidInput):
            make_loose_cycle(2, 3)

    @pytest.mark.parametrize("r", [2, 3, 5])
    def test_grid(self, r):
        G = make_grid(r)
        assert (G.n, G.e) == (r * r, 2 * r)
        assert set(G.degrees()) == {2}
        assert is_linear(G)

    def test_grid_2_is_c4(self):
        assert brute_isomorphic(make_grid(2), make_tight_cycle(4, 2))

    def test_half_octahedron(self):
        H = make_half_octahedron()
        assert (H.n, H.e) == (6, 4)
        assert set(H.degrees()) == {2}
        assert is_linear(H)
        assert set(H.edges) == {(0, 2, 4), (0, 3, 5), (1, 2, 5), (1, 3, 4)}

    def test_invalid_records(self):
        with pytest.raises(InvalidInput):
            Hypergraph(3, 4, ((0, 1, 1),))
        with pytest.raises(InvalidInput):
            Hypergraph(3, 4, ((0, 1, 4),))
        with pytest.raises(InvalidInput):
            Hypergraph(3, 4, ((1, 2, 3), (0, 1, 2)))
        with pytest.raises(InvalidInput):
            Hypergraph(2, 3, ((0, 1), (0, 1)))
        with pytest.raises(InvalidInput):
            Hypergraph.from_dict({"r": 3, "edges": []})


class TestOperations:
    def test_remove_edge(self):
        H = remove_edge(make_tight_cycle(9, 3), 0)
        assert (H.n, H.e) == (9, 8)
        E = remove_edge(make_single_edge(4), 0)
        assert (E.n, E.e) == (4, 0)
        with pytest.raises(InvalidInput):
            remove_edge(E, 0)

    def test_remove_edge_any_index_isomorphic(self):
        C = make_tight_cycle(6, 3)
        ref = remove_edge(C, 0)
        for i in range(C.e):
            assert brute_isomorphic(ref, remove_edge(C, i))

    def test_minus_edge_family(self):
        H = make_tight_cycle_minus_edge(9, 3, 4)
        assert (4, 5, 6) not in H.edges and H.e == 8

    def test_disjoint_union(self):
        U = disjoint_union([make_single_edge(3), make_single_edge(3)])
        assert U.edges == ((0, 1, 2), (3, 4, 5))
        H = make_loose_triangle()
        assert disjoint_union([H]) == H
        with pytest.raises(InvalidInput):
            disjoint_union([make_single_edge(2), make_single_edge(3)])

    def test_levi_graph(self):
        L = levi_graph(make_half_octahedron())
        assert (L.n, L.e) == (10, 12)
        star = levi_graph(make_single_edge(4))
        assert star.edges == ((0, 4), (1, 4), (2, 4), (3, 4))
        L6 = levi_graph(make_tight_cycle(6, 3))
        assert (L6.n, L6.e) == (12, 18)
        deg = L6.degrees()
        assert all(d == 3 for d in deg[:6]) and all(d == 3 for d in deg[6:])

    def test_skeleton(self):
        S = skeleton(make_loose_triangle(), 2)
        assert (S.n, S.e) == (6, 9)
        assert skeleton(make_single_edge(4), 2) == make_tight_cycle(4, 2).__class__.from_edges(
            2, 4, [(a, b) for a in range(4) for b in range(a + 1, 4)]
        )
        K4 = skeleton(make_tight_cycle(4, 3), 2)
        assert K4.e == 6
        with pytest.raises(InvalidInput):
            skeleton(make_single_edge(3), 4)

    def test_linearity(self):
        assert is_linear(make_loose_triangle())
        assert not is_linear(make_tight_cycle(6, 3))
        assert is_linear(make_grid(4))

    def test_two_connected(self):
        assert is_two_connected(make_tight_cycle(6, 3))
        assert not is_two_connected(disjoint_union([make_single_edge(3)] * 2))
        assert is_two_connected(make_half_octahedron())
        assert is_two_connected(make_grid(3))
        assert not is_two_connected(make_single_edge(3))

    def test_degree_one(self):
        assert has_degree_one_vertex(make_single_edge(3))
        assert not has_degree_one_vertex(make_grid(3))


class TestGirth:
    def test_loose_triangle(self):
        g = berge_girth(make_loose_triangle())
        assert (g.girth, g.shortest_cycle_count) == (3, 1)

    def test_grid(self):
        g = berge_girth(make_grid(3))
        assert g.girth == 4
        # choose two rows and two columns
        assert g.shortest_cycle_count == 9

    def test_loose_cycle_5_3(self):
        g = berge_girth(make_loose_cycle(5, 3))
        assert (g.girth, g.shortest_cycle_count) == (5, 1)

    @pytest.mark.parametrize("g", range(3, 8))
    @pytest.mark.parametrize("r", range(2, 6))
    def test_loose_cycles_exhaustive(self, g, r):
        rep = berge_girth(make_loose_cycle(g, r))
        assert (rep.girth, rep.shortest_cycle_count) == (g, 1)

    def test_triangle_graph_count(self):
        # K4 has four triangles
        K4 = skeleton(make_tight_cycle(4, 3), 2)
        rep = berge_girth(K4)
        assert (rep.girth, rep.shortest_cycle_count) == (3, 4)

    def test_errors(self):
        with pytest.raises(InvalidInput):
            berge_girth(make_tight_cycle(6, 3))
        with pytest.raises(InvalidInput):
            berge_girth(make_single_edge(3))


class TestCatalog:
    def test_listing(self):
        names = {e["family"] for e in catalog()}
        for want in ("tight-cycle", "tight-cycle-minus-edge", "loose-cycle", "grid",
                     "half-octahedron", "levi-of", "disjoint-union"):
            assert want in names
        entries = {e["family"]: e for e in catalog()}
        assert "r" in entries["grid"]["params"]
        assert "r+1" in entries["tight-cycle"]["params"]["ell"]

    @pytest.mark.parametrize("name", sorted(FAMILIES))
    def test_minimal_parameters_build(self, name):
        H = build_family(name, FAMILIES[name]["minimal"])
        assert isinstance(H, Hypergraph)

    def test_unknown_family(self):
        with pytest.raises(InvalidInput):
            build_family("petersen", {})
        with pytest.raises(InvalidInput):
            build_family("grid", {})


class TestProperties:
    @given(hypergraphs())
    def test_serialisation_roundtrip(self, H):
        assert Hypergraph.from_dict(H.to_dict()) == H

    @given(hypergraphs(), st.data())
    def test_remove_then_add(self, H, data):
        if H.e == 0:
            return
        i = data.draw(st.integers(0, H.e - 1))
        assert add_edge(remove_edge(H, i), H.edges[i]) == H

    @given(hypergraphs())
    def test_levi_bipartite(self, H):
        L = levi_graph(H)
        assert (L.n, L.e) == (H.n + H.e, H.r * H.e)
        for a, b in L.edges:
            assert a < H.n <= b
        deg = L.degrees()
        assert all(d == H.r for d in deg[H.n:])

    @given(hypergraphs())
    def test_skeleton_identity(self, H):
        assert skeleton(H, H.r) == H

    @given(st.lists(hypergraphs(), min_size=1, max_size=3))
    def test_union_additive(self, parts):
        r = parts[0].r
        parts = [p for p in parts if p.r == r]
        U = disjoint_union(parts)
        assert U.n == sum(p.n for p in parts) and U.e == sum(p.e for p in parts)
        assert is_linear(U) == all(is_linear(p) for p in parts)

    @given(hypergraphs(max_n=6))
    def test_isomorphism_agrees_with_bruteforce(self, H):
        import random

        perm = list(range(H.n))
        random.Random(H.e).shuffle(perm)
        K = Hypergraph.from_edges(H.r, H.n, [[perm[v] for v in e] for e in H.edges])
        assert are_isomorphic(H, K)
        if H.e:
            M = remove_edge(H, 0)
            assert are_isomorphic(H, M) == brute_isomorphic(H, M)
