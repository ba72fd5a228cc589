"""
Non-commonness through even subgraphs
=====================================

For a zero-averaging f the commonness deficit of 1/2 + eps f is twice the sum
of t_G(eps f) over subgraphs G with all degrees even.  If the smallest such
subgraphs sum to a negative number, a small eps makes the deficit negative.
"""
import json
from pathlib import Path

from hypersido import common, density
from hypersido.hypergraph import levi_graph, make_grid, make_half_octahedron

H = make_half_octahedron()
cl = common.classify_even_subgraphs(H)
print("half-octahedron: smallest even size", cl.two_m, "with", len(cl.candidates), "candidate(s)")

# A stored search result: a 3-atom kernel with negative density on H.
fixture = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "half_octahedron_witness.json"
f = density.SymmetricKernel.from_dict(json.loads(fixture.read_text())["kernel"])
print("t_H(f) =", float(density.t_density(H, f)))

# f is not zero-averaging; tensoring with x1*x2*x3 fixes that without
# changing t_H, since every vertex of H has even degree.
lifted = common.zero_averaging_lift(f)
report = common.check_noncommon(H, lifted)
print("verdict:", report.verdict, " scale:", report.scale, " deficit:", float(report.deficit))

# The same hypergraph seen through its Levi graph.
L = levi_graph(H)
print("Levi graph: ", L.n, "vertices,", L.e, "edges")

# On the 3-grid the only candidate is the whole graph.
g = common.classify_even_subgraphs(make_grid(3))
print("grid G_3: 2m =", g.two_m, " two-connected:", g.candidates[0].two_connected)
