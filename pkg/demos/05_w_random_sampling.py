"""
W-random hypergraphs
====================

Sampling n atoms from the kernel and keeping each r-set with probability W
gives a random hypergraph whose H-density concentrates at t_H(W).
"""
from fractions import Fraction

from hypersido import density
from hypersido.hypergraph import make_single_edge, make_tight_cycle

half = density.SymmetricKernel.constant(3, Fraction(1, 2))
G = density.sample_hypergraph(half, 12, seed=7)
print("one sample:", G.n, "vertices,", G.e, "edges")

est = density.estimate_density(make_single_edge(3), half, 60, 20, seed=1)
print(f"edge density: {est.mean:.4f} +- {est.stderr:.4f} (exact 1/2)")

two = density.SymmetricKernel.uniform(3, 2, {(0, 0, 0): 1, (1, 1, 1): 1}, "nonnegative")
C6 = make_tight_cycle(6, 3)
est = density.estimate_density(C6, two, 14, 10, seed=2)
print(f"C6 density: {est.mean:.4f} +- {est.stderr:.4f} (exact {float(density.t_density(C6, two)):.4f})")
