"""
Census polynomials of tight cycles
==================================

kappa_m(H) counts the m-edge subgraphs of H without a vertex of degree one.
The polynomial P_H(x) = sum_m kappa_m x^m is negative somewhere in (-1, 0)
whenever H fails Sidorenko's property for the construction used here, so the
first thing to look at is P_H itself.
"""
from fractions import Fraction

from hypersido import kappa
from hypersido.hypergraph import make_tight_cycle, make_tight_cycle_minus_edge

# The 3-uniform tight cycle on 6 vertices, counted three ways.
C6 = make_tight_cycle(6, 3)
print("brute force :", kappa.kappa_poly_bruteforce(C6).as_strings())
print("transfer DP :", kappa.kappa_tight_cycle_dp(6, 3).as_strings())
print("closed form :", kappa.kappa_closed_c3k(2).as_strings())

# Evaluating exactly at -2/3 already gives a negative value.
x = Fraction(-2, 3)
print("P_C6(-2/3) =", kappa.eval_poly(kappa.kappa_tight_cycle_dp(6, 3), x))
print("P_C9-e(-2/3) =", kappa.eval_poly(kappa.kappa_poly_bruteforce(make_tight_cycle_minus_edge(9, 3)), x))

# The DP handles cycles far beyond brute force; the probes pick a point to try.
for ell in (30, 90, 150):
    P = kappa.kappa_tight_cycle_dp(ell, 3)
    cert = kappa.find_negative_point(P, kappa.probe_catalogue(ell, 3))
    print(f"C_{ell}: x = {cert.point} ({cert.provenance}), P(x) < 0: {cert.value < 0}")

# A positive polynomial yields no point, which proves nothing.
print("x^4 gives:", kappa.find_negative_point(kappa.KappaPolynomial((0, 0, 0, 1)), []))
