"""
The loose triangle and the deletion method
==========================================

A two-atom kernel that is 1 except on rainbow-free edges already beats the
random bound on the loose triangle.  Feeding the resulting densities into the
deletion argument gives an exponent above the trivial 3/2.
"""
from fractions import Fraction

from hypersido import density, witness
from hypersido.hypergraph import make_loose_triangle

T = make_loose_triangle()
for c in (Fraction(1, 3), Fraction(1, 6), Fraction(1, 12)):
    f = witness.linear_girth_kernel(3, c)
    print(f"c={c}: t_T = {density.t_density(T, f)},  1 - c^3 = {1 - c**3}")

rep = witness.deletion_bound(T, witness.linear_girth_kernel(3, Fraction(1, 3)))
print()
print("alpha0, beta0 :", rep.alpha0, rep.beta0)
print("c'            :", rep.c_prime, "=", rep.c_prime_expr)
print("exponent      :", rep.baseline_exponent, "->", rep.improved_exponent)
print(rep.gamma_note)
