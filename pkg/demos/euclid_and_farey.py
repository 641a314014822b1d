"""
Subtractive Euclid counts and the Farey tessellation
====================================================

E(p, q) counts the subtractions that take (p, q) down to (1, 0).  It is
also the number of Farey triangles a geodesic to p/q passes through.
"""

from lensspine.arith import continued_fraction, euclid_subtractive, euclid_trace, mod_inverse
from lensspine.farey import apply_modular, crossing_count_geodesic, crossing_count_tree, endpoint_swap_map, ExtendedRational

p, q = 34, 13

# the count is the sum of partial quotients
print("E(34,13) =", euclid_subtractive(p, q))
print("34/13 =", list(continued_fraction(p, q)))

# all sequences of the Euclid run at once
trace = euclid_trace(p, q)
print("remainders", trace.remainders)
print("convergent numerators", trace.numerators)

# E is unchanged by q -> p - q and by q -> q^-1 mod p
r = mod_inverse(q, p)
print("E(34,21) =", euclid_subtractive(p, p - q), " q^-1 =", r, " E(34,q^-1) =", euclid_subtractive(p, r))

# counting crossed Farey triangles, two independent ways
print("tree walk:", crossing_count_tree(p, q), " geodesic walk:", crossing_count_geodesic(p, q))

# the reflection that explains the second symmetry
m = endpoint_swap_map(p, q)
print("p/r ->", apply_modular(m, ExtendedRational(p, r)), "  0 ->", apply_modular(m, ExtendedRational(0, 1)))
