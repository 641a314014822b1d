"""
Rotating a triangulated polygon, one flip at a time
===================================================

How many flips does it take to turn a triangulation of the p-gon into its
own rotation by q steps?  The minimum over all triangulations is
max(0, E(p,q) - 3), which exhaustive search confirms for small p.
"""

from lensspine.arith import euclid_subtractive
from lensspine.bounds import certify
from lensspine.flipdist import distance_bfs, min_rotation_distance
from lensspine.triangulation import enumerate_all, fan, rotate, to_text

# a fan needs p - 3 flips to turn into its rotation by one step
t = fan(7)
d, seq = distance_bfs(t, rotate(t, 1))
print("fan, q=1:", d, "flips", seq.flips)

# exhaustive minimum against the formula
for p in range(5, 11):
    row = []
    for q in range(1, p):
        d, _ = min_rotation_distance(p, q)
        row.append(f"{d}/{max(0, euclid_subtractive(p, q) - 3)}")
    print(f"p={p}:", " ".join(row))

# the best triangulation for (7,2) and why nothing beats it
d, best = min_rotation_distance(7, 2)
print(to_text(best))
cert = certify(best, 2)
print("profile", cert.profile.counts, "ceiling sum", cert.bound_value, "destroyed", cert.destroyed)

# every triangulation destroys at least E - 3 diagonals
print("smallest destroyed count, p=11 q=3:", min(certify(t, 3).destroyed for t in enumerate_all(11)))
