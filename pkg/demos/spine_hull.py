"""
Counting spine vertices with a 4-dimensional convex hull
========================================================

The orbit of a point of the 3-sphere under (z, w) -> (xi z, xi^q w) has p
points.  Facets of their convex hull are dual to vertices of the Voronoi
diagram, and dividing by p gives the vertices of a spine of the lens space.
"""

import numpy as np

from lensspine.arith import euclid_subtractive
from lensspine.spinehull import (
    OrbitConfig,
    basepoint_invariance,
    convex_hull_4d,
    orbit_points,
    sphere_voronoi_restriction_check,
    spine_summary,
)

cfg = OrbitConfig(7, 2)
x = orbit_points(cfg)
print("norms", np.linalg.norm(x, axis=1))

hull = convex_hull_4d(cfg.certified())
print(len(hull.facets), "facets, f-vector", hull.f_vector())

# E - 3 spine vertices for every q != +-1
for p, q in [(5, 2), (7, 2), (11, 3), (19, 7), (34, 13)]:
    s = spine_summary(OrbitConfig(p, q))
    print((p, q), s.spine_vertex_count, "vertices; E-3 =", euclid_subtractive(p, q) - 3, "r =", s.monodromy_r)

# the combinatorics do not depend on where the orbit starts
print("base point invariant:", basepoint_invariance(11, 3, trials=4, seed=7))

# nearest orbit point is the same for arc length and chord length
print(sphere_voronoi_restriction_check(x, 10_000, seed=1))
