"""
Optimal triangulations from a dented circle
===========================================

The Delaunay triangulation of the points (1 + e sin(2 pi k m/p)) e^(2 pi i k/p)
tends to be one that rotates cheaply.  Here it is for (34, 13), along with
the figure: polygon, diagonals and the Voronoi diagram of the points.
"""

from pathlib import Path

from lensspine.construct import optimal_triangulation, perturbed_points
from lensspine.render import triangulation_svg

c = optimal_triangulation(34, 13)
print("eccentricity", c.eccentricity)
print("length profile", c.certificate.profile.counts)
print("destroyed diagonals", c.certificate.destroyed)
print("witness", c.witness.flips)

# what the grid search looked at before accepting
for attempt in c.attempts:
    print(attempt)

pts = perturbed_points(34, c.parameter, c.eccentricity)
out = Path("triangulation_34_13.svg")
out.write_text(triangulation_svg(pts.points, c.triangulation, title="(34,13)"))
print("wrote", out)
