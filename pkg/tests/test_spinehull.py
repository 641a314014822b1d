import math

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from lensspine.arith import euclid_subtractive
from lensspine.spinehull import (
    DegenerateHullError,
    OrbitConfig,
    basepoint_invariance,
    brute_force_facets,
    convex_hull_4d,
    duality_check,
    is_free,
    orbit_points,
    sphere_voronoi_restriction_check,
    spine_summary,
    voronoi_vertices,
)


def test_orbit_points_basic():
    cfg = OrbitConfig(5, 2, theta=0.7, phi1=0.3, phi2=-1.1)
    x = orbit_points(cfg)
    assert x.shape == (5, 4)
    assert np.allclose(np.linalg.norm(x, axis=1), 1)
    expected0 = [math.cos(0.7) * math.cos(0.3), math.cos(0.7) * math.sin(0.3), math.sin(0.7) * math.cos(-1.1), math.sin(0.7) * math.sin(-1.1)]
    assert np.allclose(x[0], expected0)
    assert len({tuple(np.round(v, 9)) for v in x}) == 5


def test_orbit_is_invariant_under_generator():
    cfg = OrbitConfig(11, 3)
    x = orbit_points(cfg)
    z = x[:, 0] + 1j * x[:, 1]
    w = x[:, 2] + 1j * x[:, 3]
    xi = np.exp(2j * np.pi / 11)
    moved = np.column_stack([(xi * z).real, (xi * z).imag, (xi**3 * w).real, (xi**3 * w).imag])
    assert np.allclose(moved, np.roll(x, -1, axis=0))


def test_certified_coordinates_have_unit_norm():
    cp = OrbitConfig(13, 5).certified()
    lo, hi = cp.lo, cp.hi
    norm_lo = np.sum(np.minimum(lo**2, hi**2) * (np.sign(lo) == np.sign(hi)), axis=1)
    norm_hi = np.sum(np.maximum(lo**2, hi**2), axis=1)
    assert np.all(norm_lo <= 1 + 1e-15) and np.all(norm_hi >= 1 - 1e-15)


def test_core_circle_orbit_is_planar():
    with pytest.raises(ValueError):
        OrbitConfig(7, 2, theta=0.0)
    cfg = OrbitConfig(7, 2, theta=0.0, allow_core=True)
    x = orbit_points(cfg)
    assert np.allclose(x[:, 2:], 0)
    with pytest.raises(DegenerateHullError) as err:
        convex_hull_4d(x)
    assert err.value.dimension == 2


@pytest.mark.parametrize("p", [5, 7, 10])
def test_q_plus_minus_one_is_degenerate(p):
    for q in (1, p - 1):
        with pytest.raises(DegenerateHullError):
            convex_hull_4d(OrbitConfig(p, q).certified())
        with pytest.raises(DegenerateHullError):
            spine_summary(OrbitConfig(p, q))


def test_simplex_and_seven_two():
    h = convex_hull_4d(OrbitConfig(5, 2).certified())
    assert len(h.facets) == 5 and h.all_simplicial
    h = convex_hull_4d(OrbitConfig(7, 2).certified())
    assert len(h.facets) == 14 == 7 * (euclid_subtractive(7, 2) - 3)


@pytest.mark.parametrize("p,q", [(8, 3), (12, 5), (13, 5), (17, 4), (20, 9)])
def test_hull_matches_brute_force_and_qhull(p, q):
    cp = OrbitConfig(p, q).certified()
    ours = convex_hull_4d(cp).facet_sets
    assert ours == brute_force_facets(cp)
    qhull = {tuple(sorted(map(int, s))) for s in ConvexHull(cp.mid).simplices}
    assert ours == qhull


def test_random_point_hull_matches_qhull():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(30, 4))
    ours = convex_hull_4d(x)
    assert ours.facet_sets == {tuple(sorted(map(int, s))) for s in ConvexHull(x).simplices}
    assert ours.euler_characteristic() == 0
    for f in ours.facets:
        assert np.all(x @ f.normal <= f.offset + 1e-9)


def test_non_simplicial_facets_are_merged():
    cube = np.array([[(i >> j) & 1 for j in range(4)] for i in range(16)], dtype=float)
    h = convex_hull_4d(cube)
    assert len(h.facets) == 8 and all(len(f.vertices) == 8 for f in h.facets)
    assert not h.all_simplicial
    assert h.facet_sets == brute_force_facets(cube)


def test_too_few_or_flat_points():
    with pytest.raises(DegenerateHullError):
        convex_hull_4d(np.eye(4))
    flat = np.c_[np.random.default_rng(0).normal(size=(9, 3)), np.zeros(9)]
    with pytest.raises(DegenerateHullError) as err:
        convex_hull_4d(flat)
    assert err.value.dimension == 3


@pytest.mark.parametrize("p,q,verts", [(5, 2, 1), (7, 2, 2), (34, 13, 5)])
def test_spine_summary_examples(p, q, verts):
    s = spine_summary(OrbitConfig(p, q))
    assert s.spine_vertex_count == verts == s.expected_vertex_count
    assert s.facet_count == p * verts and s.all_facets_simplicial and s.free_action
    assert s.monodromy_r * q % p == 1
    assert s.euler_characteristic == 0


@pytest.mark.parametrize("p", range(5, 21))
def test_spine_count_law(p):
    for q in range(2, p - 1):
        if math.gcd(p, q) != 1:
            continue
        cfg = OrbitConfig(p, q)
        hull = convex_hull_4d(cfg.certified())
        s = spine_summary(cfg, hull)
        assert s.all_facets_simplicial
        assert s.facet_count == p * (euclid_subtractive(p, q) - 3)
        assert duality_check(cfg.certified(), hull)


def test_free_action_detection():
    assert is_free({(0, 1, 2, 3)}, 5)
    assert not is_free({(0, 1, 2, 3), (0, 2, 4, 6)}, 8)


def test_voronoi_vertices_are_equidistant():
    cfg = OrbitConfig(11, 3)
    x = orbit_points(cfg)
    hull = convex_hull_4d(x)
    for f, v in zip(hull.facets, voronoi_vertices(hull)):
        d = np.arccos(np.clip(x @ v, -1, 1))
        assert np.allclose(d[list(f.vertices)], d.min())


@pytest.mark.parametrize("p,q,trials", [(5, 2, 5), (7, 2, 5), (11, 3, 3), (13, 5, 3)])
def test_basepoint_invariance(p, q, trials):
    assert basepoint_invariance(p, q, trials, seed=1)


def test_basepoint_invariance_needs_two_trials():
    with pytest.raises(ValueError):
        basepoint_invariance(7, 2, 1)


def test_sphere_restriction():
    res = sphere_voronoi_restriction_check(orbit_points(OrbitConfig(5, 2)), 10_000, seed=0)
    assert res and res.samples == 10_000
    antipodal = np.array([[1.0, 0.0], [-1.0, 0.0]])
    res = sphere_voronoi_restriction_check(antipodal, [[math.cos(math.pi / 4), math.sin(math.pi / 4)]])
    assert res.ok and res.ties == 0
    res = sphere_voronoi_restriction_check(antipodal, [[0.0, 1.0]])
    assert res.ok and res.ties == 1
