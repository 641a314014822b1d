"""Convex hulls of cyclic orbits on the 3-sphere and the spines they define.

The generator of Z_p acts on C^2 by (z, w) -> (xi z, xi^q w), xi = exp(2 pi i/p).
The Voronoi diagram of an orbit on S^3 is dual to the boundary of its convex
hull, so Voronoi vertices (and, after dividing by p, vertices of the spine of
the lens space) are counted by hull facets.

All orientation tests go through :mod:`lensspine.predicates`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd

import numpy as np

from .arith import euclid_subtractive, mod_inverse
from .predicates import CertifiedPoints, orient_signs

GOLDEN = (1 + math.sqrt(5)) / 2
DEFAULT_THETA = math.atan(GOLDEN)
DEFAULT_PHI1 = 0.1
DEFAULT_PHI2 = 0.2
RANK_TOL = 1e-9


class DegenerateHullError(ValueError):
    """The points span less than the full ambient dimension."""

    def __init__(self, message: str, dimension: int):
        super().__init__(message)
        self.dimension = dimension


@dataclass(frozen=True)
class OrbitConfig:
    p: int
    q: int
    theta: float = DEFAULT_THETA
    phi1: float = DEFAULT_PHI1
    phi2: float = DEFAULT_PHI2
    allow_core: bool = False

    def __post_init__(self):
        if self.p < 3:
            raise ValueError(f"need p >= 3, got {self.p}")
        on_core = math.isclose(math.sin(2 * self.theta), 0.0, abs_tol=1e-15)
        if on_core and not self.allow_core:
            raise ValueError("base point lies on a core circle; pass allow_core=True to use it")

    def base_point(self) -> tuple[complex, complex]:
        z = math.cos(self.theta) * complex(math.cos(self.phi1), math.sin(self.phi1))
        w = math.sin(self.theta) * complex(math.cos(self.phi2), math.sin(self.phi2))
        return z, w

    def certified(self) -> CertifiedPoints:
        p, q = self.p, self.q
        theta, phi1, phi2 = self.theta, self.phi1, self.phi2

        def recipe(k, ctx):
            t = ctx.mpf(theta)
            a = ctx.mpf(phi1) + 2 * ctx.pi * k / p
            b = ctx.mpf(phi2) + 2 * ctx.pi * ((k * q) % p) / p
            rz, rw = ctx.cos(t), ctx.sin(t)
            return [rz * ctx.cos(a), rz * ctx.sin(a), rw * ctx.cos(b), rw * ctx.sin(b)]

        return CertifiedPoints(p, 4, recipe)


def orbit_points(config: OrbitConfig) -> np.ndarray:
    """The p orbit points as rows (Re z, Im z, Re w, Im w)."""
    p, q = config.p, config.q
    z, w = config.base_point()
    k = np.arange(p)
    zk = z * np.exp(2j * np.pi * k / p)
    wk = w * np.exp(2j * np.pi * ((k * q) % p) / p)
    return np.column_stack([zk.real, zk.imag, wk.real, wk.imag])


@dataclass(frozen=True)
class Facet:
    vertices: tuple[int, ...]
    normal: np.ndarray = field(compare=False, hash=False, repr=False)
    offset: float = field(compare=False, hash=False, repr=False)

    @property
    def simplicial(self) -> bool:
        return len(self.vertices) == 4


@dataclass
class Hull:
    n_points: int
    facets: list[Facet]

    @property
    def facet_sets(self) -> set[tuple[int, ...]]:
        return {f.vertices for f in self.facets}

    @property
    def all_simplicial(self) -> bool:
        return all(f.simplicial for f in self.facets)

    def f_vector(self) -> tuple[int, int, int, int]:
        """(vertices, edges, ridges, facets); faces of simplicial facets are all subsets."""
        if not self.all_simplicial:
            raise ValueError("face counting implemented for simplicial hulls only")
        verts, edges, tris = set(), set(), set()
        for f in self.facets:
            verts.update(f.vertices)
            edges.update(combinations(f.vertices, 2))
            tris.update(combinations(f.vertices, 3))
        return len(verts), len(edges), len(tris), len(self.facets)

    def euler_characteristic(self) -> int:
        v, e, r, c = self.f_vector()
        return v - e + r - c


def _as_certified(points) -> CertifiedPoints:
    if isinstance(points, CertifiedPoints):
        return points
    return CertifiedPoints.from_array(points)


def affine_dimension(points: CertifiedPoints) -> int:
    x = points.mid
    centred = x - x.mean(axis=0)
    sv = np.linalg.svd(centred, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > RANK_TOL * max(1.0, sv[0])))


def _initial_simplex(points: CertifiedPoints) -> list[int]:
    """Five affinely independent points, chosen greedily by volume, certified."""
    x = points.mid
    chosen = [0]
    for _ in range(4):
        best, best_vol = None, -1.0
        base = x[chosen[0]]
        span = (x[chosen[1:]] - base).T if len(chosen) > 1 else np.zeros((4, 0))
        for i in range(points.n):
            if i in chosen:
                continue
            m = np.column_stack([span, x[i] - base])
            vol = np.sqrt(abs(np.linalg.det(m.T @ m)))
            if vol > best_vol:
                best, best_vol = i, vol
        chosen.append(best)
    if orient_signs(points, [chosen])[0] == 0:
        raise DegenerateHullError("could not certify a full-dimensional simplex", affine_dimension(points))
    return chosen


def _facet_plane(x: np.ndarray, verts, interior: np.ndarray):
    a = x[verts[0]]
    diffs = x[list(verts[1:])] - a
    _, _, vt = np.linalg.svd(diffs)
    n = vt[-1]
    if np.dot(n, interior - a) > 0:
        n = -n
    n = n / np.linalg.norm(n)
    return n, float(np.dot(n, a))


def _finish(points: CertifiedPoints, oriented: list[tuple[int, ...]]) -> Hull:
    """Detect cohyperplanar points, merge the pieces of non-simplicial facets, attach normals."""
    n = points.n
    groups: dict[tuple[int, ...], None] = {}
    if oriented:
        tuples = []
        for f in oriented:
            for i in range(n):
                if i not in f:
                    tuples.append(f + (i,))
        signs = orient_signs(points, np.array(tuples)).reshape(len(oriented), n - 4)
        for f, row in zip(oriented, signs):
            others = [i for i in range(n) if i not in f]
            on_plane = [i for i, s in zip(others, row) if s == 0]
            groups[tuple(sorted(f + tuple(on_plane)))] = None
    x = points.mid
    interior = x.mean(axis=0)
    facets = []
    for verts in sorted(groups):
        normal, offset = _facet_plane(x, verts, interior)
        facets.append(Facet(verts, normal, offset))
    return Hull(n, facets)


def convex_hull_4d(points) -> Hull:
    """Incremental convex hull in R^4.

    Facets are kept as ordered 4-tuples whose orientation sign is positive
    exactly for points strictly outside.  Inserting a point removes its
    visible facets and cones the horizon ridges to it; a new facet inherits
    the vertex order of the visible facet it replaces, with the new point
    substituted for the dropped vertex, which keeps the orientation
    consistent.  Points on a facet hyperplane count as not visible; the
    resulting pieces of a non-simplicial facet are merged at the end.
    """
    pts = _as_certified(points)
    if pts.dim != 4:
        raise ValueError(f"expected points in R^4, got dimension {pts.dim}")
    if pts.n < 5:
        raise DegenerateHullError(f"{pts.n} points cannot span R^4", affine_dimension(pts))
    dim = affine_dimension(pts)
    if dim < 4:
        raise DegenerateHullError(f"points span an affine subspace of dimension {dim}", dim)
    simplex = _initial_simplex(pts)

    facets: list[tuple[int, ...]] = []
    for drop in range(5):
        verts = tuple(v for j, v in enumerate(simplex) if j != drop)
        s = orient_signs(pts, [verts + (simplex[drop],)])[0]
        # the dropped vertex is inside
        facets.append(verts if s < 0 else (verts[1], verts[0]) + verts[2:])

    for i in range(pts.n):
        if i in simplex:
            continue
        signs = orient_signs(pts, np.array([f + (i,) for f in facets]))
        visible = [f for f, s in zip(facets, signs) if s > 0]
        if not visible:
            continue
        ridge_count: dict[frozenset, int] = {}
        for f in visible:
            for j in range(4):
                ridge = frozenset(f[:j] + f[j + 1 :])
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        new = []
        for f in visible:
            for j in range(4):
                ridge = frozenset(f[:j] + f[j + 1 :])
                if ridge_count[ridge] == 1:
                    new.append(f[:j] + (i,) + f[j + 1 :])
        kept = [f for f, s in zip(facets, signs) if s <= 0]
        facets = kept + new
    return _finish(pts, facets)


def brute_force_facets(points) -> set[tuple[int, ...]]:
    """Facets from the one-sidedness test on every 4-subset (O(n^5))."""
    pts = _as_certified(points)
    n = pts.n
    subsets = list(combinations(range(n), 4))
    tuples = np.array([s + (i,) for s in subsets for i in range(n) if i not in s])
    signs = orient_signs(pts, tuples, refine=False).reshape(len(subsets), n - 4)
    # exact degeneracies are common (antipodal pairs when p is even), so only
    # subsets not already ruled out by two opposite signs get the slow pass
    open_rows = ~((signs > 0).any(axis=1) & (signs < 0).any(axis=1)) & (signs == 0).any(axis=1)
    for row in np.flatnonzero(open_rows):
        zero = np.flatnonzero(signs[row] == 0)
        block = tuples.reshape(len(subsets), n - 4, 5)[row, zero]
        signs[row, zero] = orient_signs(pts, block)
    found = set()
    for s, row in zip(subsets, signs):
        nz = row[row != 0]
        if nz.size and (np.all(nz > 0) or np.all(nz < 0)):
            others = [i for i in range(n) if i not in s]
            zeros = [i for i, v in zip(others, row) if v == 0]
            found.add(tuple(sorted(s + tuple(zeros))))
    return found


@dataclass
class SpineSummary:
    p: int
    q: int
    facet_count: int
    all_facets_simplicial: bool
    free_action: bool
    spine_vertex_count: int | None
    expected_vertex_count: int
    monodromy_r: int
    euler_characteristic: int | None

    @property
    def matches_expected(self) -> bool:
        return self.spine_vertex_count == self.expected_vertex_count

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["matches_expected"] = self.matches_expected
        return d


def rotate_facet(verts, m: int, p: int) -> tuple[int, ...]:
    return tuple(sorted((v + m) % p for v in verts))


def is_free(facet_sets, p: int) -> bool:
    """Z_p (acting by index shift) moves every facet off itself."""
    return all(rotate_facet(f, m, p) != f for f in facet_sets for m in range(1, p))


def spine_summary(config: OrbitConfig, hull: Hull | None = None) -> SpineSummary:
    p, q = config.p, config.q
    if gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")
    if q % p in (1, p - 1):
        raise DegenerateHullError(
            f"q = +-1 mod p: every orbit is a flat regular {p}-gon and no simple spine arises", 2
        )
    if hull is None:
        hull = convex_hull_4d(config.certified())
    sets = hull.facet_sets
    simplicial = hull.all_simplicial
    free = is_free(sets, p)
    count = None
    if simplicial and free and len(sets) % p == 0:
        count = len(sets) // p
    euler = hull.euler_characteristic() if simplicial else None
    return SpineSummary(
        p=p,
        q=q,
        facet_count=len(sets),
        all_facets_simplicial=simplicial,
        free_action=free,
        spine_vertex_count=count,
        expected_vertex_count=euclid_subtractive(p, q) - 3,
        monodromy_r=mod_inverse(q, p),
        euler_characteristic=euler,
    )


def voronoi_vertices(hull: Hull) -> np.ndarray:
    """Unit outer facet normals: the vertices of the spherical Voronoi diagram."""
    return np.array([f.normal for f in hull.facets])


def duality_check(points, hull: Hull, tol: float = 1e-9) -> bool:
    """Each outer facet normal is nearest (on the sphere) to exactly that facet's vertices."""
    x = _as_certified(points).mid
    for f in hull.facets:
        dots = x @ f.normal
        top = dots.max()
        nearest = tuple(np.flatnonzero(dots >= top - tol))
        if nearest != f.vertices:
            return False
    return True


def _canonical_facets(sets, p: int, shift: int) -> frozenset:
    return frozenset(rotate_facet(f, shift, p) for f in sets)


def basepoint_invariance(p: int, q: int, trials: int, seed: int = 0, max_retries: int = 20) -> bool:
    """Do random base points give the same facet complex, up to a cyclic relabelling?"""
    if trials < 2:
        raise ValueError("need at least two trials")
    rng = np.random.default_rng(seed)
    reference = None
    done = retries = 0
    while done < trials:
        theta = rng.uniform(0.05, math.pi / 2 - 0.05)
        phi1, phi2 = rng.uniform(0, 2 * math.pi, size=2)
        try:
            hull = convex_hull_4d(OrbitConfig(p, q, theta, phi1, phi2).certified())
        except DegenerateHullError:
            retries += 1
            if retries > max_retries:
                raise
            continue
        sets = frozenset(hull.facet_sets)
        if reference is None:
            reference = sets
        elif not any(_canonical_facets(sets, p, m) == reference for m in range(p)):
            return False
        done += 1
    return True


@dataclass
class VoronoiCheck:
    ok: bool
    samples: int
    ties: int
    mismatches: list[int]

    def __bool__(self):
        return self.ok


def sphere_voronoi_restriction_check(points, samples, seed: int = 0, tie_tol: float = 1e-12) -> VoronoiCheck:
    """Nearest site by arc length agrees with nearest site by chord length.

    ``samples`` is a count of random unit directions or an explicit array of
    them.  Samples whose two nearest sites are within ``tie_tol`` (in chord
    length) are counted as ties and left out of the comparison.
    """
    x = np.asarray(points, dtype=float)
    if x.ndim != 2:
        raise ValueError("points must be a 2-d array")
    if np.isscalar(samples):
        rng = np.random.default_rng(seed)
        s = rng.normal(size=(int(samples), x.shape[1]))
    else:
        s = np.atleast_2d(np.asarray(samples, dtype=float))
    s = s / np.linalg.norm(s, axis=1, keepdims=True)
    n = s.shape[0]
    chord = np.linalg.norm(s[:, None, :] - x[None, :, :], axis=2)
    arc = np.arccos(np.clip(s @ x.T, -1.0, 1.0))
    order = np.sort(chord, axis=1)
    tie = (order[:, 1] - order[:, 0]) <= tie_tol if x.shape[0] > 1 else np.zeros(n, bool)
    agree = np.argmin(chord, axis=1) == np.argmin(arc, axis=1)
    bad = np.flatnonzero(~agree & ~tie)
    return VoronoiCheck(ok=bad.size == 0, samples=n, ties=int(tie.sum()), mismatches=bad.tolist())
