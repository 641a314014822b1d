"""Triangulations whose rotation costs exactly E(p,q) - 3 flips.

For q = 1 the fan at vertex 0 is flipped into the fan at vertex 1 one diagonal
at a time.  For other q the p points

    (1 + e sin(2 pi k q / p)) (cos(2 pi k / p), sin(2 pi k / p))

are a slightly dented circle; their Delaunay triangulation tends to keep the
diagonals that the rotation by q preserves.  Nothing guarantees that, so each
candidate is accepted only after its bound certificate says it is optimal.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .arith import euclid_subtractive, mod_inverse
from .bounds import BoundCertificate, certify
from .flipdist import FlipSequence, distance_bounded
from .predicates import CertifiedPoints, incircle_signs, orient_signs
from .triangulation import Triangulation, fan, mirror, normalize, rotate

DEFAULT_GRID = (0.02, 0.01, 0.007, 0.005, 0.003, 0.001)


class CocircularError(ValueError):
    """Four points lie on a common circle, so the Delaunay triangulation is not unique."""

    def __init__(self, message: str, ties: list):
        super().__init__(message)
        self.ties = ties


class ConstructionError(RuntimeError):
    def __init__(self, message: str, diagnostics: list[dict]):
        super().__init__(message)
        self.diagnostics = diagnostics


def fan_flip_sequence(p: int) -> FlipSequence:
    """Fan at vertex 0 to fan at vertex 1 in p - 3 flips: (0,2), then (0,3), ..."""
    if p < 3:
        raise ValueError(f"need p >= 3, got {p}")
    return FlipSequence(fan(p, 0), tuple((0, i) for i in range(2, p - 1)))


@dataclass
class PerturbedCirclePoints:
    p: int
    q: int
    eccentricity: float
    certified: CertifiedPoints = field(repr=False)
    convex: bool = False

    @property
    def points(self) -> np.ndarray:
        return self.certified.mid

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "x", "y"])
        for k, (x, y) in enumerate(self.points):
            w.writerow([k, repr(float(x)), repr(float(y))])
        return buf.getvalue()


def _convex_position(points: CertifiedPoints) -> bool:
    """Every consecutive triple turns strictly left, and the polygon winds once."""
    n = points.n
    triples = [(k, (k + 1) % n, (k + 2) % n) for k in range(n)]
    if not np.all(orient_signs(points, triples) > 0):
        return False
    x = points.mid
    angles = np.arctan2(x[:, 1], x[:, 0])
    turning = np.diff(np.unwrap(np.append(angles, angles[0])))
    return bool(np.all(turning > 0) and abs(turning.sum() - 2 * math.pi) < 1e-6)


def perturbed_points(p: int, q: int, e: float) -> PerturbedCirclePoints:
    if p < 3:
        raise ValueError(f"need p >= 3, got {p}")
    if not 0 < q < p:
        raise ValueError(f"need 0 < q < p, got q={q}")
    if e < 0:
        raise ValueError("eccentricity must be nonnegative")

    def recipe(k, ctx):
        a = 2 * ctx.pi * k / p
        radius = 1 + ctx.mpf(e) * ctx.sin(2 * ctx.pi * ((k * q) % p) / p)
        return [radius * ctx.cos(a), radius * ctx.sin(a)]

    cert = CertifiedPoints(p, 2, recipe)
    return PerturbedCirclePoints(p, q, e, cert, _convex_position(cert))


@dataclass
class DelaunayReport:
    triangulation: Triangulation
    flips: int
    ties: list[tuple[int, int, int, int]]


def _quad(t: Triangulation, d, adj):
    a, b = d
    c, e = sorted(adj[a] & adj[b])
    return a, b, c, e


def delaunay_with_report(points) -> DelaunayReport:
    """Lawson flips from the fan at 0 until every diagonal is locally Delaunay.

    Ties (four cocircular points around some diagonal) are collected rather
    than resolved; the returned triangulation is then one of several.
    """
    pts = points if isinstance(points, CertifiedPoints) else CertifiedPoints.from_array(points)
    if pts.dim != 2:
        raise ValueError("expected planar points")
    if not _convex_position(pts):
        raise ValueError("points are not in convex position in their cyclic order")
    p = pts.n
    t = fan(p, 0)
    flips = 0
    ties: set = set()
    while True:
        adj = t.adjacency()
        quads = [_quad(t, d, adj) for d in t.diagonals]
        if not quads:
            break
        # a < b are the diagonal ends, c < e the apexes; a < c < b < e up to cyclic order,
        # and (a, c, b) is counterclockwise when c lies on the arc a..b
        tuples = []
        for a, b, c, e in quads:
            inner, outer = (c, e) if a < c < b else (e, c)
            tuples.append((a, inner, b, outer))
        signs = incircle_signs(pts, tuples)
        bad = [i for i, s in enumerate(signs) if s > 0]
        ties = {tuple(sorted(tuples[i])) for i, s in enumerate(signs) if s == 0}
        if not bad:
            break
        t = _flip_to(t, quads[bad[0]])
        flips += 1
    return DelaunayReport(t, flips, sorted(ties))


def _flip_to(t: Triangulation, quad) -> Triangulation:
    a, b, c, e = quad
    rest = [d for d in t.diagonals if d != (a, b)]
    return Triangulation(t.p, tuple(sorted(rest + [normalize(t.p, c, e)])), check=False)


def delaunay_of_convex_points(points) -> Triangulation:
    report = delaunay_with_report(points)
    if report.ties:
        raise CocircularError(f"{len(report.ties)} cocircular quadruples; Delaunay is not unique", report.ties)
    return report.triangulation


@dataclass
class Construction:
    p: int
    q: int
    triangulation: Triangulation
    witness: FlipSequence
    eccentricity: float | None
    certificate: BoundCertificate | None
    attempts: list[dict]
    parameter: int | None = None

    @property
    def flips(self) -> int:
        return len(self.witness)


def optimal_triangulation(p: int, q: int, grid=DEFAULT_GRID, search_budget: int | None = None) -> Construction:
    """A triangulation and a flip sequence to its rotation by q of length E(p,q) - 3."""
    if p < 3:
        raise ValueError(f"need p >= 3, got {p}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")
    q %= p
    target = max(0, euclid_subtractive(p, q) - 3)
    if p == 3:
        t = fan(3)
        return Construction(p, q, t, FlipSequence(t, ()), None, None, [])
    if q == 1:
        seq = fan_flip_sequence(p)
        return Construction(p, q, seq.start, seq, None, certify(seq.start, q), [])
    if q == p - 1:
        # reflecting the q = 1 sequence turns "rotate by +1" into "rotate by -1"
        seq = fan_flip_sequence(p)
        start = mirror(seq.start)
        flips = tuple(normalize(p, -a, -b) for a, b in seq.flips)
        seq = FlipSequence(start, flips)
        return Construction(p, q, start, seq, None, certify(start, q), [])

    attempts = []
    # The radius term sin(2 pi k m / p) advances by one step under the shift k -> k + m^-1,
    # so m = q favours rotation by q^-1 (same E).  Both choices are tried, q first.
    params = [q] if mod_inverse(q, p) == q else [q, mod_inverse(q, p)]
    budget = target if search_budget is None else search_budget
    for param in params:
        for e in grid:
            info: dict = {"parameter": param, "eccentricity": e}
            attempts.append(info)
            pts = perturbed_points(p, param, e)
            info["convex"] = pts.convex
            if not pts.convex:
                continue
            report = delaunay_with_report(pts.certified)
            # points of equal radius make some quadruples exactly cocircular; any
            # resolution of those is still Delaunay, and the certificate decides
            info["ties"] = len(report.ties)
            t = report.triangulation
            cert = certify(t, q)
            info.update(destroyed=cert.destroyed, target=target, extremal=cert.extremal, certified=cert.ok)
            if not (cert.ok and cert.extremal and cert.destroyed == target):
                continue
            found = distance_bounded(t, rotate(t, q), budget)
            info["witness"] = None if found is None else found[0]
            if found is None or found[0] != target:
                continue
            return Construction(p, q, t, found[1], e, cert, attempts, param)
    raise ConstructionError(f"no eccentricity in {list(grid)} certified an optimal triangulation for ({p},{q})", attempts)
