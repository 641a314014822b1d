"""Certified signs of geometric determinants.

Point coordinates here are transcendental (sines and cosines of rational
multiples of pi), so exact arithmetic is not available.  Instead each point
set carries a recipe evaluated in mpmath interval arithmetic, which yields
rigorous enclosures of the true coordinates.  A determinant is evaluated

1. on outward-rounded float64 intervals, vectorised with numpy;
2. for undecided entries only, in mpmath interval arithmetic at 106, 212 and
   424 bits.

A sign is reported as 0 when the enclosure still contains zero at the
highest precision; callers treat that as a degeneracy.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np
from mpmath.ctx_iv import MPIntervalContext

ESCALATION_PRECISIONS = (106, 212, 424)
_ENCLOSURE_PREC = 80

_contexts: dict[int, MPIntervalContext] = {}


def interval_context(prec: int) -> MPIntervalContext:
    ctx = _contexts.get(prec)
    if ctx is None:
        ctx = MPIntervalContext()
        ctx.prec = prec
        _contexts[prec] = ctx
    return ctx


def _down(x):
    return np.nextafter(x, -np.inf)


def _up(x):
    return np.nextafter(x, np.inf)


class FloatInterval:
    """Arrays of closed float intervals with outward rounding after every operation."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = np.asarray(lo, dtype=np.float64)
        self.lo = lo
        self.hi = lo if hi is None else np.asarray(hi, dtype=np.float64)

    @staticmethod
    def _wrap(x):
        return x if isinstance(x, FloatInterval) else FloatInterval(x)

    def __add__(self, other):
        o = self._wrap(other)
        return FloatInterval(_down(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._wrap(other)
        return FloatInterval(_down(self.lo - o.hi), _up(self.hi - o.lo))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __neg__(self):
        return FloatInterval(-self.hi, -self.lo)

    def __mul__(self, other):
        o = self._wrap(other)
        a, b, c, d = self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi
        lo = np.minimum(np.minimum(a, b), np.minimum(c, d))
        hi = np.maximum(np.maximum(a, b), np.maximum(c, d))
        return FloatInterval(_down(lo), _up(hi))

    __rmul__ = __mul__

    def __getitem__(self, idx):
        return FloatInterval(self.lo[idx], self.hi[idx])

    def sign(self) -> np.ndarray:
        return np.where(self.lo > 0, 1, np.where(self.hi < 0, -1, 0)).astype(np.int8)


def det(m: Sequence[Sequence]):
    """Determinant by cofactor expansion; works for any ring-like entries."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * det(minor)
        if total is None:
            total = term
        elif j % 2:
            total = total - term
        else:
            total = total + term
    return total


def _iv_sign(x) -> int:
    if x.a > 0:
        return 1
    if x.b < 0:
        return -1
    return 0


class CertifiedPoints:
    """A finite point set defined by a coordinate recipe.

    ``recipe(k, ctx)`` returns the coordinates of point k computed in the
    mpmath interval context ``ctx``.  Float64 enclosures are computed once;
    higher-precision enclosures are cached per precision.
    """

    def __init__(self, n: int, dim: int, recipe: Callable):
        self.n = n
        self.dim = dim
        self.recipe = recipe
        self._iv_cache: dict[int, list] = {}
        enc = self.iv(_ENCLOSURE_PREC)
        lo = np.empty((n, dim))
        hi = np.empty((n, dim))
        for k in range(n):
            for j in range(dim):
                lo[k, j] = _down(float(enc[k][j].a))
                hi[k, j] = _up(float(enc[k][j].b))
        self.lo, self.hi = lo, hi
        self.mid = (lo + hi) / 2

    @classmethod
    def from_array(cls, points) -> "CertifiedPoints":
        """Treat float coordinates as exact binary values."""
        arr = np.asarray(points, dtype=np.float64)
        n, dim = arr.shape

        def recipe(k, ctx):
            return [ctx.mpf(float(v)) for v in arr[k]]

        return cls(n, dim, recipe)

    def iv(self, prec: int) -> list:
        pts = self._iv_cache.get(prec)
        if pts is None:
            ctx = interval_context(prec)
            pts = [list(self.recipe(k, ctx)) for k in range(self.n)]
            self._iv_cache[prec] = pts
        return pts

    def float_coord(self, idx: np.ndarray, j: int) -> FloatInterval:
        return FloatInterval(self.lo[idx, j], self.hi[idx, j])

    def __len__(self):
        return self.n


def _signs(points: CertifiedPoints, tuples: np.ndarray, build: Callable, refine: bool = True) -> np.ndarray:
    """Evaluate ``det(build(coords))`` on each index tuple with certified signs.

    ``build`` maps a list of per-point coordinate lists to a square matrix and
    must only use +, - and *.  With ``refine=False`` only the float pass runs
    and 0 means "not decided yet" rather than "degenerate".
    """
    tuples = np.asarray(tuples, dtype=np.intp)
    if tuples.size == 0:
        return np.zeros(0, dtype=np.int8)
    tuples = np.atleast_2d(tuples)
    width = tuples.shape[1]
    coords = [[points.float_coord(tuples[:, i], j) for j in range(points.dim)] for i in range(width)]
    signs = det(build(coords)).sign()
    if not refine:
        return signs
    for row in np.flatnonzero(signs == 0):
        idx = tuples[row]
        for prec in ESCALATION_PRECISIONS:
            pts = points.iv(prec)
            s = _iv_sign(det(build([pts[i] for i in idx])))
            if s:
                signs[row] = s
                break
    return signs


def _orient_matrix(coords):
    base = coords[0]
    return [[c[j] - base[j] for j in range(len(base))] for c in coords[1:]]


def orient_signs(points: CertifiedPoints, tuples, refine: bool = True) -> np.ndarray:
    """Sign of det[x_1 - x_0, ..., x_d - x_0] for each (d+1)-tuple of indices."""
    return _signs(points, tuples, _orient_matrix, refine)


def orient(points: CertifiedPoints, *idx: int) -> int:
    return int(orient_signs(points, [idx])[0])


def _incircle_matrix(coords):
    d = coords[3]
    rows = []
    for c in coords[:3]:
        dx, dy = c[0] - d[0], c[1] - d[1]
        rows.append([dx, dy, dx * dx + dy * dy])
    return rows


def incircle_signs(points: CertifiedPoints, tuples) -> np.ndarray:
    """Positive iff point d lies inside the circle through a, b, c (a, b, c counterclockwise)."""
    return _signs(points, tuples, _incircle_matrix)


def incircle(points: CertifiedPoints, a: int, b: int, c: int, d: int) -> int:
    return int(incircle_signs(points, [(a, b, c, d)])[0])
