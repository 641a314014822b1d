"""Exact navigation of the Farey tessellation of the upper half-plane.

Boundary points are :class:`ExtendedRational` values; infinity is ``1/0``.
Geodesics are only ever handled through their two boundary endpoints, and
crossing is decided by the interleaving of endpoints on the circle
``R u {inf}``, so no floating point is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import mod_inverse


@dataclass(frozen=True, order=False)
class ExtendedRational:
    num: int
    den: int

    def __post_init__(self):
        num, den = self.num, self.den
        if num == 0 and den == 0:
            raise ValueError("0/0 is not a point of the extended line")
        if den < 0:
            num, den = -num, -den
        if den == 0:
            num = 1
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    @classmethod
    def parse(cls, text: str) -> "ExtendedRational":
        text = text.strip()
        if text in ("inf", "oo", "∞"):
            return INF
        if "/" in text:
            a, b = text.split("/")
            return cls(int(a), int(b))
        return cls(int(text), 1)

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    def to_fraction(self) -> Fraction:
        if self.is_infinite:
            raise ValueError("infinity has no Fraction value")
        return Fraction(self.num, self.den)

    def __str__(self):
        return "inf" if self.is_infinite else f"{self.num}/{self.den}"

    def __repr__(self):
        return f"ExtendedRational({self.num}, {self.den})"


INF = ExtendedRational(1, 0)
ZERO = ExtendedRational(0, 1)
ONE = ExtendedRational(1, 1)


def _as_point(x) -> ExtendedRational:
    if isinstance(x, ExtendedRational):
        return x
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return ExtendedRational(x.numerator, x.denominator)
    if isinstance(x, str):
        return ExtendedRational.parse(x)
    if isinstance(x, tuple) and len(x) == 2:
        return ExtendedRational(*x)
    raise TypeError(f"cannot interpret {x!r} as an extended rational")


def is_farey_edge(x, y) -> bool:
    x, y = _as_point(x), _as_point(y)
    if x == y:
        raise ValueError("an edge needs two distinct endpoints")
    return abs(x.num * y.den - x.den * y.num) == 1


def farey_neighbors(edge) -> tuple[ExtendedRational, ExtendedRational]:
    """Third vertices of the two Farey triangles on ``edge``: (mediant, difference)."""
    x, y = (_as_point(v) for v in edge)
    if not is_farey_edge(x, y):
        raise ValueError(f"({x}, {y}) is not a Farey edge")
    mediant = ExtendedRational(x.num + y.num, x.den + y.den)
    difference = ExtendedRational(x.num - y.num, x.den - y.den)
    return mediant, difference


def farey_sequence(depth: int) -> list[ExtendedRational]:
    """Vertices in [0, 1] after ``depth`` reflection rounds, ascending."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    seq = [ZERO, ONE]
    for _ in range(depth):
        nxt = [seq[0]]
        for a, b in zip(seq, seq[1:]):
            nxt.append(ExtendedRational(a.num + b.num, a.den + b.den))
            nxt.append(b)
        seq = nxt
    return seq


@dataclass(frozen=True)
class ModularMap:
    """z -> (a z + b)/(c z + d), or the same applied to conj(z) when reversing.

    Determinant is +1 for orientation-preserving maps and -1 for reversing
    ones.  On boundary points conjugation is the identity, so both kinds act
    by the same formula there.
    """

    a: int
    b: int
    c: int
    d: int
    reversing: bool = False

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        want = -1 if self.reversing else 1
        if det != want:
            raise ValueError(f"determinant {det}, expected {want}")

    def __eq__(self, other):
        if not isinstance(other, ModularMap):
            return NotImplemented
        if self.reversing != other.reversing:
            return False
        mine, theirs = (self.a, self.b, self.c, self.d), (other.a, other.b, other.c, other.d)
        return mine == theirs or mine == tuple(-v for v in theirs)

    def __hash__(self):
        m = (self.a, self.b, self.c, self.d)
        first = next(v for v in m if v)
        if first < 0:
            m = tuple(-v for v in m)
        return hash((m, self.reversing))

    def __call__(self, x) -> ExtendedRational:
        return apply_modular(self, x)

    def compose(self, other: "ModularMap") -> "ModularMap":
        """self after other."""
        a = self.a * other.a + self.b * other.c
        b = self.a * other.b + self.b * other.d
        c = self.c * other.a + self.d * other.c
        d = self.c * other.b + self.d * other.d
        return ModularMap(a, b, c, d, self.reversing != other.reversing)


TRANSLATE = ModularMap(1, 1, 0, 1)  # z -> z + 1
INVERT = ModularMap(0, -1, 1, 0)  # z -> -1/z


def apply_modular(m: ModularMap, x) -> ExtendedRational:
    x = _as_point(x)
    return ExtendedRational(m.a * x.num + m.b * x.den, m.c * x.num + m.d * x.den)


def endpoint_swap_map(p: int, q: int) -> ModularMap:
    """Orientation-reversing symmetry exchanging the geodesics (0, p/r) and (0, p/q).

    Here r = q^-1 mod p and rq = pk + 1; the map is z -> (r zbar - p)/(k zbar - q).
    """
    r = mod_inverse(q, p)
    k = (r * q - 1) // p
    return ModularMap(r, -p, k, -q, reversing=True)


# --- geodesic crossing counts ----------------------------------------------


def _key(x: ExtendedRational):
    """Sort key on the extended line with infinity last."""
    return (1, 0) if x.is_infinite else (0, Fraction(x.num, x.den))


def geodesics_cross(a, b, c, d) -> bool:
    """Do the geodesics with boundary endpoints {a, b} and {c, d} cross?

    True iff exactly one of c, d lies strictly between a and b.  Shared
    endpoints never count as a crossing.
    """
    a, b, c, d = (_as_point(v) for v in (a, b, c, d))
    if {a, b} & {c, d}:
        return False
    lo, hi = sorted((_key(a), _key(b)))
    inside_c = lo < _key(c) < hi
    inside_d = lo < _key(d) < hi
    return inside_c != inside_d


def crossing_count_tree(p: int, q: int) -> int:
    """Count Farey triangles cut by the geodesic from i to p/q by descending the dual tree."""
    if q <= 0:
        raise ValueError("q must be positive")
    if gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")
    if p == 0:
        return 0
    # z -> -zbar preserves the tessellation and the edge (0, inf)
    target = Fraction(abs(p), q)
    left, right = (0, 1), (1, 0)  # current triangle is (left, mediant, right)
    count = 0
    while True:
        count += 1
        m = (left[0] + right[0], left[1] + right[1])
        mval = Fraction(*m)
        if mval == target:
            return count
        if target < mval:
            right = m
        else:
            left = m


def _walk(edge, came_from, geodesic, target) -> int:
    """Edge-to-edge walk; returns the number of triangles entered until ``target``."""
    a, b = edge
    prev = came_from
    count = 0
    while True:
        mediant, difference = farey_neighbors((a, b))
        c = difference if mediant == prev else mediant
        count += 1
        if c == target:
            return count
        if geodesics_cross(a, c, *geodesic):
            prev, b = b, c
        elif geodesics_cross(c, b, *geodesic):
            prev, a = a, c
        else:  # pragma: no cover - would mean the tessellation walk is broken
            raise RuntimeError(f"geodesic {geodesic} leaves triangle ({a}, {c}, {b}) nowhere")


def crossing_count_geodesic(p: int, q: int, anchor: str = "i") -> int:
    """Count Farey triangles cut by a geodesic to p/q, walking edge to edge.

    ``anchor="i"`` uses the segment from the point i on the edge (0, inf);
    the full geodesic through i and x = p/q has endpoints x and -1/x.
    ``anchor="0"`` uses the geodesic from 0, which needs |p| > |q|.
    """
    if q <= 0:
        raise ValueError("q must be positive")
    if gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")
    x = ExtendedRational(p, q)
    if anchor == "i":
        if p == 0:
            return 0
        geodesic = (x, ExtendedRational(-q, p))
        # enter across (0, inf) on the side containing x
        behind = ExtendedRational(-1, 1) if p > 0 else ONE
        return _walk((ZERO, INF), behind, geodesic, x)
    if anchor == "0":
        if abs(p) <= abs(q):
            raise ValueError("the 0-anchored geodesic needs |p| > |q|")
        side = ONE if p > 0 else ExtendedRational(-1, 1)
        # first triangle is (0, +-1, inf); leave it through (+-1, inf)
        return 1 + _walk((side, INF), ZERO, (ZERO, x), x)
    raise ValueError(f"unknown anchor {anchor!r}")


def crossing_count(p: int, q: int) -> int:
    """Number of Farey triangles cut by the geodesic from the edge (0, inf) to p/q.

    Computed by the dual-tree descent and by the geodesic walk; the two must
    agree (and, when |p| > |q|, so must the walk from 0).
    """
    tree = crossing_count_tree(p, q)
    walk = crossing_count_geodesic(p, q, "i")
    if tree != walk:
        raise ArithmeticError(f"crossing counts disagree for {p}/{q}: tree {tree}, walk {walk}")
    if abs(p) > abs(q):
        from_zero = crossing_count_geodesic(p, q, "0")
        if from_zero != tree:
            raise ArithmeticError(
                f"crossing counts disagree for {p}/{q}: tree {tree}, walk from 0 {from_zero}"
            )
    return tree
