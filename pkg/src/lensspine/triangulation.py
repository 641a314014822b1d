"""Triangulations of a convex p-gon, flips and the rotation action.

Vertices are labelled 0..p-1 counterclockwise and rotating by q shifts every
label by +q (mod p).  A triangulation is stored as a sorted tuple of diagonals
``(a, b)`` with ``a < b``, which doubles as a canonical hash key.  All lengths
are arc counts on the polygon, never Euclidean lengths.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator

Diagonal = tuple[int, int]

DEFAULT_MAX_P = 13
MAX_P_ENV = "LENSSPINE_MAX_P"


def max_p_cap(cap: int | None = None) -> int:
    """Cap on p for exhaustive operations; ``LENSSPINE_MAX_P`` overrides the default."""
    if cap is not None:
        return cap
    return int(os.environ.get(MAX_P_ENV, DEFAULT_MAX_P))


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def normalize(p: int, a: int, b: int) -> Diagonal:
    a, b = a % p, b % p
    return (a, b) if a < b else (b, a)


def is_diagonal(p: int, d: Diagonal) -> bool:
    a, b = d
    return (b - a) % p not in (0, 1, p - 1)


def crosses(d1: Diagonal, d2: Diagonal) -> bool:
    """Strict interior intersection of two chords with sorted endpoints."""
    a, b = d1
    c, e = d2
    return a < c < b < e or c < a < e < b


def diagonal_length(p: int, d: Diagonal) -> int:
    """Number of polygon sides on the shorter arc between the endpoints."""
    a, b = d
    if not (0 <= a < p and 0 <= b < p) or not is_diagonal(p, (a, b)):
        raise ValueError(f"{d} is not a diagonal of the {p}-gon")
    k = (b - a) % p
    return min(k, p - k)


class Triangulation:
    """A maximal set of pairwise non-crossing diagonals of the p-gon."""

    __slots__ = ("p", "diagonals", "_hash")

    def __init__(self, p: int, diagonals: Iterable[Diagonal], check: bool = True):
        if check:
            diags = tuple(sorted({normalize(p, a, b) for a, b in diagonals}))
        else:
            diags = tuple(diagonals)
        self.p = p
        self.diagonals = diags
        self._hash = hash((p, diags))
        if check:
            self.validate()

    def validate(self) -> None:
        p, diags = self.p, self.diagonals
        if p < 3:
            raise ValueError(f"polygon needs at least 3 vertices, got {p}")
        for d in diags:
            if not is_diagonal(p, d):
                raise ValueError(f"{d} is a side or degenerate pair of the {p}-gon")
        for i, d1 in enumerate(diags):
            for d2 in diags[i + 1 :]:
                if crosses(d1, d2):
                    raise ValueError(f"diagonals {d1} and {d2} cross")
        if len(diags) != p - 3:
            raise ValueError(f"{len(diags)} diagonals; a triangulation of a {p}-gon has {p - 3}")

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.p == other.p and self.diagonals == other.diagonals

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Triangulation"):
        return (self.p, self.diagonals) < (other.p, other.diagonals)

    def __contains__(self, d) -> bool:
        return normalize(self.p, *d) in self.diagonals

    def __iter__(self) -> Iterator[Diagonal]:
        return iter(self.diagonals)

    def __len__(self) -> int:
        return len(self.diagonals)

    def __repr__(self):
        return f"Triangulation({self.p}, {list(self.diagonals)})"

    def adjacency(self) -> list[set[int]]:
        p = self.p
        adj = [{(v - 1) % p, (v + 1) % p} for v in range(p)]
        for a, b in self.diagonals:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def triangles(self) -> list[tuple[int, int, int]]:
        adj = self.adjacency()
        tris = set()
        for a in range(self.p):
            for b in adj[a]:
                if b > a:
                    for c in adj[a] & adj[b]:
                        if c > b:
                            tris.add((a, b, c))
        return sorted(tris)


def fan(p: int, apex: int = 0) -> Triangulation:
    """All diagonals from ``apex``."""
    return Triangulation(p, [(apex, apex + i) for i in range(2, p - 1)])


def _flipped(t: Triangulation, d: Diagonal, adj: list[set[int]]) -> Diagonal:
    a, b = d
    apexes = adj[a] & adj[b]
    if len(apexes) != 2:  # pragma: no cover - impossible for a valid triangulation
        raise RuntimeError(f"diagonal {d} of {t} does not bound two triangles")
    return normalize(t.p, *apexes)


def flip(t: Triangulation, d) -> Triangulation:
    """Replace ``d`` by the other diagonal of its quadrilateral."""
    d = normalize(t.p, *d)
    if d not in t.diagonals:
        raise ValueError(f"{d} is not a diagonal of {t}")
    new = _flipped(t, d, t.adjacency())
    diags = tuple(sorted([x for x in t.diagonals if x != d] + [new]))
    return Triangulation(t.p, diags, check=False)


def flip_moves(t: Triangulation) -> Iterator[tuple[Diagonal, Diagonal, Triangulation]]:
    """Yield ``(removed, added, result)`` for every diagonal, in sorted order."""
    adj = t.adjacency()
    diags = t.diagonals
    for i, d in enumerate(diags):
        new = _flipped(t, d, adj)
        rest = list(diags[:i] + diags[i + 1 :])
        rest.append(new)
        rest.sort()
        yield d, new, Triangulation(t.p, tuple(rest), check=False)


def flip_neighbors(t: Triangulation) -> Iterator[tuple[Diagonal, Triangulation]]:
    """Yield ``(flipped diagonal, result)`` for every diagonal, in sorted order."""
    for d, _, u in flip_moves(t):
        yield d, u


def rotate_diagonal(p: int, d: Diagonal, q: int) -> Diagonal:
    return normalize(p, d[0] + q, d[1] + q)


def rotate(t: Triangulation, q: int) -> Triangulation:
    p = t.p
    q %= p
    if q == 0:
        return t
    return Triangulation(p, tuple(sorted(rotate_diagonal(p, d, q) for d in t.diagonals)), check=False)


def mirror(t: Triangulation) -> Triangulation:
    """Reflect the polygon: vertex v goes to -v (mod p)."""
    p = t.p
    return Triangulation(p, tuple(sorted(normalize(p, -a, -b) for a, b in t.diagonals)), check=False)


def destroyed_count(t: Triangulation, q: int) -> int:
    """Diagonals of ``t`` that are not diagonals of ``t`` rotated by ``q``."""
    rotated = set(rotate(t, q).diagonals)
    return sum(1 for d in t.diagonals if d not in rotated)


def long_diagonal_count(t: Triangulation, x: int) -> int:
    if not 2 <= x <= t.p / 2:
        raise ValueError(f"need 2 <= x <= p/2, got x={x}, p={t.p}")
    return sum(1 for d in t.diagonals if diagonal_length(t.p, d) > x)


@dataclass(frozen=True)
class LengthProfile:
    """``counts[i-1]`` is the number of diagonals with length in (r_i, r_{i-1}]."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if any(s < 0 for s in self.counts):
            raise ValueError(f"negative group size in {self.counts}")

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __getitem__(self, i):
        return self.counts[i]

    def total(self) -> int:
        return sum(self.counts)

    def partial_sums(self) -> list[int]:
        out, acc = [], 0
        for s in self.counts:
            acc += s
            out.append(acc)
        return out


def length_profile(t: Triangulation, q: int) -> LengthProfile:
    from .arith import euclid_trace

    trace = euclid_trace(t.p, q)
    return profile_from_remainders(t, trace.remainders[: trace.k + 1])


def profile_from_remainders(t: Triangulation, remainders) -> LengthProfile:
    """Group diagonals by the half-open length windows (r_i, r_{i-1}]."""
    k = len(remainders) - 1
    counts = [0] * k
    for d in t.diagonals:
        length = diagonal_length(t.p, d)
        for i in range(1, k + 1):
            if remainders[i] < length <= remainders[i - 1]:
                counts[i - 1] += 1
                break
        else:  # pragma: no cover - r_k = 1 < every length
            raise ValueError(f"length {length} falls outside every group")
    return LengthProfile(tuple(counts))


def _triangulate(verts: tuple[int, ...]) -> Iterator[list[Diagonal]]:
    """Triangulations of the sub-polygon ``verts`` whose base edge is (verts[0], verts[-1])."""
    n = len(verts)
    if n < 3:
        yield []
        return
    first, last = verts[0], verts[-1]
    for k in range(1, n - 1):
        apex = verts[k]
        own = []
        if k > 1:
            own.append((first, apex))
        if k < n - 2:
            own.append((apex, last))
        for left in _triangulate(verts[: k + 1]):
            for right in _triangulate(verts[k:]):
                yield own + left + right


def enumerate_all(p: int, cap: int | None = None) -> Iterator[Triangulation]:
    """Every triangulation of the p-gon exactly once (Catalan(p-2) of them)."""
    limit = max_p_cap(cap)
    if p < 3:
        raise ValueError(f"polygon needs at least 3 vertices, got {p}")
    if p > limit:
        raise ValueError(f"p={p} exceeds the enumeration cap {limit} (set {MAX_P_ENV} to raise it)")
    for diags in _triangulate(tuple(range(p))):
        yield Triangulation(p, tuple(sorted(diags)), check=False)


# --- text format -------------------------------------------------------------


def to_text(t: Triangulation) -> str:
    lines = [f"p={t.p}"] + [f"{a}-{b}" for a, b in t.diagonals]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Triangulation:
    p = None
    diags = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("p="):
            if p is not None:
                raise ValueError("duplicate p= line")
            p = int(line[2:])
            continue
        if p is None:
            raise ValueError("triangulation text must start with a p=<n> line")
        a, b = line.split("-")
        diags.append((int(a), int(b)))
    if p is None:
        raise ValueError("missing p=<n> line")
    for a, b in diags:
        if not (0 <= a < p and 0 <= b < p):
            raise ValueError(f"vertex out of range in {a}-{b} for p={p}")
    return Triangulation(p, diags)
