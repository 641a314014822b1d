"""Exact rotation distance on the flip graph of a polygon.

Two search engines:

* :func:`distance_bfs` -- bidirectional breadth-first search, for p within the
  exhaustive cap;
* :func:`distance_bounded` -- iterative deepening with the heuristic
  ``|t \\ target|``, admissible because a flip changes exactly one diagonal.

Witnesses are the lexicographically least geodesic, comparing the sequences
of flipped diagonals, so results do not depend on set iteration order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .triangulation import (
    Diagonal,
    Triangulation,
    destroyed_count,
    enumerate_all,
    flip,
    flip_moves,
    flip_neighbors,
    max_p_cap,
    normalize,
    rotate,
)


@dataclass(frozen=True)
class FlipSequence:
    start: Triangulation
    flips: tuple[Diagonal, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "flips", tuple(normalize(self.start.p, *d) for d in self.flips))
        # replaying raises if some diagonal is missing at its turn
        self.end  # noqa: B018

    def __len__(self) -> int:
        return len(self.flips)

    def triangulations(self) -> Iterator[Triangulation]:
        """Start, every intermediate triangulation, and the end."""
        t = self.start
        yield t
        for d in self.flips:
            t = flip(t, d)
            yield t

    @property
    def end(self) -> Triangulation:
        t = self.start
        for d in self.flips:
            t = flip(t, d)
        return t

    def created(self) -> list[Diagonal]:
        """The diagonal introduced by each flip."""
        out = []
        ts = list(self.triangulations())
        for before, after in zip(ts, ts[1:]):
            (new,) = set(after.diagonals) - set(before.diagonals)
            out.append(new)
        return out


def _check_pair(t1: Triangulation, t2: Triangulation) -> None:
    if t1.p != t2.p:
        raise ValueError(f"polygon sizes differ: {t1.p} vs {t2.p}")


def bidirectional_distance(t1: Triangulation, t2: Triangulation) -> int:
    """Flip-graph distance, expanding the smaller frontier one full layer at a time."""
    _check_pair(t1, t2)
    if t1 == t2:
        return 0
    dist_a, dist_b = {t1: 0}, {t2: 0}
    front_a, front_b = [t1], [t2]
    depth_a = depth_b = 0
    while front_a and front_b:
        if len(front_a) <= len(front_b):
            front, seen, other, depth = front_a, dist_a, dist_b, depth_a
        else:
            front, seen, other, depth = front_b, dist_b, dist_a, depth_b
        best = None
        nxt = []
        for t in front:
            for _, u in flip_neighbors(t):
                if u in seen:
                    continue
                seen[u] = depth + 1
                nxt.append(u)
                if u in other:
                    cand = depth + 1 + other[u]
                    if best is None or cand < best:
                        best = cand
        if best is not None:
            return best
        if front is front_a:
            front_a, depth_a = nxt, depth_a + 1
        else:
            front_b, depth_b = nxt, depth_b + 1
    raise RuntimeError("flip graph is disconnected")  # pragma: no cover


def _layers_from(target: Triangulation, depth: int) -> dict[Triangulation, int]:
    dist = {target: 0}
    front = [target]
    for level in range(depth):
        nxt = []
        for t in front:
            for _, u in flip_neighbors(t):
                if u not in dist:
                    dist[u] = level + 1
                    nxt.append(u)
        front = nxt
    return dist


def distance_bfs(t1: Triangulation, t2: Triangulation, cap: int | None = None):
    """Exact distance and the lexicographically least geodesic from t1 to t2."""
    _check_pair(t1, t2)
    limit = max_p_cap(cap)
    if t1.p > limit:
        raise ValueError(f"p={t1.p} exceeds the search cap {limit}")
    d = bidirectional_distance(t1, t2)
    if d == 0:
        return 0, FlipSequence(t1, ())
    # every node within d - 1 of t2 is labelled; walk greedily from t1
    labels = _layers_from(t2, d - 1)
    flips = []
    t = t1
    for remaining in range(d, 0, -1):
        for diag, u in flip_neighbors(t):
            if labels.get(u) == remaining - 1:
                flips.append(diag)
                t = u
                break
        else:  # pragma: no cover
            raise RuntimeError("greedy walk lost the geodesic")
    return d, FlipSequence(t1, tuple(flips))


def distance_bounded(t1: Triangulation, t2: Triangulation, budget: int):
    """A shortest flip sequence of length <= ``budget``, or ``None`` if there is none.

    Iterative deepening on f = g + h with h(t) = |t \\ t2|.  Within the final
    bound the depth-first order is lexicographic, so the first path found is
    the lexicographically least geodesic.
    """
    _check_pair(t1, t2)
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    goal = set(t2.diagonals)

    def h(t: Triangulation) -> int:
        return sum(1 for d in t.diagonals if d not in goal)

    path: list[Diagonal] = []
    on_path = {t1}

    def search(t: Triangulation, g: int, bound: int, ht: int) -> int | None:
        """Returns None on success, else the smallest f that exceeded ``bound``."""
        if ht == 0:
            return None
        smallest = None
        for diag, added, u in flip_moves(t):
            if u in on_path:
                continue
            hu = ht - (diag not in goal) + (added not in goal)
            f = g + 1 + hu
            if f > bound:
                if smallest is None or f < smallest:
                    smallest = f
                continue
            path.append(diag)
            on_path.add(u)
            res = search(u, g + 1, bound, hu)
            if res is None:
                return None
            on_path.discard(u)
            path.pop()
            if smallest is None or res < smallest:
                smallest = res
        return bound + 1 if smallest is None else smallest

    bound = h(t1)
    while bound <= budget:
        res = search(t1, 0, bound, h(t1))
        if res is None:
            return len(path), FlipSequence(t1, tuple(path))
        if res <= bound:  # pragma: no cover - dead end everywhere
            return None
        bound = res
    return None


def min_rotation_distance(p: int, q: int, cap: int | None = None):
    """Minimum of d(t, rotate(t, q)) over all triangulations, with the first minimiser.

    Exact without running a search from every triangulation: the number of
    destroyed diagonals is a lower bound for each t, so at threshold D only
    triangulations destroying at most D diagonals can reach their rotation in
    D flips.  D goes up from the smallest destroyed count until one succeeds.
    Ties are broken by enumeration order.
    """
    limit = max_p_cap(cap)
    if p > limit:
        raise ValueError(f"p={p} exceeds the exhaustive cap {limit}")
    q %= p
    all_t = list(enumerate_all(p, cap=limit))
    lower = [destroyed_count(t, q) for t in all_t]
    threshold = min(lower)
    while True:
        for t, lb in zip(all_t, lower):
            if lb > threshold:
                continue
            found = distance_bounded(t, rotate(t, q), threshold)
            if found is not None:
                return found[0], t
        threshold += 1
