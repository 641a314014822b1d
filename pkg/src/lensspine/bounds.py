"""Lower-bound certificates for the rotation distance.

For a triangulation t and a rotation by q the certificate records the length
profile of t, the ceiling sum s_1 + sum ceil(s_i / p_{i-1}) and the number of
diagonals the rotation actually destroys, both overall and per length group.
Every inequality the argument relies on is recorded as a named check rather
than assumed.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import gcd

import numpy as np

from .arith import EuclidTrace, euclid_subtractive, euclid_trace
from .triangulation import (
    LengthProfile,
    Triangulation,
    destroyed_count,
    diagonal_length,
    mirror,
    profile_from_remainders,
    rotate,
)

DEFAULT_ORACLE_CAP = 14


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def long_diagonal_bound(p: int, x: int) -> int:
    """ceil(p/x) - 3; values <= 0 say nothing."""
    if not 2 <= x <= p / 2:
        raise ValueError(f"need 2 <= x <= p/2, got x={x}, p={p}")
    return _ceil_div(p, x) - 3


def ceiling_sum(profile, trace: EuclidTrace) -> int:
    """s_1 + ceil(s_2/p_1) + ... + ceil(s_k/p_{k-1})."""
    s = list(profile)
    if len(s) != trace.k:
        raise ValueError(f"profile has {len(s)} groups, trace has k={trace.k}")
    return s[0] + sum(_ceil_div(s[i], trace.conv(i)) for i in range(1, len(s)))


def extremal_profile(trace: EuclidTrace) -> LengthProfile:
    """The unique profile attaining E(p,q) - 3 (needs k >= 2 and p > 2q)."""
    k = trace.k
    if k < 2:
        raise ValueError("the extremal profile needs a continued fraction with k >= 2")
    if not trace.p > 2 * trace.q:
        raise ValueError(f"normalise to p > 2q first (got p={trace.p}, q={trace.q})")
    s = [trace.n(1) - 2]
    s += [trace.conv(l - 1) * trace.n(l) for l in range(2, k)]
    s.append(trace.conv(k - 1) * (trace.n(k) - 1))
    return LengthProfile(tuple(s))


def partial_sum_checks(profile, trace: EuclidTrace) -> list[bool]:
    """(s_1 + ... + s_i > p_i - 3) for i = 1..k-1."""
    out, acc = [], 0
    for i, s in enumerate(list(profile)[:-1], start=1):
        acc += s
        out.append(acc > trace.conv(i) - 3)
    return out


@dataclass
class BoundCertificate:
    p: int
    q: int
    normalized_q: int
    mirrored: bool
    trace: EuclidTrace
    profile: LengthProfile
    partial_sum_checks: list[bool]
    bound_value: int
    target: int
    extremal: bool
    destroyed: int
    group_destroyed: list[int] = field(default_factory=list)
    group_bounds: list[int] = field(default_factory=list)

    @property
    def group_checks(self) -> list[bool]:
        return [got >= need for got, need in zip(self.group_destroyed, self.group_bounds)]

    @property
    def checks(self) -> dict[str, bool]:
        return {
            "profile_sums_to_p_minus_3": self.profile.total() == self.p - 3,
            "partial_sum_inequalities": all(self.partial_sum_checks),
            "bound_at_least_target": self.bound_value >= self.target,
            "per_group_destruction": all(self.group_checks),
            "destroyed_at_least_bound": self.destroyed >= self.bound_value,
            "destroyed_at_least_target": self.destroyed >= self.target,
        }

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["trace"] = {
            "coefficients": list(self.trace.coefficients),
            "remainders": list(self.trace.remainders),
            "convergents": list(self.trace.numerators),
        }
        d["profile"] = list(self.profile.counts)
        d["checks"] = self.checks
        return d


def certify(t: Triangulation, q: int) -> BoundCertificate:
    """Certificate that rotating ``t`` by ``q`` costs at least E(p,q) - 3 flips.

    Rotations with q > p/2 are handled by reflecting the polygon, which turns a
    rotation by q into one by p - q.
    """
    p = t.p
    if gcd(p, q % p) != 1 or q % p == 0:
        raise ValueError(f"q={q} must be coprime to p={p} and nonzero mod p")
    q_orig = q
    q %= p
    work, mirrored = t, False
    if 2 * q > p:
        work, q, mirrored = mirror(t), p - q, True
    target = euclid_subtractive(p, q) - 3
    if p == 3:
        trace = euclid_trace(3, 1)
        profile = LengthProfile((0,))
        return BoundCertificate(p, q_orig, q, mirrored, trace, profile, [], 0, 0, True, 0, [0], [0])
    trace = euclid_trace(p, q)
    profile = profile_from_remainders(work, trace.remainders[: trace.k + 1])
    checks = partial_sum_checks(profile, trace)
    value = ceiling_sum(profile, trace)
    extremal = True if trace.k == 1 else profile == extremal_profile(trace)

    rotated = set(rotate(work, q).diagonals)
    remainders = trace.remainders
    group_destroyed = [0] * trace.k
    for d in work.diagonals:
        if d in rotated:
            continue
        length = diagonal_length(p, d)
        for i in range(1, trace.k + 1):
            if remainders[i] < length <= remainders[i - 1]:
                group_destroyed[i - 1] += 1
                break
    group_bounds = [_ceil_div(s, trace.conv(i)) for i, s in enumerate(profile.counts)]
    destroyed = destroyed_count(work, q)
    return BoundCertificate(
        p=p,
        q=q_orig,
        normalized_q=q,
        mirrored=mirrored,
        trace=trace,
        profile=profile,
        partial_sum_checks=checks,
        bound_value=value,
        target=target,
        extremal=extremal,
        destroyed=destroyed,
        group_destroyed=group_destroyed,
        group_bounds=group_bounds,
    )


# --- brute-force validation of the ceiling inequality --------------------------


def _admissible_lower(trace: EuclidTrace) -> list[int]:
    """Smallest allowed prefix sum after each group: p_i - 2 for i < k (none for i = k)."""
    return [trace.conv(i) - 2 for i in range(1, trace.k)]


def ceiling_sum_oracle(trace: EuclidTrace, extra: int = 0, cap: int | None = DEFAULT_ORACLE_CAP):
    """Exact minimum of the ceiling sum over all admissible profiles, with all minimisers.

    Admissible: nonnegative integers, s_1 + ... + s_i > p_i - 3 for i < k and
    s_1 + ... + s_k = p - 3 + extra.  Solved exhaustively by dynamic
    programming over prefix sums (group i costs ceil(s_i / p_{i-1})), then
    every optimal profile is recovered by backtracking.
    """
    if cap is not None and trace.total() > cap:
        raise ValueError(f"sum of partial quotients {trace.total()} exceeds the oracle cap {cap}")
    total = trace.p - 3 + extra
    if total < 0:
        raise ValueError("negative total")
    k = trace.k
    lower = _admissible_lower(trace) + [total]
    inf = np.iinfo(np.int64).max // 4
    size = total + 1
    # best[i][S]: minimum cost of the first i+1 groups with prefix sum S
    best = []
    first = np.arange(size, dtype=np.int64)  # s_1 costs itself
    first[: max(lower[0], 0)] = inf
    best.append(first)
    for i in range(1, k):
        m = trace.conv(i)  # denominator p_i for group i+1
        prev = best[-1]
        cur = prev.copy()  # s_{i+1} = 0
        for s in range(1, size):
            np.minimum(cur[s:], prev[: size - s] + _ceil_div(s, m), out=cur[s:])
        cur[: max(lower[i], 0)] = inf
        best.append(cur)
    value = int(best[-1][total])
    if value >= inf:
        raise ValueError("no admissible profile")

    minimisers = []

    def back(i: int, S: int, suffix: list[int]):
        if i == 0:
            if best[0][S] == S:
                minimisers.append(tuple([S] + suffix))
            return
        m = trace.conv(i)
        for s in range(0, S + 1):
            rest = S - s
            cost = _ceil_div(s, m)
            if best[i - 1][rest] < inf and best[i - 1][rest] + cost == best[i][S]:
                back(i - 1, rest, [s] + suffix)

    back(k - 1, total, [])
    return value, sorted(minimisers)


def ceiling_sum_minimum(trace: EuclidTrace, cap: int | None = DEFAULT_ORACLE_CAP) -> int:
    return ceiling_sum_oracle(trace, cap=cap)[0]


def enumerate_admissible_profiles(trace: EuclidTrace, extra: int = 0):
    """Literal enumeration of admissible profiles; only for small p."""
    total = trace.p - 3 + extra
    lower = _admissible_lower(trace)
    k = trace.k

    def rec(i: int, acc: int, prefix: list[int]):
        if i == k - 1:
            yield tuple(prefix + [total - acc])
            return
        for s in range(0, total - acc + 1):
            if acc + s >= lower[i]:
                yield from rec(i + 1, acc + s, prefix + [s])

    yield from rec(0, 0, [])
