"""End-to-end acceptance checks, shared by ``lensspine selftest`` and the test suite.

Each check returns a :class:`CriterionResult`.  ``max_p`` caps the polygon
sizes of the exhaustive flip-graph checks (3 and 9); the arithmetic, Farey,
hull and construction checks run at their fixed sizes.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import gcd

from .arith import euclid_subtractive, euclid_trace, mirror_denominator, mod_inverse
from .bounds import ceiling_sum_oracle, extremal_profile, long_diagonal_bound, partial_sum_checks
from .construct import optimal_triangulation
from .farey import crossing_count_geodesic, crossing_count_tree
from .flipdist import bidirectional_distance, min_rotation_distance
from .spinehull import (
    OrbitConfig,
    basepoint_invariance,
    brute_force_facets,
    convex_hull_4d,
    orbit_points,
    sphere_voronoi_restriction_check,
    spine_summary,
)
from .triangulation import (
    destroyed_count,
    enumerate_all,
    flip,
    flip_moves,
    long_diagonal_count,
    profile_from_remainders,
    rotate,
    rotate_diagonal,
)

FULL_MAX_P = 12


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number}. {self.name}: {self.detail} ({self.seconds:.1f}s)"

    def to_dict(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
            "failures": [repr(f) for f in self.failures[:20]],
        }


def _coprime_pairs(pmax: int, pmin: int = 2):
    for p in range(pmin, pmax + 1):
        for q in range(1, p):
            if gcd(p, q) == 1:
                yield p, q


def _result(number, name, failures, detail, start) -> CriterionResult:
    return CriterionResult(number, name, not failures, detail, time.perf_counter() - start, failures)


def euclid_identities(pmax: int = 500) -> CriterionResult:
    start = time.perf_counter()
    failures, count = [], 0
    for p, q in _coprime_pairs(pmax):
        count += 1
        e = euclid_subtractive(p, q)
        if e != euclid_subtractive(p, p - q) or (p > 1 and e != euclid_subtractive(p, mod_inverse(q, p))):
            failures.append(("symmetry", p, q))
        tr = euclid_trace(p, q)
        k = tr.k
        for i in range(k + 1):
            # convergent numerators against remainders, modulo p
            if (tr.conv(i) * q - (-1) ** i * tr.r(i + 1)) % p:
                failures.append(("congruence", p, q, i))
            if 1 <= i and p != tr.conv(i) * tr.r(i) + tr.conv(i - 1) * tr.r(i + 1):
                failures.append(("remainder expansion", p, q, i))
            if 1 <= i < k and not p > tr.conv(i) * tr.r(i):
                failures.append(("convergent below p/r_i", p, q, i))
        acc = 0
        for j in range(1, k + 1):
            acc += tr.conv(j - 1) * tr.n(j)
            if acc != tr.conv(j) + tr.conv(j - 1) - 1:
                failures.append(("weighted sum", p, q, j))
        if p > 2 and (mirror_denominator(p, q) - (-1) ** (k - 1) * mod_inverse(q, p)) % p:
            failures.append(("reversal", p, q))
    return _result(1, "Euclid identities", failures, f"{count} coprime pairs, p <= {pmax}", start)


def farey_crossings(pmax: int = 200) -> CriterionResult:
    start = time.perf_counter()
    failures, count = [], 0
    for p, q in _coprime_pairs(pmax):
        count += 1
        e = euclid_subtractive(p, q)
        got = (crossing_count_tree(p, q), crossing_count_geodesic(p, q, "i"), crossing_count_geodesic(p, q, "0"))
        if any(g != e for g in got):
            failures.append((p, q, e, got))
    return _result(2, "Farey crossing counts", failures, f"{count} pairs, tree walk and geodesic walk agree with E", start)


def exhaustive_rotation_distance(max_p: int = FULL_MAX_P) -> CriterionResult:
    start = time.perf_counter()
    failures, count = [], 0
    for p in range(3, min(max_p, FULL_MAX_P) + 1):
        all_t = list(enumerate_all(p, cap=max(p, 3)))
        for q in range(p):
            count += 1
            expected = max(0, euclid_subtractive(p, q) - 3) if q else 0
            d, _ = min_rotation_distance(p, q, cap=p)
            if d != expected:
                failures.append(("min distance", p, q, d, expected))
            if q and gcd(p, q) == 1:
                low = min(destroyed_count(t, q) for t in all_t)
                if low < expected:
                    failures.append(("destroyed", p, q, low, expected))
    top = min(max_p, FULL_MAX_P)
    detail = f"{count} (p,q) pairs, 3 <= p <= {top}" if top >= 3 else "empty range"
    return _result(3, "Exhaustive rotation distance", failures, detail, start)


def ceiling_sum_minimisers(cap: int = 14) -> CriterionResult:
    start = time.perf_counter()
    failures, count = [], 0
    # the largest p whose partial quotients sum to S is a Fibonacci number
    a, b = 1, 1
    for _ in range(cap):
        a, b = b, a + b
    for p in range(3, a + 1):
        for q in range(1, p):
            if gcd(p, q) != 1 or 2 * q > p:
                continue
            tr = euclid_trace(p, q)
            if tr.total() > cap:
                continue
            count += 1
            value, minimisers = ceiling_sum_oracle(tr, cap=cap)
            expected = [tuple(extremal_profile(tr).counts)] if tr.k >= 2 else [(p - 3,)]
            if value != tr.total() - 3 or minimisers != expected:
                failures.append((p, q, value, minimisers[:3]))
    return _result(4, "Ceiling-sum minimisers", failures, f"{count} pairs with q < p/2 and partial-quotient sum <= {cap}", start)


def construction_34_13() -> CriterionResult:
    start = time.perf_counter()
    c = optimal_triangulation(34, 13)
    cert = c.certificate
    failures = []
    if cert.destroyed != 5 or euclid_subtractive(34, 13) - 3 != 5:
        failures.append(("destroyed", cert.destroyed))
    if list(cert.profile.counts) != [0, 2, 3, 5, 8, 13]:
        failures.append(("profile", cert.profile.counts))
    if c.flips != 5 or c.witness.end != rotate(c.triangulation, 13):
        failures.append(("witness", c.flips))
    if not cert.ok:
        failures.append(("certificate", cert.checks))
    detail = f"e={c.eccentricity}, profile {list(cert.profile.counts)}, witness {list(c.witness.flips)}"
    return _result(5, "Construction for (34,13)", failures, detail, start)


def spine_counts(pmax: int = 20) -> CriterionResult:
    start = time.perf_counter()
    failures, count = [], 0
    for p, q in _coprime_pairs(pmax, 5):
        if q in (1, p - 1):
            continue
        count += 1
        config = OrbitConfig(p, q)
        pts = config.certified()
        hull = convex_hull_4d(pts)
        s = spine_summary(config, hull)
        if not (s.all_facets_simplicial and s.facet_count == p * s.expected_vertex_count and s.matches_expected):
            failures.append(("count", p, q, s.facet_count))
        if hull.facet_sets != brute_force_facets(pts):
            failures.append(("oracle", p, q))
        if s.euler_characteristic != 0:
            failures.append(("euler", p, q, s.euler_characteristic))
    anchors = {(5, 2): (5, 1), (7, 2): (14, 2)}
    for (p, q), (facets, verts) in anchors.items():
        s = spine_summary(OrbitConfig(p, q))
        if (s.facet_count, s.spine_vertex_count) != (facets, verts):
            failures.append(("anchor", p, q, s.facet_count, s.spine_vertex_count))
    return _result(6, "Spine vertex counts", failures, f"{count} pairs, p <= {pmax}, hull = brute force", start)


def basepoint_checks() -> CriterionResult:
    start = time.perf_counter()
    failures = [(p, q, n) for p, q, n in ((7, 2, 5), (11, 3, 3)) if not basepoint_invariance(p, q, n, seed=0)]
    return _result(7, "Base-point invariance", failures, "(7,2) x5 and (11,3) x3", start)


def sphere_restriction() -> CriterionResult:
    start = time.perf_counter()
    res = sphere_voronoi_restriction_check(orbit_points(OrbitConfig(5, 2)), 10_000, seed=0)
    failures = [] if res.ok else res.mismatches
    return _result(8, "Sphere/ambient nearest point", failures, f"{res.samples} samples, {res.ties} ties", start)


def property_suites(max_p: int = FULL_MAX_P, seed: int = 0) -> CriterionResult:
    start = time.perf_counter()
    failures = []
    top = min(max_p, FULL_MAX_P)
    rng = random.Random(seed)
    for p in range(4, top + 1):
        all_t = list(enumerate_all(p, cap=p))
        traces = {q: euclid_trace(p, q) for q in range(1, p) if gcd(p, q) == 1}
        for t in all_t:
            for x in range(2, p // 2 + 1):
                if long_diagonal_count(t, x) < long_diagonal_bound(p, x):
                    failures.append(("long diagonals", t, x))
            for q, tr in traces.items():
                prof = profile_from_remainders(t, tr.remainders[: tr.k + 1])
                if not all(partial_sum_checks(prof, tr)):
                    failures.append(("partial sums", t, q))
        # flip moves are involutions and commute with rotation; sampled for the larger p
        sample = all_t if len(all_t) <= 500 else rng.sample(all_t, 500)
        for t in sample:
            for d, added, u in flip_moves(t):
                if flip(u, added) != t:
                    failures.append(("involution", t, d))
                q = rng.randrange(1, p)
                if rotate(u, q) != flip(rotate(t, q), rotate_diagonal(p, d, q)):
                    failures.append(("equivariance", t, d, q))
        if p <= 9:
            for _ in range(30):
                a, b, c = (rng.choice(all_t) for _ in range(3))
                dab, dba = bidirectional_distance(a, b), bidirectional_distance(b, a)
                dbc, dac = bidirectional_distance(b, c), bidirectional_distance(a, c)
                if dab != dba or dac > dab + dbc or (dab == 0) != (a == b):
                    failures.append(("metric", a, b, c))
    detail = f"4 <= p <= {top}" if top >= 4 else "empty range"
    return _result(9, "Property suites", failures, detail, start)


def run_all(max_p: int = FULL_MAX_P) -> list[CriterionResult]:
    return [
        euclid_identities(),
        farey_crossings(),
        exhaustive_rotation_distance(max_p),
        ceiling_sum_minimisers(),
        construction_34_13(),
        spine_counts(),
        basepoint_checks(),
        sphere_restriction(),
        property_suites(max_p),
    ]
