from itertools import product
from math import gcd

import pytest

from lensspine.arith import euclid_subtractive, euclid_trace
from lensspine.bounds import (
    ceiling_sum,
    ceiling_sum_minimum,
    ceiling_sum_oracle,
    certify,
    enumerate_admissible_profiles,
    extremal_profile,
    long_diagonal_bound,
    partial_sum_checks,
)
from lensspine.construct import optimal_triangulation
from lensspine.triangulation import LengthProfile, Triangulation, destroyed_count, enumerate_all, fan, length_profile, mirror


@pytest.mark.parametrize("p,x,value", [(12, 3, 1), (6, 2, 0), (34, 13, 0), (34, 2, 14)])
def test_long_diagonal_bound(p, x, value):
    assert long_diagonal_bound(p, x) == value


def test_long_diagonal_bound_range():
    with pytest.raises(ValueError):
        long_diagonal_bound(12, 7)
    with pytest.raises(ValueError):
        long_diagonal_bound(12, 1)


@pytest.mark.parametrize(
    "p,q,profile,value",
    [(34, 13, (0, 2, 3, 5, 8, 13), 5), (9, 1, (6,), 6), (5, 2, (0, 2), 1)],
)
def test_ceiling_sum_examples(p, q, profile, value):
    assert ceiling_sum(LengthProfile(profile), euclid_trace(p, q)) == value


def test_ceiling_sum_length_mismatch():
    with pytest.raises(ValueError):
        ceiling_sum(LengthProfile((1, 2, 3)), euclid_trace(5, 2))


@pytest.mark.parametrize(
    "p,q,profile", [(34, 13, (0, 2, 3, 5, 8, 13)), (5, 2, (0, 2)), (7, 2, (1, 3)), (11, 3, (1, 3, 4))]
)
def test_extremal_profile_examples(p, q, profile):
    tr = euclid_trace(p, q)
    got = extremal_profile(tr)
    assert got.counts == profile
    assert got.total() == p - 3
    assert ceiling_sum(got, tr) == euclid_subtractive(p, q) - 3


def test_extremal_profile_preconditions():
    with pytest.raises(ValueError):
        extremal_profile(euclid_trace(9, 1))
    with pytest.raises(ValueError):
        extremal_profile(euclid_trace(7, 5))


def _literal_minimisers(tr, extra=0):
    best, arg = None, []
    for prof in enumerate_admissible_profiles(tr, extra):
        v = ceiling_sum(LengthProfile(prof), tr)
        if best is None or v < best:
            best, arg = v, [prof]
        elif v == best:
            arg.append(prof)
    return best, sorted(arg)


def _small_pairs(pmax):
    for p in range(4, pmax + 1):
        for q in range(1, p):
            if gcd(p, q) == 1 and 2 * q < p:
                yield p, q


@pytest.mark.parametrize("p,q", list(_small_pairs(22)))
def test_dp_oracle_matches_literal_enumeration(p, q):
    tr = euclid_trace(p, q)
    assert ceiling_sum_oracle(tr, cap=None) == _literal_minimisers(tr)


@pytest.mark.parametrize("p,q", [(5, 2), (9, 1), (34, 13), (89, 34), (12, 5)])
def test_oracle_minimum_is_e_minus_3(p, q):
    assert ceiling_sum_minimum(euclid_trace(p, q)) == euclid_subtractive(p, q) - 3


@pytest.mark.parametrize("p,q", [(7, 2), (11, 3), (13, 5), (34, 13), (29, 12), (17, 7)])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_surplus_raises_minimum_by_d(p, q, d):
    tr = euclid_trace(p, q)
    k = tr.k
    value, minimisers = ceiling_sum_oracle(tr, extra=d * tr.conv(k - 1))
    assert value == euclid_subtractive(p, q) - 3 + d
    s = list(extremal_profile(tr).counts)
    s[-1] = tr.conv(k - 1) * (tr.n(k) - 1 + d)
    assert minimisers == [tuple(s)]


def test_oracle_cap():
    with pytest.raises(ValueError):
        ceiling_sum_oracle(euclid_trace(40, 1))
    assert ceiling_sum_oracle(euclid_trace(40, 1), cap=None)[0] == 37


def test_certificate_examples():
    c = certify(Triangulation(4, [(0, 2)]), 1)
    assert (c.bound_value, c.target, c.extremal, c.ok) == (1, 1, True, True)
    c = certify(fan(6), 1)
    assert (c.bound_value, c.target, c.profile.counts) == (3, 3, (3,))
    fig = optimal_triangulation(34, 13).triangulation
    c = certify(fig, 13)
    assert (c.bound_value, c.target, c.extremal, c.destroyed) == (5, 5, True, 5)
    assert c.group_destroyed == c.group_bounds == [0, 1, 1, 1, 1, 1]
    d = c.to_dict()
    assert d["profile"] == [0, 2, 3, 5, 8, 13] and all(d["checks"].values())


def test_certificate_rejects_non_coprime():
    with pytest.raises(ValueError):
        certify(fan(6), 2)
    with pytest.raises(ValueError):
        certify(fan(6), 0)


@pytest.mark.parametrize("p", range(4, 12))
def test_certificates_over_all_triangulations(p):
    qs = [q for q in range(1, p) if gcd(p, q) == 1]
    for t in enumerate_all(p):
        for q in qs:
            c = certify(t, q)
            assert c.checks["profile_sums_to_p_minus_3"]
            assert c.checks["partial_sum_inequalities"]
            assert c.bound_value >= c.target
            if c.checks["per_group_destruction"]:
                assert c.destroyed >= c.bound_value
            assert destroyed_count(t, q) >= euclid_subtractive(p, q) - 3
            assert certify(mirror(t), p - q).bound_value == c.bound_value


@pytest.mark.parametrize("p", range(4, 13))
def test_partial_sums_exceed_convergent_minus_3(p):
    for q in range(1, p):
        if gcd(p, q) != 1:
            continue
        tr = euclid_trace(p, q)
        for t in enumerate_all(p):
            assert all(partial_sum_checks(length_profile(t, q), tr))


def test_admissible_enumeration_is_complete_for_tiny_case():
    tr = euclid_trace(7, 2)
    got = set(enumerate_admissible_profiles(tr))
    want = {(a, b) for a, b in product(range(5), repeat=2) if a + b == 4 and a > tr.conv(1) - 3}
    assert got == want
