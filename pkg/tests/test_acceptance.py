"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import pytest

from lensspine import acceptance

RESULTS = []

CRITERIA = [
    ("euclid_identities", acceptance.euclid_identities),
    ("farey_crossings", acceptance.farey_crossings),
    ("exhaustive_rotation_distance", acceptance.exhaustive_rotation_distance),
    ("ceiling_sum_minimisers", acceptance.ceiling_sum_minimisers),
    ("construction_34_13", acceptance.construction_34_13),
    ("spine_counts", acceptance.spine_counts),
    ("basepoint_invariance", acceptance.basepoint_checks),
    ("sphere_restriction", acceptance.sphere_restriction),
    ("property_suites", acceptance.property_suites),
]


@pytest.mark.parametrize("name,check", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, check):
    result = check()
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.failures[:10]
