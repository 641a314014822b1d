import pytest
from hypothesis import given
from hypothesis import strategies as st

from lensspine.triangulation import (
    MAX_P_ENV,
    Triangulation,
    catalan,
    destroyed_count,
    diagonal_length,
    enumerate_all,
    fan,
    flip,
    flip_moves,
    from_text,
    length_profile,
    long_diagonal_count,
    mirror,
    rotate,
    rotate_diagonal,
    to_text,
)
from oracles import all_triangulations, rotated


@pytest.mark.parametrize("p,d,length", [(6, (0, 3), 3), (6, (0, 2), 2), (34, (0, 13), 13), (34, (3, 30), 7)])
def test_diagonal_length(p, d, length):
    assert diagonal_length(p, d) == length


def test_diagonal_length_rejects_sides():
    with pytest.raises(ValueError):
        diagonal_length(6, (0, 1))
    with pytest.raises(ValueError):
        diagonal_length(6, (0, 5))


def test_validation():
    with pytest.raises(ValueError, match="cross"):
        Triangulation(6, [(0, 3), (1, 4), (0, 2)])
    with pytest.raises(ValueError, match="diagonals"):
        Triangulation(6, [(0, 3)])
    with pytest.raises(ValueError, match="side"):
        Triangulation(4, [(0, 1)])
    assert Triangulation(5, [(3, 0), (2, 0)]) == fan(5)


def test_flip_examples():
    assert flip(Triangulation(4, [(0, 2)]), (0, 2)) == Triangulation(4, [(1, 3)])
    assert flip(fan(5), (0, 2)) == Triangulation(5, [(1, 3), (0, 3)])
    with pytest.raises(ValueError):
        flip(fan(5), (1, 3))


def test_rotate_examples():
    t = Triangulation(4, [(0, 2)])
    assert rotate(t, 1) == Triangulation(4, [(1, 3)])
    assert rotate(fan(7), 7) == fan(7) and rotate(fan(7), 0) == fan(7)
    assert rotate(fan(7), 3) == fan(7, 3)


def test_destroyed_examples():
    assert destroyed_count(Triangulation(4, [(0, 2)]), 1) == 1
    assert destroyed_count(fan(9), 0) == 0
    assert destroyed_count(fan(9), 1) == 6


def test_long_diagonals():
    assert long_diagonal_count(fan(6), 2) == 1
    assert all(long_diagonal_count(t, 3) == 0 for t in enumerate_all(6))
    with pytest.raises(ValueError):
        long_diagonal_count(fan(6), 4)


def test_length_profile_examples():
    assert length_profile(fan(5), 2).counts == (0, 2)
    assert length_profile(Triangulation(4, [(0, 2)]), 1).counts == (1,)
    assert length_profile(fan(34), 13).total() == 31


@pytest.mark.parametrize("p", range(3, 12))
def test_enumeration_counts(p):
    ts = list(enumerate_all(p))
    assert len(ts) == catalan(p - 2) == len(set(ts))
    for t in ts[:: max(1, len(ts) // 50)]:
        t.validate()


def test_enumeration_p12_count():
    assert sum(1 for _ in enumerate_all(12)) == 16796


@pytest.mark.parametrize("p", range(4, 10))
def test_enumeration_matches_brute_force(p):
    assert {frozenset(t.diagonals) for t in enumerate_all(p)} == set(all_triangulations(p))


def test_enumeration_cap(monkeypatch):
    with pytest.raises(ValueError, match=MAX_P_ENV):
        next(enumerate_all(14))
    monkeypatch.setenv(MAX_P_ENV, "5")
    with pytest.raises(ValueError):
        next(enumerate_all(6))
    assert sum(1 for _ in enumerate_all(5)) == 5


triangulations = st.integers(4, 10).flatmap(lambda p: st.sampled_from(list(enumerate_all(p))))


@given(triangulations, st.data())
def test_flip_properties(t, data):
    p = t.p
    d = data.draw(st.sampled_from(t.diagonals))
    q = data.draw(st.integers(-2 * p, 2 * p))
    u = flip(t, d)
    assert len(set(t.diagonals) ^ set(u.diagonals)) == 2
    (added,) = set(u.diagonals) - set(t.diagonals)
    assert flip(u, added) == t
    assert flip(rotate(t, q), rotate_diagonal(p, d, q)) == rotate(u, q)
    u.validate()


@given(triangulations, st.integers(0, 30))
def test_rotation_and_mirror(t, q):
    p = t.p
    assert rotate(rotate(t, q), -q) == t
    assert frozenset(rotate(t, q).diagonals) == rotated(p, t.diagonals, q)
    assert mirror(mirror(t)) == t
    assert mirror(rotate(t, q)) == rotate(mirror(t), p - q)
    assert destroyed_count(t, q) == destroyed_count(t, -q)


@given(triangulations)
def test_flip_moves_are_sorted_and_complete(t):
    moves = list(flip_moves(t))
    assert [m[0] for m in moves] == list(t.diagonals)
    for removed, added, u in moves:
        assert u == flip(t, removed) and added in u.diagonals


def test_text_round_trip():
    t = fan(8, 3)
    assert from_text(to_text(t)) == t
    assert from_text("# comment\np=5\n0-2\n\n0-3  # fan\n") == fan(5)
    for bad in ["0-2\n", "p=5\n0-9\n0-2\n", "p=5\np=5\n"]:
        with pytest.raises(ValueError):
            from_text(bad)
