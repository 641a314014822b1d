"""Subtractive Euclid counts, continued fractions and convergents.

Everything here works on Python ints, so convergents never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


def euclid_subtractive(p: int, q: int) -> int:
    """Number of subtractions turning the unordered pair (p, q) into (gcd, 0).

    Equal to the sum of the partial quotients of p/q.  ``E(p, 0) == 0``.
    """
    if p < 0 or q < 0:
        raise ValueError(f"expected nonnegative integers, got ({p}, {q})")
    if p == 0 and q == 0:
        raise ValueError("E(0, 0) is undefined")
    a, b = max(p, q), min(p, q)
    count = 0
    while b:
        n, r = divmod(a, b)
        count += n
        a, b = b, r
    return count


def _check_reduced(p: int, q: int) -> None:
    if not 0 < q < p:
        raise ValueError(f"need 0 < q < p, got p={p}, q={q}")
    if gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")


@dataclass(frozen=True)
class ContinuedFraction:
    """Partial quotients n_1..n_k of p/q, canonical (last one >= 2 if k > 1)."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        c = self.coefficients
        if not c or any(n < 1 for n in c):
            raise ValueError(f"coefficients must be positive, got {c}")
        if len(c) > 1 and c[-1] < 2:
            raise ValueError("non-canonical continued fraction (last term 1)")

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def value(self) -> Fraction:
        return continued_fraction_value(self.coefficients)

    def total(self) -> int:
        return sum(self.coefficients)


def continued_fraction(p: int, q: int) -> ContinuedFraction:
    _check_reduced(p, q)
    coeffs = []
    a, b = p, q
    while b:
        n, r = divmod(a, b)
        coeffs.append(n)
        a, b = b, r
    return ContinuedFraction(tuple(coeffs))


def continued_fraction_value(coefficients) -> Fraction:
    """Value of n_1 + 1/(n_2 + ...) for any positive coefficient list."""
    coefficients = list(coefficients)
    x = Fraction(coefficients[-1])
    for n in reversed(coefficients[:-1]):
        x = n + 1 / x
    return x


@dataclass(frozen=True)
class EuclidTrace:
    """All integer sequences of the Euclid run on p/q.

    ``remainders`` is r_0 = p, r_1 = q, ..., r_k = 1, r_{k+1} = 0.
    ``numerators`` and ``denominators`` are the convergents p_i/q_i for
    i = 0..k with p_0 = 1, q_0 = 0.
    """

    p: int
    q: int
    coefficients: tuple[int, ...]
    remainders: tuple[int, ...]
    numerators: tuple[int, ...]
    denominators: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.coefficients)

    def n(self, i: int) -> int:
        """1-based partial quotient n_i."""
        if not 1 <= i <= self.k:
            raise IndexError(i)
        return self.coefficients[i - 1]

    def r(self, i: int) -> int:
        return self.remainders[i]

    def conv(self, i: int) -> int:
        """Convergent numerator p_i (p_0 = 1)."""
        return self.numerators[i]

    def total(self) -> int:
        return sum(self.coefficients)


def euclid_trace(p: int, q: int) -> EuclidTrace:
    cf = continued_fraction(p, q)
    rem = [p, q]
    while rem[-1]:
        rem.append(rem[-2] % rem[-1])
    # p_{-1} = 0, q_{-1} = 1 makes the recurrence start cleanly at i = 1
    nums, dens = [1], [0]
    prev_num, prev_den = 0, 1
    for n in cf.coefficients:
        nxt_num = n * nums[-1] + prev_num
        nxt_den = n * dens[-1] + prev_den
        prev_num, prev_den = nums[-1], dens[-1]
        nums.append(nxt_num)
        dens.append(nxt_den)
    return EuclidTrace(p, q, cf.coefficients, tuple(rem), tuple(nums), tuple(dens))


def mod_inverse(q: int, p: int) -> int:
    """The r in (0, p) with r*q = 1 mod p."""
    if p < 2:
        raise ValueError(f"modulus must be >= 2, got {p}")
    if gcd(q, p) != 1:
        raise ValueError(f"{q} has no inverse modulo {p}")
    return pow(q, -1, p)


def mirror_denominator(p: int, q: int) -> int:
    """Denominator s of the reversed continued fraction of p/q (so that it equals p/s)."""
    cf = continued_fraction(p, q)
    value = continued_fraction_value(reversed(cf.coefficients))
    if value.numerator != p:
        raise ArithmeticError(f"reversed expansion of {p}/{q} gives {value}")
    return value.denominator
