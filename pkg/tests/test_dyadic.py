from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from vdcsym.dyadic import (
    Dyadic,
    abs_reflect_sum,
    ceil_log2,
    nearest_int_distance,
    points_in_dyadic_interval,
    radical_inverse,
    radical_inverse_array,
)


def reverse_bits_oracle(n):
    """phi(n) by string reversal of the binary expansion."""
    digits = format(n, "b")[::-1]
    return sum(Fraction(int(d), 2 ** (i + 1)) for i, d in enumerate(digits)) if n else Fraction(0)


@pytest.mark.parametrize(
    "n, expected",
    [(0, Fraction(0)), (1, Fraction(1, 2)), (6, Fraction(3, 8)), (5, Fraction(5, 8))],
)
def test_radical_inverse_examples(n, expected):
    assert radical_inverse(n).value == expected


@given(st.integers(0, 2**40))
def test_radical_inverse_matches_string_oracle(n):
    phi = radical_inverse(n)
    assert phi.value == reverse_bits_oracle(n)
    assert 0 <= phi.value < 1
    assert phi.exponent <= n.bit_length()


def test_array_version_agrees():
    n = np.arange(5000)
    arr = radical_inverse_array(n, 13)
    assert [Fraction(int(a), 2**13) for a in arr] == [radical_inverse(int(k)).value for k in n]


def test_dyadic_canonical_form():
    assert Dyadic(4, 3) == Dyadic(1, 1)
    assert Dyadic(0, 7) == Dyadic(0, 0)
    assert Dyadic(6, 3).numerator == 3 and Dyadic(6, 3).exponent == 2
    assert Dyadic.from_fraction(Fraction(3, 8)) == Dyadic(3, 3)
    with pytest.raises(ValueError):
        Dyadic.from_fraction(Fraction(1, 3))
    with pytest.raises(ValueError):
        Dyadic(-1, 2)


@given(st.integers(0, 2**20), st.integers(0, 20), st.integers(0, 2**20), st.integers(0, 20))
def test_dyadic_ordering_matches_fraction(a, k, b, l):
    x, y = Dyadic(a, k), Dyadic(b, l)
    assert (x < y) == (x.value < y.value)
    assert (x <= y) == (x.value <= y.value)
    assert (x == y) == (x.value == y.value)
    if x.value <= 1:
        assert x.reflect().value == 1 - x.value


@pytest.mark.parametrize(
    "x, expected",
    [(Fraction(1, 2), Fraction(1, 2)), (Fraction(3, 4), Fraction(1, 4)), (Fraction(2), Fraction(0)),
     (Fraction(-1, 3), Fraction(1, 3)), (Fraction(7, 3), Fraction(1, 3))],
)
def test_nearest_int_distance(x, expected):
    assert nearest_int_distance(x) == expected


@pytest.mark.parametrize("A, expected", [(0, Fraction(1)), (1, Fraction(1)), (4, Fraction(11, 4))])
def test_abs_reflect_sum_examples(A, expected):
    assert abs_reflect_sum(A) == expected


@given(st.integers(0, 2**14))
def test_abs_reflect_sum_bounds_and_closed_forms(A):
    direct = sum(abs(1 - 2 * radical_inverse(s).value) for s in range(A + 1))
    got = abs_reflect_sum(A)
    assert got == direct
    assert Fraction(A, 2) <= got <= Fraction(A, 2) + 1
    if A % 2:
        assert got == Fraction(A + 1, 2)
    else:
        assert got == Fraction(A, 2) + abs(1 - 2 * radical_inverse(A).value)


@given(st.integers(0, 10), st.integers(0, 4096))
def test_scaling(j, s):
    assert radical_inverse(2**j * s).value == radical_inverse(s).value / 2**j


def test_inversion_exhaustive():
    for j in range(13):
        for m in range(2**j):
            inner = radical_inverse(m).value * 2**j
            assert inner.denominator == 1
            assert radical_inverse(int(inner)).value == Fraction(m, 2**j)


def test_pairing_identity():
    for n in range(2**13 + 1):
        a = abs(1 - 2 * radical_inverse(2 * n).value)
        b = abs(1 - 2 * radical_inverse(2 * n + 1).value)
        assert a + b == 1


@pytest.mark.parametrize("k", range(0, 12))
def test_bijection_onto_grid(k):
    vals = {radical_inverse(n).value for n in range(2**k)}
    assert vals == {Fraction(m, 2**k) for m in range(2**k)}


@pytest.mark.parametrize(
    "j, m, N, expected",
    [(0, 0, 4, [0, 1, 2, 3]), (1, 1, 8, [1, 3, 5, 7]), (2, 3, 8, [3, 7])],
)
def test_points_in_dyadic_interval_examples(j, m, N, expected):
    assert points_in_dyadic_interval(j, m, N) == expected


@pytest.mark.parametrize("j", range(0, 9))
def test_points_in_dyadic_interval_matches_scan(j):
    N = 4096
    phis = [radical_inverse(n).value for n in range(N)]
    for m in range(2**j):
        lo, hi = Fraction(m, 2**j), Fraction(m + 1, 2**j)
        assert points_in_dyadic_interval(j, m, N) == [n for n, x in enumerate(phis) if lo <= x < hi]


def test_points_in_dyadic_interval_rejects_bad_index():
    with pytest.raises(ValueError):
        points_in_dyadic_interval(2, 4, 10)
    with pytest.raises(ValueError):
        points_in_dyadic_interval(-1, 0, 10)


def test_ceil_log2_is_exact_at_powers_of_two():
    for k in range(60):
        assert ceil_log2(2**k) == k
        assert ceil_log2(2**k + 1) == k + 1
    with pytest.raises(ValueError):
        ceil_log2(0)
