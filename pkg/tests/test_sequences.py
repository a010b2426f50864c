from collections import Counter
from fractions import Fraction

import pytest

from vdcsym.dyadic import radical_inverse
from vdcsym.sequences import PointSet, prefix, reflected_prefix, sym_prefix, vdc_prefix


def values(ps):
    return [p.value for p in ps.points]


def F(*xs):
    return [Fraction(x) for x in xs]


@pytest.mark.parametrize(
    "builder, N, expected",
    [
        (vdc_prefix, 1, F(0)),
        (vdc_prefix, 2, F(0, "1/2")),
        (vdc_prefix, 4, F(0, "1/2", "1/4", "3/4")),
        (reflected_prefix, 1, F(1)),
        (reflected_prefix, 2, F(1, "1/2")),
        (reflected_prefix, 4, F(1, "1/2", "3/4", "1/4")),
        (sym_prefix, 2, F(0, 1)),
        (sym_prefix, 4, F(0, 1, "1/2", "1/2")),
        (sym_prefix, 5, F(0, 1, "1/2", "1/2", "1/4")),
    ],
)
def test_prefix_examples(builder, N, expected):
    assert values(builder(N)) == expected


def test_empty_prefixes():
    for kind in ("vdc", "reflected", "sym"):
        assert prefix(kind, 0).N == 0


def test_vdc_matches_radical_inverse():
    assert values(vdc_prefix(1000)) == [radical_inverse(n).value for n in range(1000)]


@pytest.mark.parametrize("M", [0, 1, 2, 3, 7, 64, 1000, 4096])
def test_interleaving_is_union(M):
    sym = Counter(values(sym_prefix(2 * M)))
    union = Counter(values(vdc_prefix(M))) + Counter(values(reflected_prefix(M)))
    assert sym == union


def test_prefix_consistency():
    big = values(sym_prefix(600))
    for N in range(600):
        assert values(sym_prefix(N)) == big[:N]


def test_sum_identity():
    for N in range(1, 2000):
        total = sym_prefix(N).total()
        M = N // 2
        assert total == (M if N % 2 == 0 else M + radical_inverse(M).value)


def test_sorted_view_is_stable_permutation():
    ps = sym_prefix(9)
    view = list(ps.sorted_view)
    assert sorted(view) == list(range(9))
    xs = values(ps)
    assert [xs[i] for i in view] == sorted(xs)
    # the duplicated 1/2 keeps generation order
    halves = [i for i in view if xs[i] == Fraction(1, 2)]
    assert halves == sorted(halves)


def test_point_set_from_points_and_validation():
    ps = PointSet.from_points([Fraction(1, 4), Fraction(3, 8), 1])
    assert ps.bits == 3 and ps.N == 3
    assert values(ps) == F("1/4", "3/8", 1)
    assert ps.head(2) == PointSet.from_points([Fraction(1, 4), Fraction(3, 8)])
    with pytest.raises(ValueError):
        PointSet([5], 2)
    with pytest.raises(ValueError):
        prefix("halton", 3)
    with pytest.raises(ValueError):
        vdc_prefix(-1)


def test_numerators_are_read_only():
    ps = vdc_prefix(8)
    with pytest.raises(ValueError):
        ps.numerators[0] = 3
