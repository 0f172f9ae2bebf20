"""Unit tests for the exact integer matrix and polynomial helpers."""

import math
import random
from fractions import Fraction

import pytest

from polylab import exactmath as xm


def random_matrix(rng, rows, cols, lo=-5, hi=5):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def naive_det(a):
    n = len(a)
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in a[1:]]
        total += (-1) ** j * a[0][j] * naive_det(minor)
    return total


# ---------------------------------------------------------------------------
# determinants and rank


def test_det_known_values():
    assert xm.det([[2]]) == 2
    assert xm.det([[1, 2], [3, 4]]) == -2
    assert xm.det([[0, 0, 1], [3, 0, 1], [0, 1, 1]]) == 3
    assert xm.det(xm.IntMatrix.identity(6)) == 1


def test_det_matches_cofactor_expansion():
    rng = random.Random(101)
    for n in (1, 2, 3, 4, 5):
        for _ in range(30):
            a = random_matrix(rng, n, n)
            assert xm.det(a) == naive_det(a)


def test_det_multiplicative():
    rng = random.Random(102)
    for _ in range(25):
        a = xm.IntMatrix.from_rows(random_matrix(rng, 4, 4))
        b = xm.IntMatrix.from_rows(random_matrix(rng, 4, 4))
        assert xm.det(a.mul(b)) == xm.det(a) * xm.det(b)


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        xm.det([[1, 2, 3], [4, 5, 6]])


def test_rank_known():
    assert xm.rank([[1, 2], [2, 4]]) == 1
    assert xm.rank([[1, 0], [0, 1]]) == 2
    assert xm.rank([[0, 0], [0, 0]]) == 0
    assert xm.rank([[1, 2, 3]]) == 1


def test_rank_bounded_by_det():
    rng = random.Random(103)
    for _ in range(40):
        a = random_matrix(rng, 4, 4)
        if xm.det(a) != 0:
            assert xm.rank(a) == 4


# ---------------------------------------------------------------------------
# rational solving


def test_solve_rational_unique():
    x = xm.solve_rational([[2, 0], [0, 4]], [1, 1])
    assert x == [Fraction(1, 2), Fraction(1, 4)]


def test_solve_rational_inconsistent():
    assert xm.solve_rational([[1, 1], [1, 1]], [0, 1]) is None


def test_solve_rational_underdetermined_consistent():
    x = xm.solve_rational([[1, 1]], [3])
    assert x is not None
    assert x[0] + x[1] == 3


def test_solve_rational_random_roundtrip():
    rng = random.Random(104)
    for _ in range(30):
        n = rng.randint(1, 5)
        a = random_matrix(rng, n, n)
        if xm.det(a) == 0:
            continue
        target = [rng.randint(-9, 9) for _ in range(n)]
        x = xm.solve_rational(a, target)
        assert x is not None
        for row, t in zip(a, target):
            assert sum(Fraction(c) * xi for c, xi in zip(row, x)) == t


# ---------------------------------------------------------------------------
# Smith normal form


def assert_snf_contract(a):
    m = xm.IntMatrix.from_rows(a)
    u, d, v = xm.snf(m)
    assert abs(xm.det(u)) == 1
    assert abs(xm.det(v)) == 1
    assert u.mul(m).mul(v).entries == d.entries
    diag = [d.entries[i][i] for i in range(min(d.rows, d.cols))]
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j:
                assert d.entries[i][j] == 0
    assert all(x >= 0 for x in diag)
    for a_, b_ in zip(diag, diag[1:]):
        if b_ != 0:
            assert a_ != 0 and b_ % a_ == 0
        # zeros only at the tail
        if a_ == 0:
            assert b_ == 0


def test_snf_known():
    _, d, _ = xm.snf([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    assert [d.entries[i][i] for i in range(3)] == [2, 2, 156]


def test_snf_random_contract():
    rng = random.Random(105)
    for _ in range(40):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        assert_snf_contract(random_matrix(rng, rows, cols))


def test_invert_unimodular():
    m = xm.IntMatrix.from_rows([[1, 2], [1, 3]])
    inv = xm.invert_unimodular(m)
    assert m.mul(inv).entries == xm.IntMatrix.identity(2).entries
    with pytest.raises(ValueError):
        xm.invert_unimodular(xm.IntMatrix.from_rows([[2, 0], [0, 1]]))


def test_kernel_basis():
    ker = xm.kernel_basis([[1, 1, 1]])
    assert len(ker) == 2
    for vec in ker:
        assert sum(vec) == 0
    assert xm.kernel_basis([[1, 0], [0, 1]]) == []


def test_kernel_is_saturated():
    # kernel of [2, -2] is spanned by (1, 1), not (2, 2)
    ker = xm.kernel_basis([[2, -2]])
    assert len(ker) == 1
    assert math.gcd(*ker[0]) == 1


def test_sublattice_index():
    assert xm.sublattice_index([[1, 0], [0, 1]]) == 1
    assert xm.sublattice_index([[2, 0], [0, 3]]) == 6
    assert xm.sublattice_index([[1, 1], [2, 2]]) == 0
    # index ignores the ambient embedding
    assert xm.sublattice_index([[2, 0, 0]]) == 2
    assert xm.sublattice_index([]) == 1


def test_sublattice_index_is_gcd_of_maximal_minors():
    rng = random.Random(106)
    for _ in range(40):
        k = rng.randint(1, 3)
        m = k + rng.randint(0, 2)
        vecs = random_matrix(rng, k, m)
        minors = []
        import itertools

        for cols in itertools.combinations(range(m), k):
            minors.append(abs(xm.det([[row[c] for c in cols] for row in vecs])))
        assert xm.sublattice_index(vecs) == math.gcd(*minors)


# ---------------------------------------------------------------------------
# polynomials


def test_poly_canonical_form():
    assert xm.poly_trim((1, 2, 0, 0)) == (1, 2)
    assert xm.poly_trim((0, 0)) == ()
    assert xm.poly_add((1, 2), (0, -2, 3)) == (1, 0, 3)
    assert xm.poly_add((1,), (-1,)) == ()
    assert xm.poly_scale((1, 2), 0) == ()
    assert xm.poly_mul((1, 1), (1, 1)) == (1, 2, 1)
    assert xm.poly_mul((), (1, 2)) == ()


def test_poly_mirror():
    assert xm.poly_mirror((1, 8, 9), 3) == (0, 9, 8, 1)
    assert xm.poly_mirror((1,), 0) == (1,)
    with pytest.raises(ValueError):
        xm.poly_mirror((1, 2, 3), 1)


def test_poly_eval():
    assert xm.poly_eval((1, 2, 3), 2) == 17
    assert xm.poly_eval((), 5) == 0
    assert xm.poly_eval((1, 1), Fraction(1, 2)) == Fraction(3, 2)


def test_poly_one_minus_t_power():
    assert xm.poly_one_minus_t_power(0) == (1,)
    assert xm.poly_one_minus_t_power(2) == (1, -2, 1)
    assert xm.poly_one_minus_t_power(3) == (1, -3, 3, -1)
    with pytest.raises(ValueError):
        xm.poly_one_minus_t_power(-1)


def test_poly_ring_laws():
    rng = random.Random(107)
    for _ in range(30):
        p = tuple(rng.randint(-4, 4) for _ in range(rng.randint(0, 5)))
        q = tuple(rng.randint(-4, 4) for _ in range(rng.randint(0, 5)))
        r = tuple(rng.randint(-4, 4) for _ in range(rng.randint(0, 5)))
        assert xm.poly_mul(p, q) == xm.poly_mul(q, p)
        assert xm.poly_mul(p, xm.poly_add(q, r)) == xm.poly_add(
            xm.poly_mul(p, q), xm.poly_mul(p, r)
        )
        x = rng.randint(-3, 3)
        assert xm.poly_eval(xm.poly_mul(p, q), x) == xm.poly_eval(p, x) * xm.poly_eval(q, x)
