from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from smallarr import exactq
from smallarr.exactq import ContainmentError, DimensionError, Matrix


def e(n, *idx):
    v = [0] * n
    for i in idx:
        v[i] += 1
    return v


def M(rows, ncols=None):
    return Matrix(rows, ncols)


small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def matrices(draw, max_rows=4, ncols=None):
    n = ncols if ncols is not None else draw(st.integers(1, 5))
    r = draw(st.integers(0, max_rows))
    rows = draw(st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=r, max_size=r))
    return Matrix(rows, n)


@st.composite
def matrix_pairs(draw):
    n = draw(st.integers(1, 5))
    return draw(matrices(ncols=n)), draw(matrices(ncols=n))


# -- parsing -----------------------------------------------------------------

def test_parse_entry_forms():
    assert exactq.parse_entry(3) == 3
    assert exactq.parse_entry("-2/6") == Fraction(-1, 3)
    assert exactq.format_entry(Fraction(4, 2)) == 2
    assert exactq.format_entry(Fraction(1, 3)) == "1/3"
    with pytest.raises(TypeError):
        exactq.parse_entry(True)
    with pytest.raises(TypeError):
        exactq.parse_entry(0.5)


def test_ragged_rows_rejected():
    with pytest.raises(DimensionError):
        Matrix([[1, 2], [3]])


def test_json_round_trip():
    m = M([[1, "1/2"], [0, -3]])
    assert Matrix.from_json(m.to_json()) == m


# -- rref examples -----------------------------------------------------------

def test_rref_identity():
    red, r = exactq.rref(Matrix.identity(3))
    assert red == Matrix.identity(3) and r == 3


def test_rref_proportional_rows():
    red, r = exactq.rref(M([[2, 4], [1, 2]]))
    assert red == M([[1, 2]]) and r == 1


def test_rref_row_swap():
    red, r = exactq.rref(M([[0, 1, 0], [1, 0, 1]]))
    assert red == M([[1, 0, 1], [0, 1, 0]]) and r == 2


def test_rref_zero_rows_dropped():
    red, r = exactq.rref(M([[0, 0], [0, 0]]))
    assert r == 0 and red.nrows == 0 and red.ncols == 2


# -- sum / intersection / kernel / complement examples -----------------------

def test_row_space_sum_examples():
    assert exactq.row_space_sum(M([e(3, 0)]), M([e(3, 1)])) == M([e(3, 0), e(3, 1)])
    assert exactq.row_space_sum(M([e(3, 0), e(3, 1)]), M([e(3, 1), e(3, 2)])) == Matrix.identity(3)
    a = exactq.canonical(M([[1, 2, 3], [0, 1, 1]]))
    assert exactq.row_space_sum(a, a) == a


def test_row_space_sum_dimension_mismatch():
    with pytest.raises(DimensionError):
        exactq.row_space_sum(M([[1, 0]]), M([[1, 0, 0]]))


def test_row_space_intersect_examples():
    n = 4
    assert exactq.row_space_intersect(M([e(n, 0), e(n, 1)]), M([e(n, 1), e(n, 2)])) == M([e(n, 1)])
    assert exactq.row_space_intersect(M([e(n, 0), e(n, 1)]), M([e(n, 2), e(n, 3)])).nrows == 0
    got = exactq.row_space_intersect(M([e(n, 0), e(n, 1)]), M([e(n, 0, 1), e(n, 2)]))
    assert got == M([e(n, 0, 1)])


def test_kernel_examples():
    assert exactq.kernel(Matrix.identity(4)).nrows == 0
    assert exactq.kernel(M([[0, 0, 0]])) == Matrix.identity(3)
    k = exactq.kernel(M([[1, 1, 0]]))
    assert k == M([[1, -1, 0], [0, 0, 1]])


def test_complement_examples():
    l = M([e(3, 0), e(3, 1)])
    assert exactq.complement_within(l, M([e(3, 0)])) == M([e(3, 1)])
    assert exactq.complement_within(l, Matrix.zero_space(3)) == l
    assert exactq.complement_within(l, M([e(3, 0, 1)])) == M([e(3, 0)])


def test_complement_requires_containment():
    with pytest.raises(ContainmentError):
        exactq.complement_within(M([e(3, 0)]), M([e(3, 1)]))


def test_random_point_examples():
    line = M([e(3, 0)])
    p = exactq.random_point(line, 5)
    assert p[0] != 0 and p[1] == p[2] == 0
    plane = M([e(3, 0), e(3, 1)])
    assert exactq.random_point(plane, 42) == exactq.random_point(plane, 42)
    q = exactq.random_point(plane, 42)
    assert any(q) and exactq.contains(plane, M([q]))
    with pytest.raises(ValueError):
        exactq.random_point(Matrix.zero_space(3), 1)


def test_random_point_respects_bound():
    rng = random.Random(3)
    for _ in range(50):
        c = exactq.random_coefficient(rng, 7)
        assert abs(c.numerator) <= 7 and c.denominator <= 7


def test_random_subspace_rank():
    rng = random.Random(0)
    host = Matrix.identity(5)
    for d in range(6):
        assert exactq.rank(exactq.random_subspace(host, d, rng)) == d


# -- oracle comparisons --------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_minor_oracle(m):
    assert exactq.rank(m) == oracles.minor_rank(m.rows, m.ncols)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_matches_gauss_jordan(m):
    red, r = exactq.rref(m)
    assert red.rows == oracles.canon(m.rows, m.ncols)
    assert r == len(red.rows)


@settings(max_examples=100, deadline=None)
@given(matrix_pairs())
def test_intersection_matches_oracle(pair):
    a, b = pair
    got = exactq.row_space_intersect(a, b)
    assert got.rows == oracles.intersection(a.rows, b.rows, a.ncols)
    assert exactq.intersection_rank(a, b) == got.nrows


# -- properties ----------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(matrix_pairs())
def test_modular_law(pair):
    a, b = pair
    s = exactq.row_space_sum(a, b)
    i = exactq.row_space_intersect(a, b)
    assert exactq.rank(s) + exactq.rank(i) == exactq.rank(a) + exactq.rank(b)


@settings(max_examples=100, deadline=None)
@given(matrices(), st.randoms(use_true_random=False))
def test_rref_invariant_under_row_mixing(m, rng):
    rows = [list(r) for r in m.rows]
    for _ in range(6):
        if len(rows) < 2:
            break
        i, j = rng.sample(range(len(rows)), 2)
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
        k = rng.randrange(len(rows))
        s = rng.choice([1, -1, 2, Fraction(1, 3)])
        rows[k] = [s * x for x in rows[k]]
        rng.shuffle(rows)
    assert exactq.rref(Matrix(rows, m.ncols))[0] == exactq.rref(m)[0]
    red = exactq.rref(m)[0]
    assert exactq.rref(red)[0] == red


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernel_rank_and_annihilation(m):
    k = exactq.kernel(m)
    assert exactq.rank(m) + exactq.rank(k) == m.ncols
    for row in m.rows:
        for v in k.rows:
            assert sum(a * b for a, b in zip(row, v)) == 0


@settings(max_examples=100, deadline=None)
@given(matrices(), st.randoms(use_true_random=False))
def test_complement_within_properties(l, rng):
    r = exactq.rank(l)
    m = exactq.random_subspace(l, rng.randint(0, r), rng, bound=5) if r else Matrix.zero_space(l.ncols)
    c = exactq.complement_within(l, m)
    assert exactq.rank(c) + exactq.rank(m) == r
    assert exactq.intersection_rank(c, m) == 0
    assert exactq.contains(l, c)
    assert exactq.row_space_sum(c, m) == exactq.canonical(l)


@settings(max_examples=60, deadline=None)
@given(matrix_pairs())
def test_contains_matches_oracle(pair):
    a, b = pair
    assert exactq.contains(a, b) == oracles.contains(a.rows, b.rows, a.ncols)
