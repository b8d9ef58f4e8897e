from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from smallarr import exactq
from smallarr.arrangement import Arrangement, is_small, linearly_joined_orderings
from smallarr.exactq import Matrix
from smallarr.generate import random_small_arrangement
from smallarr.ideals import (
    GeneratorSet,
    LinearForm,
    NotLinearlyJoined,
    QuadricProduct,
    degree_piece,
    equations_for_ordered_arrangement,
    monomials,
    mu_count,
    product_vector,
    vanishing_forms,
    vanishes_on,
    verify_generation,
)
from smallarr.selfcheck import fixture_arrangement


def e(n, *idx):
    v = [0] * n
    for i in idx:
        v[i] += 1
    return v


def monomial_vector(nvars, *vars_):
    """Coefficient vector of the monomial prod x_v."""
    return product_vector(*[e(nvars, v) for v in vars_])


def span_rank(vectors, ncols):
    return oracles.rank(vectors, ncols) if vectors else 0


def same_span(a, b, ncols):
    ra, rb = span_rank(a, ncols), span_rank(b, ncols)
    return ra == rb == span_rank(list(a) + list(b), ncols)


# -- building blocks -----------------------------------------------------------

def test_linear_form_nonzero():
    with pytest.raises(ValueError):
        LinearForm((0, 0))


def test_product_vector_expansion():
    # (x0 + x1)(x0 - x1) = x0^2 - x1^2 over monomials (0,0), (0,1), (1,1)
    assert product_vector([1, 1], [1, -1]) == (1, 0, -1)
    assert monomials(2, 2) == ((0, 0), (0, 1), (1, 1))


def test_vanishing_forms_examples():
    assert vanishing_forms(Matrix.identity(3)) == []
    n = 4
    hyper = Matrix([e(n, i) for i in range(n - 1)])
    assert [f.coefficients for f in vanishing_forms(hyper)] == [tuple(e(n, n - 1))]
    line = Matrix([[1, 0, 0], [1, 1, 1]])
    assert [f.coefficients for f in vanishing_forms(line)] == [(0, 1, -1)]


# -- graded pieces -------------------------------------------------------------

def test_degree_piece_hyperplane():
    n = 4
    arr = Arrangement.from_bases(n, [[e(n, i) for i in range(n - 1)]])
    r, basis = degree_piece(arr, 2)
    assert r == n
    expected = [monomial_vector(n, n - 1, k) for k in range(n)]
    assert same_span(basis.rows, expected, len(monomials(n, 2)))


def _monomial_ideal_count(nvars, gens, d):
    """Number of degree-d monomials divisible by some generator monomial."""
    count = 0
    for mono in combinations_with_replacement(range(nvars), d):
        for g in gens:
            rest = list(mono)
            try:
                for v in g:
                    rest.remove(v)
            except ValueError:
                continue
            count += 1
            break
    return count


def test_degree_piece_path3():
    arr = fixture_arrangement("path3")
    gens = [(0, 2), (0, 3), (1, 3)]
    assert _monomial_ideal_count(4, gens, 2) == 3
    assert _monomial_ideal_count(4, gens, 3) == 10
    assert degree_piece(arr, 2)[0] == 3
    assert degree_piece(arr, 3)[0] == 10
    _, basis = degree_piece(arr, 2)
    assert same_span(basis.rows, [monomial_vector(4, *g) for g in gens], 10)


def test_degree_piece_rejects_degree_zero():
    with pytest.raises(ValueError):
        degree_piece(fixture_arrangement("path3"), 0)


# -- equations -----------------------------------------------------------------

def test_two_meeting_lines():
    arr = Arrangement.from_bases(3, [[e(3, 0), e(3, 1)], [e(3, 1), e(3, 2)]])
    gens = equations_for_ordered_arrangement(arr, [0, 1])
    assert len(gens.quadrics) == 1
    assert same_span([gens.quadrics[0].vector()], [monomial_vector(3, 0, 2)], 6)
    assert mu_count(arr, [0, 1]) == 1


def test_path3_equations():
    arr = fixture_arrangement("path3")
    gens = equations_for_ordered_arrangement(arr, [0, 1, 2])
    assert len(gens.quadrics) == 3 and gens.degree2_rank == 3 and gens.mu_predicted == 3
    expected = [monomial_vector(4, 0, 2), monomial_vector(4, 0, 3), monomial_vector(4, 1, 3)]
    assert same_span([q.vector() for q in gens.quadrics], expected, 10)
    assert verify_generation(arr, gens).ok


def test_single_component_has_no_quadrics():
    gens = equations_for_ordered_arrangement(Arrangement.from_bases(2, [[e(2, 0), e(2, 1)]]), [0])
    assert gens.quadrics == () and gens.mu_predicted == 0
    # a line in P^3: the two vanishing forms times every variable
    arr = Arrangement.from_bases(4, [[e(4, 0), e(4, 1)]])
    gens = equations_for_ordered_arrangement(arr, [0])
    assert gens.core == () and gens.mu_predicted == 0
    assert gens.degree2_rank == degree_piece(arr, 2)[0] == 7
    assert verify_generation(arr, gens).ok


def test_mu_hyperplanes_through_codim2():
    # two lines of P^2 through a point: a single quadric
    arr = Arrangement.from_bases(3, [[e(3, 0), e(3, 1)], [e(3, 0), e(3, 2)]])
    assert mu_count(arr, [0, 1]) == 1
    # three concurrent lines in P^2 are not small, so no order is linearly joined
    three = Arrangement.from_bases(3, [[e(3, 0), e(3, 1)], [e(3, 0), e(3, 2)], [e(3, 0), e(3, 1, 2)]])
    assert not is_small(three).small
    with pytest.raises(NotLinearlyJoined):
        mu_count(three, [0, 1, 2])


def test_mu_path3_and_example05():
    assert mu_count(fixture_arrangement("path3"), [0, 1, 2]) == 3
    arr = fixture_arrangement("example05")
    assert mu_count(arr, [0, 1, 2, 3]) == 6 == degree_piece(arr, 2)[0]


def test_equations_reject_bad_order():
    with pytest.raises(NotLinearlyJoined):
        equations_for_ordered_arrangement(fixture_arrangement("path3"), [0, 2, 1])


def test_example05_generation():
    arr = fixture_arrangement("example05")
    gens = equations_for_ordered_arrangement(arr, [0, 1, 2, 3])
    rep = verify_generation(arr, gens)
    assert rep.ok and rep.failures == []
    assert gens.degree2_rank <= len(gens.quadrics)


def test_corrupted_generator_is_caught():
    arr = fixture_arrangement("path3")
    gens = equations_for_ordered_arrangement(arr, [0, 1, 2])
    q = gens.quadrics[0]
    left = list(q.left.coefficients)
    k = next(i for i, c in enumerate(left) if c == 0)
    left[k] = Fraction(1)
    bad = QuadricProduct(LinearForm(left), q.right, q.summand)
    tampered = GeneratorSet((bad,) + gens.quadrics[1:], gens.degree2_rank, gens.mu_predicted)
    rep = verify_generation(arr, tampered)
    assert not rep.all_vanish and not rep.ok


def test_generator_json_schema():
    doc = equations_for_ordered_arrangement(fixture_arrangement("path3"), [0, 1, 2]).to_json()
    assert set(doc) == {"quadrics", "mu", "degree2_rank"}
    assert set(doc["quadrics"][0]) == {"left", "right", "summand"}


# -- properties ----------------------------------------------------------------

def _small_instance(seed, max_ambient=5):
    rng = random.Random(seed)
    k = rng.randint(1, 4)
    return random_small_arrangement(k, rng.randint(k, max_ambient), seed)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_degree_piece_matches_grid_oracle(seed):
    arr = _small_instance(seed)
    ncols, bases = oracles.arrangement_data(arr)
    for d in (2, 3):
        assert degree_piece(arr, d)[0] == oracles.degree_piece_rank(bases, ncols, d)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_emitted_quadrics_vanish_by_grid_evaluation(seed):
    arr = _small_instance(seed)
    gens = equations_for_ordered_arrangement(arr, is_small(arr).ordering.sequence)
    for q in gens.quadrics:
        for c in arr.components:
            assert oracles.form_vanishes(q.vector(), list(c.basis.rows), 2)
            assert vanishes_on(q.vector(), c.basis, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_mu_is_order_independent_and_matches_degree2(seed):
    arr = _small_instance(seed)
    orders = linearly_joined_orderings(arr)
    mus = {mu_count(arr, o) for o in orders}
    assert len(mus) == 1
    if arr.span_rank() == arr.ambient_rank:
        ncols, bases = oracles.arrangement_data(arr)
        assert mus == {oracles.degree_piece_rank(bases, ncols, 2)}


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_core_quadrics_are_products_of_independent_forms(seed):
    arr = _small_instance(seed, max_ambient=6)
    for o in linearly_joined_orderings(arr)[:3]:
        gens = equations_for_ordered_arrangement(arr, o)
        for q in gens.core:
            assert exactq.rank(Matrix([q.left.coefficients, q.right.coefficients])) == 2
        assert verify_generation(arr, gens).ok
